#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cachemodel/geometry.hpp"
#include "cachemodel/trace.hpp"

namespace cachemodel {

struct SweepPoint {
    CacheGeometry l1;
    CacheGeometry l2;
};

struct SweepSpec {
    std::vector<SweepPoint> grid;
    std::size_t cap = 1024;
    std::size_t merged_cap = 0;  // 0 = 8x cap
};

struct SweepRow {
    std::string label;
    double l2_misses = 0.0;
    double l2_miss_rate = 0.0;
    std::uint64_t total_capacity = 0;  // l1 + l2 bytes, the row ordering key
};

/// Builds the cross product of the given size/associativity lists.
std::vector<SweepPoint> cross_grid(const std::vector<std::uint64_t>& l1_sizes,
                                   const std::vector<std::uint32_t>& l1_assocs,
                                   const std::vector<std::uint64_t>& l2_sizes,
                                   const std::vector<std::uint32_t>& l2_assocs,
                                   std::uint32_t line_size);

/// Evaluates the model at every grid point. The trace is profiled once per
/// distinct L1 geometry and reused across L2 points; points run in parallel.
/// Rows come back ordered by total capacity, then label. Throws InvalidGrid
/// on an empty grid or an invalid geometry pair.
std::vector<SweepRow> run_sweep(const Trace& trace, const SweepSpec& spec, int threads = 0);

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace cachemodel
