#pragma once

#include <cstdint>
#include <vector>

#include "cachemodel/geometry.hpp"
#include "cachemodel/histogram.hpp"

namespace cachemodel {

struct MissRateReport {
    double miss_rate = 0.0;
    double misses = 0.0;
    double accesses = 0.0;
    double cold_misses = 0.0;
    std::uint64_t capacity_lines = 0;
};

/// Expected LRU stack distance for a reuse distance d: the expected number of
/// distinct lines in a window of d references, computed as the sum over
/// window slots of the probability that a reference's own reuse carries it
/// past the window end.
double expected_stack_distance(std::size_t d, const Histogram1D& rdh);

/// expected_stack_distance for every d in 0..cap, in one suffix-sum pass.
std::vector<double> expected_stack_distances(const Histogram1D& rdh);

/// Converts a reuse distance histogram into an LRU miss rate for the cache,
/// approximated as fully associative with the same line capacity: a distance
/// misses iff its expected stack distance reaches the capacity. First touches
/// always miss. Throws EmptyHistogram when the histogram has no mass.
MissRateReport miss_rate(const Histogram1D& rdh, const CacheGeometry& cache);

}  // namespace cachemodel
