#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "cachemodel/geometry.hpp"
#include "cachemodel/histogram.hpp"
#include "cachemodel/trace.hpp"

namespace cachemodel {

/// Exact-simulation configuration: per-core private L1s over a shared L2,
/// both LRU, write-allocate write-back, with a write-invalidate (MESI-style)
/// protocol at L1. When `coherence_fetch_bypasses_l2` is set, a
/// resident-but-invalid access is serviced core-to-core and neither touches
/// L2 contents nor counts as an L2 access.
struct SimConfig {
    CacheGeometry l1;
    CacheGeometry l2;
    bool coherence_fetch_bypasses_l2 = true;
    bool capture_l2 = false;

    void validate() const {
        l1.validate();
        l2.validate();
        if (l1.line_size != l2.line_size)
            throw GeometryError("L1 and L2 line sizes differ");
    }
};

struct CapturedRef {
    std::uint32_t core;
    Op op;
    std::uint64_t line_addr;
};

struct CoreStats {
    std::uint64_t l1_accesses = 0;
    std::uint64_t l1_hits = 0;
    std::uint64_t l1_misses = 0;         // includes coherence and cold misses
    std::uint64_t coherence_misses = 0;  // line resident but invalid at access
    std::uint64_t cold_misses = 0;       // first access by this core to the line
};

struct L2Stats {
    std::uint64_t accesses = 0;
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    double miss_rate() const {
        return accesses ? static_cast<double>(misses) / static_cast<double>(accesses) : 0.0;
    }
};

struct SimStats {
    std::vector<CoreStats> cores;
    L2Stats l2;
    bool captured = false;
    std::vector<CapturedRef> l2_stream;  // merged demand stream, trace order
};

enum class MesiState : std::uint8_t { Invalid, Shared, Exclusive, Modified };

/// Step-wise simulator; `simulate` below is the one-shot driver. Exposed so
/// tests can interleave accesses with invariant checks.
class Simulator {
public:
    Simulator(const SimConfig& cfg, std::uint32_t core_count);

    void step(const ReferenceRecord& rec);
    const SimStats& stats() const { return stats_; }
    SimStats take_stats() { return std::move(stats_); }

    /// MESI safety: per line, at most one Modified/Exclusive copy, and such a
    /// copy excludes any other non-Invalid copy.
    bool mesi_safe() const;

private:
    struct L1Way {
        std::uint64_t line;
        MesiState state;
        std::uint64_t stamp;
    };
    struct L2Way {
        std::uint64_t line;
        bool dirty;
        std::uint64_t stamp;
    };

    L1Way* find_l1(std::uint32_t core, std::uint64_t line);
    void invalidate_others(std::uint32_t core, std::uint64_t line);
    MesiState read_acquire_state(std::uint32_t core, std::uint64_t line);
    void fill_l1(std::uint32_t core, std::uint64_t line, MesiState state);
    void access_l2(const ReferenceRecord& rec, std::uint64_t line);
    void writeback_to_l2(std::uint64_t line);

    SimConfig cfg_;
    std::vector<std::vector<std::vector<L1Way>>> l1_;  // [core][set][ways]
    std::vector<std::vector<L2Way>> l2_;               // [set][ways]
    std::vector<std::unordered_set<std::uint64_t>> seen_;  // per-core touched lines
    std::uint64_t clock_ = 0;
    SimStats stats_;
};

SimStats simulate(const Trace& trace, const SimConfig& cfg);

/// Reuse distance histogram of the captured merged L2 stream: the ground
/// truth the modeled merged histogram is judged against.
Histogram1D profile_merged_l2(const SimStats& stats, std::size_t cap);

}  // namespace cachemodel
