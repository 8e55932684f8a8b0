#pragma once

#include <cstdint>
#include <vector>

#include "cachemodel/geometry.hpp"
#include "cachemodel/histogram.hpp"
#include "cachemodel/trace.hpp"

namespace cachemodel {

/// Everything the downstream models need from one core's reference stream,
/// collected in a single pass.
struct CoreProfile {
    std::uint32_t core = 0;
    CacheGeometry l1;
    std::size_t cap = Histogram1D::kDefaultCap;

    Histogram1D l1_rdh;   // reuse distance histogram, cold bucket for first touches
    Table2D rst;          // [reuse distance][stack distance] counts
    Table2D hit_rdh;      // [reuse distance][intervening L1 hits] counts
    AddressHistogram l2_aad;   // accesses leaked past L1 (misses + first touches)
    AddressHistogram l1_aad;   // every access
    AddressHistogram l1_waad;  // write accesses
    double l1_access_total = 0.0;
    double l2_access_total = 0.0;

    CoreProfile() : l1_rdh(cap), rst(cap), hit_rdh(cap) {}
    explicit CoreProfile(std::size_t c) : cap(c), l1_rdh(c), rst(c), hit_rdh(c) {}
};

/// Profiles a single core's stream against an L1 geometry.
///
/// Per reference: the reuse distance is the number of the core's own
/// references since the previous access to the same line (any set); the stack
/// distance is the number of distinct lines touched since then within the
/// reference's L1 set. A reference hits iff its stack distance is below the
/// associativity; misses and first touches are charged to the L2-bound
/// address distribution. Distances clamp at `cap`; the intervening-hit count
/// is taken over a window of the most recent `cap` references and clamps with
/// the reuse distance.
CoreProfile profile_core(const Trace& stream, const CacheGeometry& l1,
                         std::size_t cap = Histogram1D::kDefaultCap);

/// Splits the merged trace and profiles every core. The OpenMP variant runs
/// cores in parallel (threads <= 0 picks the runtime default); the serial
/// variant is the reference the parallel path is tested against.
std::vector<CoreProfile> profile_trace(const Trace& t, const CacheGeometry& l1,
                                       std::size_t cap = Histogram1D::kDefaultCap,
                                       int threads = 0);
std::vector<CoreProfile> profile_trace_serial(const Trace& t, const CacheGeometry& l1,
                                              std::size_t cap = Histogram1D::kDefaultCap);

enum class Level : std::uint8_t { L1, L2 };

double total_accesses(const CoreProfile& p, Level level);

}  // namespace cachemodel
