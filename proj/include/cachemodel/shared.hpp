#pragma once

#include <cstdint>
#include <vector>

#include "cachemodel/geometry.hpp"
#include "cachemodel/histogram.hpp"

namespace cachemodel {

struct SharedCoreInputs {
    Histogram1D l2_rdh;
    AddressHistogram l2_aad;

    SharedCoreInputs() : l2_rdh(Histogram1D::kDefaultCap) {}
    SharedCoreInputs(Histogram1D rdh, AddressHistogram aad)
        : l2_rdh(std::move(rdh)), l2_aad(std::move(aad)) {}
};

/// Per-core shared-cache inputs plus the merged-histogram cap. Merged
/// distances are stretched by up to the core count, so the merged cap
/// defaults to 8x the input cap; anything beyond clamps into the top bin.
struct SharedModelInputs {
    std::vector<SharedCoreInputs> cores;
    CacheGeometry l2;
    std::size_t merged_cap = 8 * Histogram1D::kDefaultCap;
};

/// Distance stretch for one core's epochs once the streams interleave:
/// 1 + access_other / access_target, with all non-target cores aggregated
/// into one virtual core. Throws ZeroAccess for a silent target.
double stretch_factor(std::size_t target, const SharedModelInputs& inputs);
double stretch_factor(std::size_t target, const std::vector<SharedCoreInputs>& cores);

struct InsertionResult {
    Histogram1D rdh_prime;                  // merged histogram before the split effect
    std::vector<Histogram1D> contributions; // per-core share of each merged bin
    std::vector<double> stretch;            // per-core factor; 0 marks a silent core
};

/// Forward-maps every core's histogram onto the merged distance axis: each
/// bin r moves to r * stretch, deposited across the two neighbouring integer
/// bins by linear interpolation so mass is conserved exactly. Cold buckets
/// sum. Silent cores contribute nothing.
InsertionResult insertion_effect(const SharedModelInputs& inputs);

/// Probability that one reference from the other cores touches the target
/// epoch's endpoint address: summed over the shared address set, endpoint
/// share times the other cores' same-address share within the address's L2
/// set. Other cores aggregate into one virtual core.
double p_same(std::size_t target, const SharedModelInputs& inputs);
double p_same(std::size_t target, const std::vector<SharedCoreInputs>& cores,
              const CacheGeometry& l2);

/// Applies the epoch-split correction to the merged histogram. For each
/// merged bin, each core's contribution is split with probability
/// 1 - (1 - p_same)^(inserted references), and split mass redistributes
/// uniformly over all lower bins.
Histogram1D split_effect(const InsertionResult& insertion,
                         const std::vector<double>& p_same_per_core,
                         const SharedModelInputs& inputs);

struct SharedDiagnostics {
    std::vector<double> stretch;  // 0 for silent cores
    std::vector<double> p_same;   // 0 for silent cores
    Histogram1D rdh_prime;        // insertion-only merged histogram

    SharedDiagnostics() : rdh_prime(0) {}
};

struct MrdhResult {
    Histogram1D mrdh;
    SharedDiagnostics diagnostics;

    MrdhResult() : mrdh(0) {}
};

/// Full merged-histogram construction: insertion effect, per-core endpoint
/// sharing probabilities, split effect. Throws AllCoresSilent when no core
/// has any shared-cache access.
MrdhResult build_mrdh(const SharedModelInputs& inputs);
MrdhResult build_mrdh(const std::vector<SharedCoreInputs>& cores, const CacheGeometry& l2,
                      std::size_t merged_cap);

}  // namespace cachemodel
