#pragma once

#include <cstdint>
#include <vector>

#include "cachemodel/geometry.hpp"
#include "cachemodel/histogram.hpp"
#include "cachemodel/profiler.hpp"

namespace cachemodel {

struct CoherenceCoreInputs {
    AddressHistogram l1_aad;
    AddressHistogram l1_waad;
    Table2D rst;
    double l1_access_total = 0.0;
};

/// Per-core private-cache inputs for the coherence-miss model. All cores
/// share one L1 geometry.
struct CoherenceInputs {
    std::vector<CoherenceCoreInputs> cores;
    CacheGeometry l1;

    static CoherenceInputs from_profiles(const std::vector<CoreProfile>& profiles,
                                         const CacheGeometry& l1);
};

struct CoherenceCoreResult {
    double p_same_write = 0.0;
    double miss_coherence = 0.0;     // expected coherence misses (real-valued)
    double baseline_misses = 0.0;    // capacity/conflict + cold, before refinement
    double refined_l1_misses = 0.0;  // baseline + coherence
};

/// Probability that one reference from the aggregated other cores writes the
/// target core's epoch-endpoint address: summed over the shared address set,
/// endpoint share times other-core write share within the address's L1 set.
/// With more than two cores the other cores are collapsed into one virtual
/// core by summing their address distributions.
double p_same_write(std::size_t target, const CoherenceInputs& inputs);

/// Probability that an epoch of reuse distance r is split by a shared write,
/// with the insertion count estimated as r times the other/target access
/// ratio: 1 - (1 - p_same)^(r * access_ratio).
double p_split_write(double r, double p_same, double access_ratio);

/// Expected coherence misses for one core: split probability times predicted
/// hits, summed over reuse distances. Would-be hits are the RST cells with
/// stack distance below the associativity.
CoherenceCoreResult miss_coherence(std::size_t target, const CoherenceInputs& inputs);

/// miss_coherence for every core; the same code path serves each role, so the
/// model stays role-symmetric.
std::vector<CoherenceCoreResult> analyze_coherence(const CoherenceInputs& inputs);

}  // namespace cachemodel
