#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cachemodel/coherence.hpp"
#include "cachemodel/missrate.hpp"
#include "cachemodel/profiler.hpp"
#include "cachemodel/shared.hpp"

namespace cachemodel {

struct ModelOptions {
    CacheGeometry l2;
    std::size_t merged_cap = 0;  // 0 = 8x the profile cap
};

/// End-to-end model outcome for one cache configuration: per-core refined L1
/// misses, the merged shared-cache histogram with its diagnostics, and both
/// the full and the insertion-only (sharing-blind) L2 miss rates.
struct ModelReport {
    std::string label;
    CacheGeometry l1;
    CacheGeometry l2;
    std::size_t cap = 0;
    std::size_t merged_cap = 0;
    std::size_t core_count = 0;

    std::vector<CoherenceCoreResult> coherence;  // empty for a single core
    std::vector<double> stretch;
    std::vector<double> p_same;
    Histogram1D mrdh;
    Histogram1D rdh_prime;
    MissRateReport full;
    MissRateReport insertion_only;

    ModelReport() : mrdh(0), rdh_prime(0) {}
};

/// Runs upstream -> coherence -> shared -> miss-rate over per-core profiles.
/// All profiles must share one L1 geometry and cap.
ModelReport run_model(const std::vector<CoreProfile>& profiles, const ModelOptions& opt);

/// Human-readable report with the merged histogram inlined; all numbers in
/// fixed 6-decimal form.
void write_model_report(const ModelReport& rep, std::ostream& out);

}  // namespace cachemodel
