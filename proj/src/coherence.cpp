#include "cachemodel/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace cachemodel {

CoherenceInputs CoherenceInputs::from_profiles(const std::vector<CoreProfile>& profiles,
                                               const CacheGeometry& l1) {
    CoherenceInputs in;
    in.l1 = l1;
    in.cores.reserve(profiles.size());
    for (const auto& p : profiles)
        in.cores.push_back({p.l1_aad, p.l1_waad, p.rst, p.l1_access_total});
    return in;
}

namespace {

struct VirtualCore {
    AddressHistogram aad;
    AddressHistogram waad;
    double access_total = 0.0;
};

// Element-wise sums over all non-target cores. Built directly (not as
// global-minus-target) so a two-core run reproduces the dual-core formulas
// bit for bit.
VirtualCore aggregate_others(std::size_t target, const CoherenceInputs& in) {
    VirtualCore v;
    for (std::size_t c = 0; c < in.cores.size(); ++c) {
        if (c == target) continue;
        for (const auto& [addr, cnt] : in.cores[c].l1_aad.entries()) v.aad.add(addr, cnt);
        for (const auto& [addr, cnt] : in.cores[c].l1_waad.entries()) v.waad.add(addr, cnt);
        v.access_total += in.cores[c].l1_access_total;
    }
    return v;
}

std::unordered_map<std::uint64_t, double> set_sums(const AddressHistogram& aad,
                                                   const CacheGeometry& geom) {
    std::unordered_map<std::uint64_t, double> sums;
    for (const auto& [addr, cnt] : aad.entries()) sums[geom.set_index(addr)] += cnt;
    return sums;
}

double p_same_write_against(const CoherenceCoreInputs& target, const VirtualCore& other,
                            const CacheGeometry& l1) {
    if (target.l1_access_total <= 0.0) return 0.0;
    const auto other_set_aad = set_sums(other.aad, l1);
    double p = 0.0;
    for (const auto& [addr, cnt] : target.l1_aad.entries()) {
        const double w = other.waad.at(addr);
        if (w <= 0.0) continue;  // address is not write-shared
        const auto it = other_set_aad.find(l1.set_index(addr));
        if (it == other_set_aad.end() || it->second <= 0.0) continue;
        p += (cnt / target.l1_access_total) * (w / it->second);
    }
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace

double p_same_write(std::size_t target, const CoherenceInputs& inputs) {
    return p_same_write_against(inputs.cores[target], aggregate_others(target, inputs),
                                inputs.l1);
}

double p_split_write(double r, double p_same, double access_ratio) {
    if (p_same <= 0.0 || r <= 0.0 || access_ratio <= 0.0) return 0.0;
    return 1.0 - std::pow(1.0 - p_same, r * access_ratio);
}

CoherenceCoreResult miss_coherence(std::size_t target, const CoherenceInputs& inputs) {
    const auto& core = inputs.cores[target];
    const VirtualCore other = aggregate_others(target, inputs);

    CoherenceCoreResult res;
    res.p_same_write = p_same_write_against(core, other, inputs.l1);
    const double ratio =
        core.l1_access_total > 0.0 ? other.access_total / core.l1_access_total : 0.0;

    const std::uint32_t assoc = inputs.l1.associativity;
    double rst_total = 0.0;
    for (std::size_t r = 0; r <= core.rst.cap(); ++r) {
        const double row_total = core.rst.row_total(r);
        if (row_total == 0.0) continue;
        rst_total += row_total;
        const double hit_mass = core.rst.row_total_below(r, assoc);
        res.baseline_misses += row_total - hit_mass;
        if (hit_mass > 0.0)
            res.miss_coherence +=
                p_split_write(static_cast<double>(r), res.p_same_write, ratio) * hit_mass;
    }
    // First touches are not RST epochs but are still L1 misses.
    res.baseline_misses += core.l1_access_total - rst_total;
    res.refined_l1_misses = res.baseline_misses + res.miss_coherence;
    return res;
}

std::vector<CoherenceCoreResult> analyze_coherence(const CoherenceInputs& inputs) {
    std::vector<CoherenceCoreResult> out(inputs.cores.size());
    for (std::size_t c = 0; c < inputs.cores.size(); ++c) out[c] = miss_coherence(c, inputs);
    return out;
}

}  // namespace cachemodel
