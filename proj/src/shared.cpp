#include "cachemodel/shared.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace cachemodel {

namespace {

double others_access_total(std::size_t target, const std::vector<SharedCoreInputs>& cores) {
    double t = 0.0;
    for (std::size_t c = 0; c < cores.size(); ++c)
        if (c != target) t += cores[c].l2_aad.total();
    return t;
}

AddressHistogram aggregate_other_aads(std::size_t target,
                                      const std::vector<SharedCoreInputs>& cores) {
    AddressHistogram v;
    for (std::size_t c = 0; c < cores.size(); ++c) {
        if (c == target) continue;
        for (const auto& [addr, cnt] : cores[c].l2_aad.entries()) v.add(addr, cnt);
    }
    return v;
}

InsertionResult insertion_effect_impl(const std::vector<SharedCoreInputs>& cores,
                                      std::size_t mcap) {
    InsertionResult res{Histogram1D(mcap), {}, {}};
    res.contributions.assign(cores.size(), Histogram1D(mcap));
    res.stretch.assign(cores.size(), 0.0);

    double cold = 0.0;
    for (std::size_t c = 0; c < cores.size(); ++c) {
        const auto& rdh = cores[c].l2_rdh;
        cold += rdh.cold();
        if (cores[c].l2_aad.total() <= 0.0) continue;  // silent core
        const double factor = stretch_factor(c, cores);
        res.stretch[c] = factor;
        auto& contrib = res.contributions[c];
        for (std::size_t r = 0; r <= rdh.cap(); ++r) {
            const double count = rdh.at(r);
            if (count == 0.0) continue;
            const double rhat = static_cast<double>(r) * factor;
            if (rhat >= static_cast<double>(mcap)) {
                contrib.bin(mcap) += count;
                continue;
            }
            const auto lo = static_cast<std::size_t>(rhat);
            const double upper = count * (rhat - static_cast<double>(lo));
            // lower part is the remainder, so the pair sums to `count` exactly
            contrib.bin(lo) += count - upper;
            if (upper != 0.0) contrib.bin(lo + 1) += upper;
        }
    }
    for (const auto& contrib : res.contributions)
        for (std::size_t b = 0; b <= mcap; ++b) res.rdh_prime.bin(b) += contrib.at(b);
    res.rdh_prime.set_cold(cold);
    return res;
}

Histogram1D split_effect_impl(const InsertionResult& insertion,
                              const std::vector<double>& p_same_per_core, std::size_t mcap) {
    // Expected split epochs per merged bin. The original distance of a bin's
    // mass is rhat / stretch, so the inserted-reference exponent is
    // rhat * (1 - 1/stretch).
    std::vector<double> split(mcap + 1, 0.0);
    for (std::size_t c = 0; c < insertion.contributions.size(); ++c) {
        const double factor = insertion.stretch[c];
        const double p = p_same_per_core[c];
        if (factor <= 1.0 || p <= 0.0) continue;
        const double insert_share = 1.0 - 1.0 / factor;
        const auto& contrib = insertion.contributions[c];
        for (std::size_t b = 1; b <= mcap; ++b) {
            const double count = contrib.at(b);
            if (count == 0.0) continue;
            split[b] += count * (1.0 - std::pow(1.0 - p, static_cast<double>(b) * insert_share));
        }
    }

    // Each split bar rd sheds its mass uniformly over bars 0..rd-1; walking
    // from the top bin keeps the incoming tail a running sum.
    Histogram1D out(mcap);
    double tail = 0.0;
    for (std::size_t b = mcap + 1; b-- > 0;) {
        const double v = insertion.rdh_prime.at(b) - split[b] + tail;
        out.bin(b) = v > 0.0 ? v : 0.0;
        if (b > 0) tail += split[b] / static_cast<double>(b);
    }
    out.set_cold(insertion.rdh_prime.cold());
    return out;
}

}  // namespace

double stretch_factor(std::size_t target, const std::vector<SharedCoreInputs>& cores) {
    const double own = cores[target].l2_aad.total();
    if (own <= 0.0)
        throw ZeroAccess("core " + std::to_string(target) + " issued no shared-cache access");
    return 1.0 + others_access_total(target, cores) / own;
}

double stretch_factor(std::size_t target, const SharedModelInputs& inputs) {
    return stretch_factor(target, inputs.cores);
}

InsertionResult insertion_effect(const SharedModelInputs& inputs) {
    return insertion_effect_impl(inputs.cores, inputs.merged_cap);
}

double p_same(std::size_t target, const std::vector<SharedCoreInputs>& cores,
              const CacheGeometry& l2) {
    const double own_total = cores[target].l2_aad.total();
    if (own_total <= 0.0) return 0.0;
    const AddressHistogram others = aggregate_other_aads(target, cores);
    if (others.empty()) return 0.0;

    std::unordered_map<std::uint64_t, double> other_set_totals;
    for (const auto& [addr, cnt] : others.entries()) other_set_totals[l2.set_index(addr)] += cnt;

    double p = 0.0;
    for (const auto& [addr, cnt] : cores[target].l2_aad.entries()) {
        const double shared = others.at(addr);
        if (shared <= 0.0) continue;
        const auto it = other_set_totals.find(l2.set_index(addr));
        if (it == other_set_totals.end() || it->second <= 0.0) continue;
        p += (cnt / own_total) * (shared / it->second);
    }
    return std::clamp(p, 0.0, 1.0);
}

double p_same(std::size_t target, const SharedModelInputs& inputs) {
    return p_same(target, inputs.cores, inputs.l2);
}

Histogram1D split_effect(const InsertionResult& insertion,
                         const std::vector<double>& p_same_per_core,
                         const SharedModelInputs& inputs) {
    return split_effect_impl(insertion, p_same_per_core, inputs.merged_cap);
}

MrdhResult build_mrdh(const std::vector<SharedCoreInputs>& cores, const CacheGeometry& l2,
                      std::size_t merged_cap) {
    bool any_active = false;
    for (const auto& c : cores)
        if (c.l2_aad.total() > 0.0) any_active = true;
    if (!any_active) throw AllCoresSilent();

    MrdhResult res;
    InsertionResult ins = insertion_effect_impl(cores, merged_cap);
    res.diagnostics.stretch = ins.stretch;
    res.diagnostics.p_same.assign(cores.size(), 0.0);
    for (std::size_t c = 0; c < cores.size(); ++c)
        if (ins.stretch[c] > 0.0) res.diagnostics.p_same[c] = p_same(c, cores, l2);
    res.mrdh = split_effect_impl(ins, res.diagnostics.p_same, merged_cap);
    res.diagnostics.rdh_prime = std::move(ins.rdh_prime);
    return res;
}

MrdhResult build_mrdh(const SharedModelInputs& inputs) {
    return build_mrdh(inputs.cores, inputs.l2, inputs.merged_cap);
}

}  // namespace cachemodel
