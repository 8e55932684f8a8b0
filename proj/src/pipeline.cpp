#include "cachemodel/pipeline.hpp"

#include <ostream>

#include "cachemodel/format.hpp"
#include "cachemodel/profile_io.hpp"
#include "cachemodel/upstream.hpp"

namespace cachemodel {

ModelReport run_model(const std::vector<CoreProfile>& profiles, const ModelOptions& opt) {
    if (profiles.empty()) throw Error("run_model: no profiles");
    const CacheGeometry l1 = profiles.front().l1;
    const std::size_t cap = profiles.front().cap;
    for (const auto& p : profiles)
        if (p.l1 != l1 || p.cap != cap)
            throw GeometryMismatch("profiles disagree on L1 geometry or cap");
    opt.l2.validate();
    if (opt.l2.line_size != l1.line_size)
        throw GeometryMismatch("L1 and L2 line sizes differ");

    ModelReport rep;
    rep.label = config_label(l1, opt.l2);
    rep.l1 = l1;
    rep.l2 = opt.l2;
    rep.cap = cap;
    rep.merged_cap = opt.merged_cap ? opt.merged_cap : 8 * cap;
    rep.core_count = profiles.size();

    if (profiles.size() > 1)
        rep.coherence = analyze_coherence(CoherenceInputs::from_profiles(profiles, l1));

    std::vector<SharedCoreInputs> shared_inputs;
    shared_inputs.reserve(profiles.size());
    for (const auto& p : profiles) {
        L2Inputs li = derive_l2_inputs(p, l1);
        shared_inputs.emplace_back(std::move(li.rdh), std::move(li.aad));
    }
    MrdhResult mr = build_mrdh(shared_inputs, opt.l2, rep.merged_cap);
    rep.stretch = std::move(mr.diagnostics.stretch);
    rep.p_same = std::move(mr.diagnostics.p_same);
    rep.mrdh = std::move(mr.mrdh);
    rep.rdh_prime = std::move(mr.diagnostics.rdh_prime);
    rep.full = miss_rate(rep.mrdh, opt.l2);
    rep.insertion_only = miss_rate(rep.rdh_prime, opt.l2);
    return rep;
}

void write_model_report(const ModelReport& rep, std::ostream& out) {
    out << "model report\n";
    out << "config " << rep.label << '\n';
    out << "cores " << rep.core_count << '\n';
    out << "cap " << rep.cap << '\n';
    out << "merged_cap " << rep.merged_cap << '\n';

    if (!rep.coherence.empty()) {
        out << "[coherence]\n";
        out << "core,baseline_misses,coherence_misses,refined_misses,p_same_write\n";
        for (std::size_t c = 0; c < rep.coherence.size(); ++c) {
            const auto& r = rep.coherence[c];
            out << c << ',' << fmt6(r.baseline_misses) << ',' << fmt6(r.miss_coherence) << ','
                << fmt6(r.refined_l1_misses) << ',' << fmt6(r.p_same_write) << '\n';
        }
    }
    if (rep.core_count > 1) {
        out << "[sharing]\n";
        out << "core,stretch,p_same\n";
        for (std::size_t c = 0; c < rep.stretch.size(); ++c)
            out << c << ',' << fmt6(rep.stretch[c]) << ',' << fmt6(rep.p_same[c]) << '\n';
    }
    out << "[l2]\n";
    out << "accesses " << fmt6(rep.full.accesses) << '\n';
    out << "capacity_lines " << rep.full.capacity_lines << '\n';
    out << "cold_misses " << fmt6(rep.full.cold_misses) << '\n';
    out << "model_misses " << fmt6(rep.full.misses) << '\n';
    out << "model_miss_rate " << fmt6(rep.full.miss_rate) << '\n';
    out << "insertion_only_misses " << fmt6(rep.insertion_only.misses) << '\n';
    out << "insertion_only_miss_rate " << fmt6(rep.insertion_only.miss_rate) << '\n';
    out << "[mrdh]\n";
    write_histogram(rep.mrdh, out);
}

}  // namespace cachemodel
