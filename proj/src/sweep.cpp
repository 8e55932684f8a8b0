#include "cachemodel/sweep.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <tuple>

#include "cachemodel/format.hpp"
#include "cachemodel/missrate.hpp"
#include "cachemodel/profiler.hpp"
#include "cachemodel/shared.hpp"
#include "cachemodel/upstream.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cachemodel {

std::vector<SweepPoint> cross_grid(const std::vector<std::uint64_t>& l1_sizes,
                                   const std::vector<std::uint32_t>& l1_assocs,
                                   const std::vector<std::uint64_t>& l2_sizes,
                                   const std::vector<std::uint32_t>& l2_assocs,
                                   std::uint32_t line_size) {
    std::vector<SweepPoint> grid;
    for (auto s1 : l1_sizes)
        for (auto a1 : l1_assocs)
            for (auto s2 : l2_sizes)
                for (auto a2 : l2_assocs)
                    grid.push_back({CacheGeometry{s1, a1, line_size},
                                    CacheGeometry{s2, a2, line_size}});
    return grid;
}

std::vector<SweepRow> run_sweep(const Trace& trace, const SweepSpec& spec, int threads) {
    if (spec.grid.empty()) throw InvalidGrid("sweep grid is empty");
    const std::size_t merged_cap = spec.merged_cap ? spec.merged_cap : 8 * spec.cap;
    for (const auto& pt : spec.grid) {
        try {
            pt.l1.validate();
            pt.l2.validate();
        } catch (const GeometryError& e) {
            throw InvalidGrid(std::string("invalid grid point ") + config_label(pt.l1, pt.l2) +
                              ": " + e.what());
        }
        if (pt.l1.line_size != pt.l2.line_size)
            throw InvalidGrid("grid point " + config_label(pt.l1, pt.l2) +
                              ": L1 and L2 line sizes differ");
    }

    // One profiling pass (and one upstream derivation) per distinct L1
    // geometry, shared read-only by all of that geometry's L2 points.
    std::map<std::tuple<std::uint64_t, std::uint32_t, std::uint32_t>, std::vector<std::size_t>>
        groups;
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        const auto& g = spec.grid[i].l1;
        groups[{g.size, g.associativity, g.line_size}].push_back(i);
    }

    std::vector<SweepRow> rows(spec.grid.size());
    for (const auto& [key, indices] : groups) {
        const CacheGeometry l1 = spec.grid[indices.front()].l1;
        const auto profiles = profile_trace(trace, l1, spec.cap, threads);
        std::vector<SharedCoreInputs> inputs;
        inputs.reserve(profiles.size());
        for (const auto& p : profiles) {
            L2Inputs li = derive_l2_inputs(p, l1);
            inputs.emplace_back(std::move(li.rdh), std::move(li.aad));
        }

        const auto n = static_cast<std::int64_t>(indices.size());
#ifdef _OPENMP
        int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
#endif
        for (std::int64_t k = 0; k < n; ++k) {
            const std::size_t i = indices[static_cast<std::size_t>(k)];
            const auto& pt = spec.grid[i];
            const MrdhResult mr = build_mrdh(inputs, pt.l2, merged_cap);
            const MissRateReport rep = miss_rate(mr.mrdh, pt.l2);
            rows[i] = {config_label(pt.l1, pt.l2), rep.misses, rep.miss_rate,
                       pt.l1.size + pt.l2.size};
        }
    }

    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::tie(a.total_capacity, a.label) < std::tie(b.total_capacity, b.label);
    });
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "config_label,l2_misses,l2_miss_rate\n";
    for (const auto& r : rows)
        out << r.label << ',' << fmt6(r.l2_misses) << ',' << fmt6(r.l2_miss_rate) << '\n';
}

}  // namespace cachemodel
