#include "cachemodel/upstream.hpp"

namespace cachemodel {

NormalizedTable normalize_rows(const Table2D& table) {
    NormalizedTable out(table.cap());
    for (std::size_t r = 0; r <= table.cap(); ++r) {
        const double total = table.row_total(r);
        if (total <= 0.0) continue;
        std::vector<double> row(table.row(r));
        for (double& v : row) v /= total;
        out.set_row(r, std::move(row));
    }
    return out;
}

Histogram1D miss_rdh(const Histogram1D& l1_rdh, const NormalizedTable& p_rs,
                     std::uint32_t assoc) {
    Histogram1D out(l1_rdh.cap());
    for (std::size_t i = 0; i <= l1_rdh.cap(); ++i) {
        const double c = l1_rdh.at(i);
        if (c == 0.0) continue;
        if (!p_rs.row_defined(i)) continue;
        const double miss_share = 1.0 - p_rs.row_sum_below(i, assoc);
        out.bin(i) = c * (miss_share > 0.0 ? miss_share : 0.0);
    }
    out.set_cold(l1_rdh.cold());
    return out;
}

Histogram1D l2_rdh(const Histogram1D& miss, const NormalizedTable& p_nhit) {
    Histogram1D out(miss.cap());
    for (std::size_t rd = 0; rd <= miss.cap(); ++rd) {
        const double m = miss.at(rd);
        if (m == 0.0) continue;
        if (!p_nhit.row_defined(rd)) {
            out.bin(rd) += m;  // no hit information: mass stays put
            continue;
        }
        const auto& row = p_nhit.row(rd);
        for (std::size_t n = 0; n < row.size() && n <= rd; ++n)
            if (row[n] != 0.0) out.bin(rd - n) += m * row[n];
    }
    out.set_cold(miss.cold());
    return out;
}

L2Inputs derive_l2_inputs(const CoreProfile& profile, const CacheGeometry& l1) {
    const NormalizedTable p_rs = normalize_rows(profile.rst);
    const NormalizedTable p_nhit = normalize_rows(profile.hit_rdh);
    const Histogram1D missed = miss_rdh(profile.l1_rdh, p_rs, l1.associativity);
    return {l2_rdh(missed, p_nhit), profile.l2_aad};
}

}  // namespace cachemodel
