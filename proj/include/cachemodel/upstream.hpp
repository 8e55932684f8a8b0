#pragma once

#include <cstdint>
#include <vector>

#include "cachemodel/histogram.hpp"
#include "cachemodel/profiler.hpp"

namespace cachemodel {

/// Row-normalized view of a Table2D. Rows whose source total is zero are
/// flagged undefined rather than carrying fake probabilities.
class NormalizedTable {
public:
    explicit NormalizedTable(std::size_t cap) : cap_(cap), rows_(cap + 1), defined_(cap + 1, false) {}

    std::size_t cap() const { return cap_; }
    bool row_defined(std::size_t r) const { return defined_[r]; }

    double at(std::size_t r, std::size_t c) const {
        const auto& row = rows_[r];
        return c < row.size() ? row[c] : 0.0;
    }
    const std::vector<double>& row(std::size_t r) const { return rows_[r]; }

    /// Sum of probabilities in row r with column index < limit.
    double row_sum_below(std::size_t r, std::size_t limit) const {
        const auto& row = rows_[r];
        const std::size_t n = std::min(limit, row.size());
        double t = 0.0;
        for (std::size_t c = 0; c < n; ++c) t += row[c];
        return t;
    }

    void set_row(std::size_t r, std::vector<double> row) {
        rows_[r] = std::move(row);
        defined_[r] = true;
    }

private:
    std::size_t cap_;
    std::vector<std::vector<double>> rows_;
    std::vector<bool> defined_;
};

/// Divides every row of the table by its total; all-zero rows stay undefined.
NormalizedTable normalize_rows(const Table2D& table);

/// Removes the L1-hit share from each reuse-distance bin: the surviving count
/// at distance i is the bin total times the stack-distance mass at or beyond
/// the associativity. The cold bucket passes through (first touches always
/// miss).
Histogram1D miss_rdh(const Histogram1D& l1_rdh, const NormalizedTable& p_rs, std::uint32_t assoc);

/// Migrates each surviving bin down by its intervening-hit distribution: mass
/// at distance rd with n intervening hits lands at distance rd - n. Rows with
/// mass but no defined hit distribution stay in place.
Histogram1D l2_rdh(const Histogram1D& miss, const NormalizedTable& p_nhit);

struct L2Inputs {
    Histogram1D rdh;
    AddressHistogram aad;
};

/// Full chain from one core's L1 profile to its shared-cache inputs.
L2Inputs derive_l2_inputs(const CoreProfile& profile, const CacheGeometry& l1);

}  // namespace cachemodel
