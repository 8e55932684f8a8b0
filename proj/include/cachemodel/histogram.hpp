#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace cachemodel {

/// Count-per-distance histogram with a saturating top bin and a separate
/// bucket for first-touch references (infinite distance). Counts are stored
/// as doubles: profiling produces integers, the model stages produce
/// fractional expectations.
class Histogram1D {
public:
    static constexpr std::size_t kDefaultCap = 1024;

    explicit Histogram1D(std::size_t cap = kDefaultCap) : bins_(cap + 1, 0.0) {}

    std::size_t cap() const { return bins_.size() - 1; }

    /// Adds count at `distance`, clamping distances beyond the cap into the
    /// top bin.
    void add(std::size_t distance, double count = 1.0) {
        bins_[std::min(distance, cap())] += count;
    }
    void add_cold(double count = 1.0) { cold_ += count; }

    double at(std::size_t d) const { return bins_[d]; }
    double& bin(std::size_t d) { return bins_[d]; }
    double cold() const { return cold_; }
    void set_cold(double c) { cold_ = c; }

    double finite_total() const {
        double t = 0.0;
        for (double b : bins_) t += b;
        return t;
    }
    double total() const { return finite_total() + cold_; }

    bool operator==(const Histogram1D&) const = default;

private:
    std::vector<double> bins_;
    double cold_ = 0.0;
};

/// Joint (reuse distance, second index) count table. The second index is the
/// stack distance for RST tables and the intervening-hit count for Hit-RDH
/// tables; in both cases it never exceeds the row index. Rows grow on demand
/// so sparse profiles stay small.
class Table2D {
public:
    explicit Table2D(std::size_t cap = Histogram1D::kDefaultCap) : cap_(cap), rows_(cap + 1) {}

    std::size_t cap() const { return cap_; }

    void add(std::size_t r, std::size_t c, double count = 1.0) {
        r = std::min(r, cap_);
        c = std::min(c, cap_);
        auto& row = rows_[r];
        if (row.size() <= c) row.resize(c + 1, 0.0);
        row[c] += count;
    }

    double at(std::size_t r, std::size_t c) const {
        if (r > cap_) r = cap_;
        const auto& row = rows_[r];
        return c < row.size() ? row[c] : 0.0;
    }

    /// Stored extent of row r; cells at or beyond it are zero.
    const std::vector<double>& row(std::size_t r) const { return rows_[r]; }

    double row_total(std::size_t r) const {
        double t = 0.0;
        for (double v : rows_[r]) t += v;
        return t;
    }

    /// Sum of cells in row r with column index < limit.
    double row_total_below(std::size_t r, std::size_t limit) const {
        const auto& row = rows_[r];
        const std::size_t n = std::min(limit, row.size());
        double t = 0.0;
        for (std::size_t c = 0; c < n; ++c) t += row[c];
        return t;
    }

    double total() const {
        double t = 0.0;
        for (std::size_t r = 0; r <= cap_; ++r) t += row_total(r);
        return t;
    }

    /// Semantic equality: trailing zero cells do not matter.
    bool operator==(const Table2D& o) const {
        if (cap_ != o.cap_) return false;
        for (std::size_t r = 0; r <= cap_; ++r) {
            const std::size_t n = std::max(rows_[r].size(), o.rows_[r].size());
            for (std::size_t c = 0; c < n; ++c)
                if (at(r, c) != o.at(r, c)) return false;
        }
        return true;
    }

private:
    std::size_t cap_;
    std::vector<std::vector<double>> rows_;
};

/// Per-address access counts over a profiling interval. Keys are cache-line
/// aligned byte addresses. An ordered map keeps iteration (and therefore
/// serialization and probability summations) deterministic.
class AddressHistogram {
public:
    using Map = std::map<std::uint64_t, double>;

    void add(std::uint64_t line_aligned_addr, double count = 1.0) {
        entries_[line_aligned_addr] += count;
        total_ += count;
    }

    double at(std::uint64_t addr) const {
        auto it = entries_.find(addr);
        return it == entries_.end() ? 0.0 : it->second;
    }

    double total() const { return total_; }
    bool empty() const { return entries_.empty(); }
    std::size_t distinct_addresses() const { return entries_.size(); }
    const Map& entries() const { return entries_; }

    bool operator==(const AddressHistogram&) const = default;

private:
    Map entries_;
    double total_ = 0.0;
};

}  // namespace cachemodel
