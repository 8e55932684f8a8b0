#include "cachemodel/missrate.hpp"

namespace cachemodel {

std::vector<double> expected_stack_distances(const Histogram1D& rdh) {
    const std::size_t cap = rdh.cap();
    const double total = rdh.total();
    std::vector<double> esd(cap + 1, 0.0);
    if (total <= 0.0) return esd;

    // suffix[j] = P(reuse distance > j); the cold bucket always counts.
    double tail = rdh.cold();
    std::vector<double> exceed(cap + 1, 0.0);
    for (std::size_t j = cap + 1; j-- > 0;) {
        exceed[j] = tail / total;
        tail += rdh.at(j);
    }
    // exceed[j] above is P(RD > j) computed before adding bin j itself:
    // entering iteration j, `tail` holds cold + sum of bins > j.
    for (std::size_t d = 1; d <= cap; ++d) esd[d] = esd[d - 1] + exceed[d - 1];
    return esd;
}

double expected_stack_distance(std::size_t d, const Histogram1D& rdh) {
    return expected_stack_distances(rdh)[std::min(d, rdh.cap())];
}

MissRateReport miss_rate(const Histogram1D& rdh, const CacheGeometry& cache) {
    const double total = rdh.total();
    if (total <= 0.0) throw EmptyHistogram();

    MissRateReport rep;
    rep.capacity_lines = cache.capacity_lines();
    rep.accesses = total;
    rep.cold_misses = rdh.cold();
    rep.misses = rdh.cold();
    const auto esd = expected_stack_distances(rdh);
    const auto capacity = static_cast<double>(rep.capacity_lines);
    for (std::size_t d = 0; d <= rdh.cap(); ++d)
        if (esd[d] >= capacity) rep.misses += rdh.at(d);
    rep.miss_rate = rep.misses / rep.accesses;
    return rep;
}

}  // namespace cachemodel
