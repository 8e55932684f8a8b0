#include "cachemodel/profiler.hpp"

#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cachemodel {

CoreProfile profile_core(const Trace& stream, const CacheGeometry& l1, std::size_t cap) {
    l1.validate();
    if (stream.line_size_hint && stream.line_size_hint != l1.line_size)
        throw GeometryMismatch("trace line size hint " + std::to_string(stream.line_size_hint) +
                               " conflicts with L1 line size " + std::to_string(l1.line_size));
    if (cap < l1.associativity)
        throw GeometryError("distance cap " + std::to_string(cap) +
                            " is below the associativity; the hit test would saturate");

    CoreProfile p(cap);
    p.l1 = l1;
    if (!stream.records.empty()) p.core = stream.records.front().core;

    const std::uint64_t sets = l1.set_count();
    const std::uint64_t set_mask = sets - 1;

    std::unordered_map<std::uint64_t, std::size_t> last_pos;  // line index -> stream position
    last_pos.reserve(stream.records.size());
    // Per-set LRU stacks, MRU first. A line's depth equals the number of
    // distinct same-set lines touched since its previous access. Stacks are
    // truncated to cap+1 entries: anything deeper reads back as a clamped
    // stack distance anyway.
    std::vector<std::vector<std::uint64_t>> stacks(sets);
    std::vector<std::uint64_t> hit_prefix(stream.records.size() + 1, 0);

    for (std::size_t t = 0; t < stream.records.size(); ++t) {
        const auto& rec = stream.records[t];
        if (rec.core != p.core)
            throw Error("profile_core: stream mixes cores " + std::to_string(p.core) + " and " +
                        std::to_string(rec.core));
        const std::uint64_t line = l1.line_index(rec.addr);
        const std::uint64_t laddr = line * l1.line_size;
        auto& stack = stacks[line & set_mask];

        std::size_t s = cap;
        for (std::size_t i = 0; i < stack.size(); ++i) {
            if (stack[i] == line) {
                s = i;
                stack.erase(stack.begin() + i);
                break;
            }
        }
        stack.insert(stack.begin(), line);
        if (stack.size() > cap + 1) stack.pop_back();

        bool hit = false;
        auto it = last_pos.find(line);
        if (it == last_pos.end()) {
            p.l1_rdh.add_cold();
            p.l2_aad.add(laddr);
        } else {
            const std::size_t prev = it->second;
            const std::size_t r = t - prev - 1;
            hit = s < l1.associativity;
            p.l1_rdh.add(r);
            p.rst.add(r, s);
            const std::size_t lo = std::max(prev + 1, t > cap ? t - cap : 0);
            p.hit_rdh.add(r, hit_prefix[t] - hit_prefix[lo]);
            if (!hit) p.l2_aad.add(laddr);
        }
        p.l1_aad.add(laddr);
        if (rec.op == Op::Write) p.l1_waad.add(laddr);
        hit_prefix[t + 1] = hit_prefix[t] + (hit ? 1 : 0);
        last_pos[line] = t;
    }
    p.l1_access_total = static_cast<double>(stream.records.size());
    p.l2_access_total = p.l2_aad.total();
    return p;
}

namespace {

std::vector<CoreProfile> profile_streams(const std::vector<Trace>& streams,
                                         const CacheGeometry& l1, std::size_t cap,
                                         int threads) {
    std::vector<CoreProfile> out(streams.size());
#ifdef _OPENMP
    if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#else
    (void)threads;
#endif
    for (std::size_t i = 0; i < streams.size(); ++i) {
        out[i] = profile_core(streams[i], l1, cap);
        out[i].core = static_cast<std::uint32_t>(i);
    }
    return out;
}

}  // namespace

std::vector<CoreProfile> profile_trace(const Trace& t, const CacheGeometry& l1, std::size_t cap,
                                       int threads) {
    // everything profile_core can throw for is rejected here, before the
    // parallel region
    l1.validate();
    if (t.line_size_hint && t.line_size_hint != l1.line_size)
        throw GeometryMismatch("trace line size hint " + std::to_string(t.line_size_hint) +
                               " conflicts with L1 line size " + std::to_string(l1.line_size));
    if (cap < l1.associativity)
        throw GeometryError("distance cap " + std::to_string(cap) +
                            " is below the associativity; the hit test would saturate");
    return profile_streams(split_by_core(t), l1, cap, threads);
}

std::vector<CoreProfile> profile_trace_serial(const Trace& t, const CacheGeometry& l1,
                                              std::size_t cap) {
    auto streams = split_by_core(t);
    std::vector<CoreProfile> out(streams.size());
    for (std::size_t i = 0; i < streams.size(); ++i) {
        out[i] = profile_core(streams[i], l1, cap);
        out[i].core = static_cast<std::uint32_t>(i);
    }
    return out;
}

double total_accesses(const CoreProfile& p, Level level) {
    return level == Level::L1 ? p.l1_access_total : p.l2_aad.total();
}

}  // namespace cachemodel
