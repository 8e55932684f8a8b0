#include "cachemodel/oracle.hpp"

#include <algorithm>
#include <unordered_map>

namespace cachemodel {

Simulator::Simulator(const SimConfig& cfg, std::uint32_t core_count) : cfg_(cfg) {
    cfg_.validate();
    l1_.assign(core_count, std::vector<std::vector<L1Way>>(cfg_.l1.set_count()));
    l2_.assign(cfg_.l2.set_count(), {});
    seen_.resize(core_count);
    stats_.cores.resize(core_count);
    stats_.captured = cfg_.capture_l2;
}

Simulator::L1Way* Simulator::find_l1(std::uint32_t core, std::uint64_t line) {
    auto& set = l1_[core][line & (cfg_.l1.set_count() - 1)];
    for (auto& way : set)
        if (way.line == line) return &way;
    return nullptr;
}

void Simulator::invalidate_others(std::uint32_t core, std::uint64_t line) {
    // Invalidated copies stay in their slots; they are reclaimed by normal
    // LRU replacement. That keeps the resident-but-invalid case observable.
    for (std::uint32_t c = 0; c < l1_.size(); ++c) {
        if (c == core) continue;
        if (L1Way* w = find_l1(c, line); w && w->state != MesiState::Invalid) {
            if (w->state == MesiState::Modified) writeback_to_l2(line);
            w->state = MesiState::Invalid;
        }
    }
}

// State the requesting core obtains on a read, with the required demotions
// applied to the other cores: Shared if anyone else holds the line,
// Exclusive otherwise. A Modified copy elsewhere is flushed and demoted.
MesiState Simulator::read_acquire_state(std::uint32_t core, std::uint64_t line) {
    bool others_hold = false;
    for (std::uint32_t c = 0; c < l1_.size(); ++c) {
        if (c == core) continue;
        if (L1Way* w = find_l1(c, line); w && w->state != MesiState::Invalid) {
            others_hold = true;
            if (w->state == MesiState::Modified) writeback_to_l2(line);
            w->state = MesiState::Shared;
        }
    }
    return others_hold ? MesiState::Shared : MesiState::Exclusive;
}

void Simulator::writeback_to_l2(std::uint64_t line) {
    // Content update only: no demand access, no replacement-state touch. A
    // victim absent from L2 goes straight to memory.
    auto& set = l2_[line & (cfg_.l2.set_count() - 1)];
    for (auto& way : set) {
        if (way.line == line) {
            way.dirty = true;
            return;
        }
    }
}

void Simulator::access_l2(const ReferenceRecord& rec, std::uint64_t line) {
    stats_.l2.accesses++;
    if (cfg_.capture_l2)
        stats_.l2_stream.push_back({rec.core, rec.op, line * cfg_.l2.line_size});
    auto& set = l2_[line & (cfg_.l2.set_count() - 1)];
    for (auto& way : set) {
        if (way.line == line) {
            stats_.l2.hits++;
            way.stamp = ++clock_;
            return;
        }
    }
    stats_.l2.misses++;
    if (set.size() < cfg_.l2.associativity) {
        set.push_back({line, false, ++clock_});
        return;
    }
    auto victim = std::min_element(set.begin(), set.end(),
                                   [](const L2Way& a, const L2Way& b) { return a.stamp < b.stamp; });
    // dirty victim goes to memory; L2 is non-inclusive so L1 copies survive
    *victim = {line, false, ++clock_};
}

void Simulator::fill_l1(std::uint32_t core, std::uint64_t line, MesiState state) {
    auto& set = l1_[core][line & (cfg_.l1.set_count() - 1)];
    if (set.size() < cfg_.l1.associativity) {
        set.push_back({line, state, ++clock_});
        return;
    }
    auto victim = std::min_element(set.begin(), set.end(),
                                   [](const L1Way& a, const L1Way& b) { return a.stamp < b.stamp; });
    if (victim->state == MesiState::Modified) writeback_to_l2(victim->line);
    *victim = {line, state, ++clock_};
}

void Simulator::step(const ReferenceRecord& rec) {
    const std::uint64_t line = cfg_.l1.line_index(rec.addr);
    auto& core_stats = stats_.cores[rec.core];
    core_stats.l1_accesses++;

    L1Way* way = find_l1(rec.core, line);
    if (way && way->state != MesiState::Invalid) {
        core_stats.l1_hits++;
        way->stamp = ++clock_;
        if (rec.op == Op::Write) {
            if (way->state == MesiState::Shared) invalidate_others(rec.core, line);
            way->state = MesiState::Modified;
        }
        return;
    }

    core_stats.l1_misses++;
    if (way) {
        // Resident but invalid: a coherence miss. With the bypass enabled the
        // line is sourced from a peer cache or memory without touching L2.
        core_stats.coherence_misses++;
        if (!cfg_.coherence_fetch_bypasses_l2) access_l2(rec, line);
        if (rec.op == Op::Write) {
            invalidate_others(rec.core, line);
            way->state = MesiState::Modified;
        } else {
            way->state = read_acquire_state(rec.core, line);
        }
        way->stamp = ++clock_;
        return;
    }

    if (seen_[rec.core].insert(line).second) core_stats.cold_misses++;
    access_l2(rec, line);
    MesiState state;
    if (rec.op == Op::Write) {
        invalidate_others(rec.core, line);
        state = MesiState::Modified;
    } else {
        state = read_acquire_state(rec.core, line);
    }
    fill_l1(rec.core, line, state);
}

bool Simulator::mesi_safe() const {
    std::unordered_map<std::uint64_t, int> owners;     // lines with an M/E copy
    std::unordered_map<std::uint64_t, int> holders;    // non-invalid copies per line
    for (const auto& core : l1_) {
        for (const auto& set : core) {
            for (const auto& way : set) {
                if (way.state == MesiState::Invalid) continue;
                holders[way.line]++;
                if (way.state == MesiState::Modified || way.state == MesiState::Exclusive)
                    owners[way.line]++;
            }
        }
    }
    for (const auto& [line, n] : owners)
        if (n > 1 || holders[line] > 1) return false;
    return true;
}

SimStats simulate(const Trace& trace, const SimConfig& cfg) {
    Simulator sim(cfg, trace.core_count);
    if (trace.line_size_hint && trace.line_size_hint != cfg.l1.line_size)
        throw GeometryMismatch("trace line size hint " + std::to_string(trace.line_size_hint) +
                               " conflicts with configured line size " +
                               std::to_string(cfg.l1.line_size));
    for (const auto& rec : trace.records) sim.step(rec);
    return sim.take_stats();
}

Histogram1D profile_merged_l2(const SimStats& stats, std::size_t cap) {
    if (!stats.captured) throw StreamNotCaptured();
    Histogram1D h(cap);
    std::unordered_map<std::uint64_t, std::size_t> last;
    last.reserve(stats.l2_stream.size());
    for (std::size_t i = 0; i < stats.l2_stream.size(); ++i) {
        const std::uint64_t line = stats.l2_stream[i].line_addr;
        auto it = last.find(line);
        if (it == last.end())
            h.add_cold();
        else
            h.add(i - it->second - 1);
        last[line] = i;
    }
    return h;
}

}  // namespace cachemodel
