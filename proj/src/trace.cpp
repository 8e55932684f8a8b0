#include "cachemodel/trace.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace cachemodel {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_u64(const std::string& tok, std::uint64_t& out, int base = 10) {
    if (tok.empty() || tok[0] == '-' || tok[0] == '+') return false;
    std::size_t pos = 0;
    try {
        out = std::stoull(tok, &pos, base);
    } catch (const std::exception&) {
        return false;
    }
    return pos == tok.size();
}

// splitmix64, used to decorrelate per-core generator seeds
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    // multiply-shift; bias is negligible for the footprints used here
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

bool coin(std::mt19937_64& rng, double p) {
    return (rng() >> 11) * 0x1.0p-53 < p;
}

}  // namespace

Trace read_trace(std::istream& in) {
    Trace t;
    bool have_header = false;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(raw);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        if (!have_header) {
            std::string kw;
            ss >> kw;
            if (kw != "cores") throw ParseError(lineno, "expected 'cores <N>' header");
            std::string tok;
            if (!(ss >> tok)) throw ParseError(lineno, "missing core count");
            std::uint64_t n = 0;
            if (!parse_u64(tok, n) || n == 0)
                throw ParseError(lineno, "bad core count '" + tok + "'");
            t.core_count = static_cast<std::uint32_t>(n);
            if (ss >> tok) {
                if (tok != "line") throw ParseError(lineno, "unexpected token '" + tok + "'");
                if (!(ss >> tok)) throw ParseError(lineno, "missing line size");
                std::uint64_t l = 0;
                if (!parse_u64(tok, l) || l == 0 || (l & (l - 1)) != 0)
                    throw ParseError(lineno, "line size must be a power of two, got '" + tok + "'");
                t.line_size_hint = static_cast<std::uint32_t>(l);
            }
            std::string rest;
            if (ss >> rest) throw ParseError(lineno, "trailing token '" + rest + "'");
            have_header = true;
            continue;
        }
        std::string core_tok, op_tok, addr_tok, rest;
        if (!(ss >> core_tok >> op_tok >> addr_tok))
            throw ParseError(lineno, "expected '<core> <R|W> <hex-address>'");
        if (ss >> rest) throw ParseError(lineno, "trailing token '" + rest + "'");
        std::uint64_t core = 0;
        if (!parse_u64(core_tok, core)) throw ParseError(lineno, "bad core '" + core_tok + "'");
        if (core >= t.core_count)
            throw ParseError(lineno, "core " + core_tok + " out of range (cores " +
                                          std::to_string(t.core_count) + ")");
        Op op;
        if (op_tok == "R" || op_tok == "r")
            op = Op::Read;
        else if (op_tok == "W" || op_tok == "w")
            op = Op::Write;
        else
            throw ParseError(lineno, "bad op '" + op_tok + "'");
        if (addr_tok.size() > 2 && addr_tok[0] == '0' &&
            (addr_tok[1] == 'x' || addr_tok[1] == 'X'))
            addr_tok = addr_tok.substr(2);
        std::uint64_t addr = 0;
        if (!parse_u64(addr_tok, addr, 16))
            throw ParseError(lineno, "bad hex address '" + addr_tok + "'");
        t.records.push_back({static_cast<std::uint32_t>(core), op, addr,
                             static_cast<std::uint64_t>(t.records.size())});
    }
    if (!have_header) throw ParseError(lineno, "missing 'cores <N>' header");
    if (t.records.empty()) throw EmptyTrace();
    return t;
}

Trace read_trace(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open trace file " + path.string());
    return read_trace(in);
}

void write_trace(const Trace& t, std::ostream& out) {
    out << "cores " << t.core_count;
    if (t.line_size_hint) out << " line " << t.line_size_hint;
    out << '\n';
    char buf[64];
    for (const auto& r : t.records) {
        std::snprintf(buf, sizeof buf, "%u %c %llx\n", r.core, r.op == Op::Write ? 'W' : 'R',
                      static_cast<unsigned long long>(r.addr));
        out << buf;
    }
}

void write_trace(const Trace& t, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_trace(t, out);
}

std::vector<Trace> split_by_core(const Trace& t) {
    std::vector<Trace> out(t.core_count);
    for (auto& s : out) {
        s.core_count = t.core_count;
        s.line_size_hint = t.line_size_hint;
    }
    for (const auto& r : t.records) out[r.core].records.push_back(r);
    return out;
}

Trace generate(const SyntheticSpec& spec) {
    if (spec.core_count == 0) throw InvalidSpec("core_count must be >= 1");
    if (spec.sharing_fraction < 0.0 || spec.sharing_fraction > 1.0)
        throw InvalidSpec("sharing_fraction must be in [0,1]");
    if (spec.write_fraction < 0.0 || spec.write_fraction > 1.0)
        throw InvalidSpec("write_fraction must be in [0,1]");
    if (spec.line_size == 0 || (spec.line_size & (spec.line_size - 1)) != 0)
        throw InvalidSpec("line_size must be a power of two");
    if (spec.records_per_core > 0 && spec.private_footprint == 0 && spec.shared_footprint == 0)
        throw InvalidSpec("no addressable lines: both footprints are zero");

    Trace t;
    t.core_count = spec.core_count;
    t.line_size_hint = spec.line_size;

    const std::uint64_t line = spec.line_size;
    // Line-address layout: shared lines first, then each core's private
    // region. Disjoint by construction, so sharing_fraction = 0 (or
    // shared_footprint = 0) yields disjoint per-core address sets.
    auto shared_addr = [&](std::uint64_t i) { return i * line; };
    auto private_addr = [&](std::uint32_t core, std::uint64_t i) {
        return (spec.shared_footprint + core * spec.private_footprint + i) * line;
    };

    struct CoreGen {
        std::mt19937_64 rng;
        std::uint64_t priv_pos = 0;
        std::uint64_t shared_pos = 0;
    };
    std::vector<CoreGen> gens;
    gens.reserve(spec.core_count);
    for (std::uint32_t c = 0; c < spec.core_count; ++c)
        gens.push_back({std::mt19937_64(mix64(spec.seed ^ mix64(c + 1)))});

    auto next_record = [&](std::uint32_t c) -> ReferenceRecord {
        auto& g = gens[c];
        const bool use_shared =
            spec.shared_footprint > 0 &&
            (spec.private_footprint == 0 || coin(g.rng, spec.sharing_fraction));
        std::uint64_t addr;
        if (spec.access_pattern == AccessPattern::SequentialLoop) {
            if (use_shared) {
                addr = shared_addr(g.shared_pos);
                g.shared_pos = (g.shared_pos + 1) % spec.shared_footprint;
            } else {
                addr = private_addr(c, g.priv_pos);
                g.priv_pos = (g.priv_pos + 1) % spec.private_footprint;
            }
        } else {
            addr = use_shared ? shared_addr(bounded(g.rng, spec.shared_footprint))
                              : private_addr(c, bounded(g.rng, spec.private_footprint));
        }
        const Op op = coin(g.rng, spec.write_fraction) ? Op::Write : Op::Read;
        return {c, op, addr, 0};
    };

    const std::uint64_t total = spec.records_per_core * spec.core_count;
    t.records.reserve(total);
    if (spec.interleave == Interleave::RoundRobin) {
        for (std::uint64_t k = 0; k < spec.records_per_core; ++k)
            for (std::uint32_t c = 0; c < spec.core_count; ++c)
                t.records.push_back(next_record(c));
    } else {
        std::vector<std::uint32_t> order;
        order.reserve(total);
        for (std::uint32_t c = 0; c < spec.core_count; ++c)
            order.insert(order.end(), spec.records_per_core, c);
        std::mt19937_64 irng(mix64(spec.seed ^ 0x1f123bb5159a55e5ULL));
        for (std::uint64_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[bounded(irng, i)]);
        for (std::uint32_t c : order) t.records.push_back(next_record(c));
    }
    for (std::uint64_t i = 0; i < t.records.size(); ++i) t.records[i].seq = i;
    return t;
}

}  // namespace cachemodel
