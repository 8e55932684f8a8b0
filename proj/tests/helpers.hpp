#pragma once

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>

#include "cachemodel/geometry.hpp"
#include "cachemodel/trace.hpp"

namespace cachemodel::testing {

struct Ref {
    std::uint32_t core;
    char op;  // 'R' or 'W'
    std::uint64_t addr;
};

inline Trace make_trace(std::uint32_t cores, std::initializer_list<Ref> refs,
                        std::uint32_t line_hint = 0) {
    Trace t;
    t.core_count = cores;
    t.line_size_hint = line_hint;
    std::uint64_t seq = 0;
    for (const auto& r : refs)
        t.records.push_back({r.core, r.op == 'W' ? Op::Write : Op::Read, r.addr, seq++});
    return t;
}

inline CacheGeometry geom(std::uint64_t size, std::uint32_t assoc, std::uint32_t line = 64) {
    return CacheGeometry::make(size, assoc, line);
}

/// Uniform random trace over a contiguous line footprint; unlike generate(),
/// the per-record core choice is also random, which exercises irregular
/// interleavings.
inline Trace make_random_trace(std::uint64_t seed, std::uint32_t cores, std::size_t records,
                               std::uint64_t footprint_lines, double write_fraction,
                               std::uint32_t line = 64) {
    std::mt19937_64 rng(seed);
    Trace t;
    t.core_count = cores;
    t.line_size_hint = line;
    for (std::size_t i = 0; i < records; ++i) {
        const auto core = static_cast<std::uint32_t>(rng() % cores);
        const std::uint64_t addr = (rng() % footprint_lines) * line + rng() % line;
        const Op op = (rng() >> 11) * 0x1.0p-53 < write_fraction ? Op::Write : Op::Read;
        t.records.push_back({core, op, addr, i});
    }
    return t;
}

/// The interleaved stream viewed as one reference sequence (all records
/// relabeled to core 0), for profiling merged-stream distances.
inline Trace as_single_stream(const Trace& t) {
    Trace out = t;
    out.core_count = 1;
    for (auto& r : out.records) r.core = 0;
    return out;
}

/// Scratch directory under the system temp root, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("cachemodel_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

}  // namespace cachemodel::testing
