#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "cachemodel/errors.hpp"

namespace cachemodel {

enum class Op : std::uint8_t { Read, Write };

/// One memory access in the merged multi-core reference stream.
struct ReferenceRecord {
    std::uint32_t core = 0;
    Op op = Op::Read;
    std::uint64_t addr = 0;  // byte address
    std::uint64_t seq = 0;   // global interleave position, unique and increasing

    bool operator==(const ReferenceRecord&) const = default;
};

struct Trace {
    std::uint32_t core_count = 1;
    std::uint32_t line_size_hint = 0;  // 0 = unspecified
    std::vector<ReferenceRecord> records;  // sorted by seq

    bool operator==(const Trace&) const = default;
};

/// Text format: header `cores <N> [line <bytes>]`, then one record per line
/// as `<core> <R|W> <hex-address>`. Line order defines seq. `#` starts a
/// comment line.
Trace read_trace(std::istream& in);
Trace read_trace(const std::filesystem::path& path);
void write_trace(const Trace& t, std::ostream& out);
void write_trace(const Trace& t, const std::filesystem::path& path);

/// Partitions the merged stream into per-core subsequences, preserving seq
/// order. The result has one entry per core index, empty if the core is
/// silent.
std::vector<Trace> split_by_core(const Trace& t);

enum class Interleave : std::uint8_t { RoundRobin, UniformRandom };
enum class AccessPattern : std::uint8_t { UniformRandom, SequentialLoop };

/// Parameters for synthetic multi-core traces with controllable data sharing
/// and write mix. Each core owns `private_footprint` lines; all cores share
/// `shared_footprint` lines; per access, the shared region is chosen with
/// probability `sharing_fraction`.
struct SyntheticSpec {
    std::uint32_t core_count = 2;
    std::uint64_t records_per_core = 1000;
    std::uint64_t private_footprint = 64;  // lines per core
    std::uint64_t shared_footprint = 0;    // lines shared by all cores
    double sharing_fraction = 0.0;
    double write_fraction = 0.0;
    Interleave interleave = Interleave::RoundRobin;
    AccessPattern access_pattern = AccessPattern::UniformRandom;
    std::uint64_t seed = 1;
    std::uint32_t line_size = 64;
};

/// Deterministic in (spec, seed): two calls produce identical traces.
Trace generate(const SyntheticSpec& spec);

}  // namespace cachemodel
