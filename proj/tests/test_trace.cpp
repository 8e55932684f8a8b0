#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "cachemodel/trace.hpp"
#include "helpers.hpp"

using namespace cachemodel;
using namespace cachemodel::testing;

TEST_CASE("read_trace parses header and records") {
    std::istringstream in(
        "# a comment\n"
        "cores 2 line 64\n"
        "0 R 1a2b\n"
        "1 W ff\n"
        "0 r 0x40\n");
    Trace t = read_trace(in);
    CHECK(t.core_count == 2);
    CHECK(t.line_size_hint == 64);
    REQUIRE(t.records.size() == 3);
    CHECK(t.records[0].addr == 0x1a2b);
    CHECK(t.records[1].op == Op::Write);
    CHECK(t.records[2].addr == 0x40);
    for (std::size_t i = 0; i < t.records.size(); ++i) CHECK(t.records[i].seq == i);
}

TEST_CASE("read_trace rejects out-of-range core ids") {
    std::istringstream in("cores 2\n0 R 10\n5 R 20\n");
    CHECK_THROWS_AS(read_trace(in), ParseError);
}

TEST_CASE("read_trace reports malformed lines with line numbers") {
    std::istringstream in("cores 1\n0 R 10\n0 X 20\n");
    try {
        read_trace(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("read_trace error cases") {
    std::istringstream no_header("0 R 10\n");
    CHECK_THROWS_AS(read_trace(no_header), ParseError);
    std::istringstream empty("cores 2\n# nothing\n");
    CHECK_THROWS_AS(read_trace(empty), EmptyTrace);
    std::istringstream bad_hex("cores 1\n0 R zz\n");
    CHECK_THROWS_AS(read_trace(bad_hex), ParseError);
    std::istringstream trailing("cores 1\n0 R 10 junk\n");
    CHECK_THROWS_AS(read_trace(trailing), ParseError);
    std::istringstream bad_line_size("cores 1 line 48\n0 R 10\n");
    CHECK_THROWS_AS(read_trace(bad_line_size), ParseError);
}

TEST_CASE("trace round-trips through the text format") {
    SyntheticSpec spec;
    spec.core_count = 3;
    spec.records_per_core = 3500;
    spec.private_footprint = 40;
    spec.shared_footprint = 16;
    spec.sharing_fraction = 0.3;
    spec.write_fraction = 0.25;
    spec.interleave = Interleave::UniformRandom;
    spec.seed = 99;
    Trace t = generate(spec);
    REQUIRE(t.records.size() == 10500);

    std::stringstream buf;
    write_trace(t, buf);
    Trace back = read_trace(buf);
    CHECK(back == t);
}

TEST_CASE("split_by_core partitions the stream") {
    SUBCASE("alternating cores") {
        Trace t = make_trace(2, {{0, 'R', 0x00}, {1, 'R', 0x40}, {0, 'W', 0x80}, {1, 'R', 0xc0}});
        auto parts = split_by_core(t);
        REQUIRE(parts.size() == 2);
        CHECK(parts[0].records.size() == 2);
        CHECK(parts[1].records.size() == 2);
        CHECK(parts[0].records[1].addr == 0x80);
    }
    SUBCASE("single core is the identity") {
        Trace t = make_trace(1, {{0, 'R', 0x00}, {0, 'R', 0x40}});
        auto parts = split_by_core(t);
        REQUIRE(parts.size() == 1);
        CHECK(parts[0].records == t.records);
    }
    SUBCASE("per-core counts match an independent scan and merge reconstructs") {
        Trace t = make_random_trace(42, 4, 2000, 64, 0.3);
        auto parts = split_by_core(t);
        std::vector<std::size_t> counts(4, 0);
        for (const auto& r : t.records) counts[r.core]++;
        std::size_t total = 0;
        std::vector<ReferenceRecord> merged;
        for (std::size_t c = 0; c < 4; ++c) {
            CHECK(parts[c].records.size() == counts[c]);
            total += parts[c].records.size();
            for (const auto& r : parts[c].records) {
                CHECK(r.core == c);
                merged.push_back(r);
            }
        }
        CHECK(total == t.records.size());
        std::sort(merged.begin(), merged.end(),
                  [](const auto& a, const auto& b) { return a.seq < b.seq; });
        CHECK(merged == t.records);
    }
}

TEST_CASE("generate honors footprints and fractions") {
    SUBCASE("no shared footprint means disjoint per-core address sets") {
        SyntheticSpec spec;
        spec.core_count = 3;
        spec.records_per_core = 2000;
        spec.private_footprint = 32;
        spec.shared_footprint = 0;
        spec.sharing_fraction = 0.9;  // irrelevant without a shared footprint
        spec.seed = 5;
        Trace t = generate(spec);
        std::vector<std::set<std::uint64_t>> addrs(3);
        for (const auto& r : t.records) addrs[r.core].insert(r.addr);
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                std::vector<std::uint64_t> common;
                std::set_intersection(addrs[a].begin(), addrs[a].end(), addrs[b].begin(),
                                      addrs[b].end(), std::back_inserter(common));
                CHECK(common.empty());
            }
    }
    SUBCASE("write_fraction zero yields no writes") {
        SyntheticSpec spec;
        spec.records_per_core = 500;
        spec.write_fraction = 0.0;
        Trace t = generate(spec);
        for (const auto& r : t.records) CHECK(r.op == Op::Read);
    }
    SUBCASE("observed fractions sit within three binomial deviations") {
        SyntheticSpec spec;
        spec.core_count = 2;
        spec.records_per_core = 50000;
        spec.private_footprint = 64;
        spec.shared_footprint = 64;
        spec.sharing_fraction = 0.5;
        spec.write_fraction = 0.3;
        spec.seed = 11;
        Trace t = generate(spec);
        const double n = static_cast<double>(t.records.size());
        double shared_hits = 0, writes = 0;
        const std::uint64_t shared_top = spec.shared_footprint * spec.line_size;
        for (const auto& r : t.records) {
            if (r.addr < shared_top) shared_hits += 1;
            if (r.op == Op::Write) writes += 1;
        }
        const double sigma_shared = std::sqrt(n * 0.5 * 0.5);
        const double sigma_write = std::sqrt(n * 0.3 * 0.7);
        CHECK(std::abs(shared_hits - 0.5 * n) <= 3 * sigma_shared);
        CHECK(std::abs(writes - 0.3 * n) <= 3 * sigma_write);
    }
}

TEST_CASE("generate is pure in (spec, seed)") {
    SyntheticSpec spec;
    spec.core_count = 4;
    spec.records_per_core = 1000;
    spec.shared_footprint = 8;
    spec.sharing_fraction = 0.4;
    spec.write_fraction = 0.2;
    spec.interleave = Interleave::UniformRandom;
    spec.seed = 1234;
    CHECK(generate(spec) == generate(spec));
    spec.seed = 1235;
    CHECK_FALSE(generate(spec) == generate(SyntheticSpec{spec.core_count, spec.records_per_core,
                                                         spec.private_footprint,
                                                         spec.shared_footprint, 0.4, 0.2,
                                                         Interleave::UniformRandom,
                                                         AccessPattern::UniformRandom, 1234, 64}));
}

TEST_CASE("generate keeps per-core record counts exact") {
    for (Interleave mode : {Interleave::RoundRobin, Interleave::UniformRandom}) {
        SyntheticSpec spec;
        spec.core_count = 3;
        spec.records_per_core = 700;
        spec.interleave = mode;
        spec.seed = 77;
        Trace t = generate(spec);
        std::vector<std::size_t> counts(3, 0);
        for (const auto& r : t.records) counts[r.core]++;
        for (auto c : counts) CHECK(c == 700);
    }
}

TEST_CASE("generate validates its spec") {
    SyntheticSpec spec;
    spec.sharing_fraction = 1.5;
    CHECK_THROWS_AS(generate(spec), InvalidSpec);
    spec.sharing_fraction = 0.0;
    spec.write_fraction = -0.1;
    CHECK_THROWS_AS(generate(spec), InvalidSpec);
    spec.write_fraction = 0.0;
    spec.private_footprint = 0;
    spec.shared_footprint = 0;
    CHECK_THROWS_AS(generate(spec), InvalidSpec);
    spec.core_count = 0;
    CHECK_THROWS_AS(generate(spec), InvalidSpec);
}

TEST_CASE("sequential loop pattern cycles through the footprint") {
    SyntheticSpec spec;
    spec.core_count = 1;
    spec.records_per_core = 8;
    spec.private_footprint = 4;
    spec.access_pattern = AccessPattern::SequentialLoop;
    Trace t = generate(spec);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(t.records[i].addr == (i % 4) * spec.line_size);
}
