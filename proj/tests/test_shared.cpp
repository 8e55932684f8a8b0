#include <doctest.h>

#include <cmath>
#include <random>

#include "cachemodel/missrate.hpp"
#include "cachemodel/profiler.hpp"
#include "cachemodel/shared.hpp"
#include "helpers.hpp"

using namespace cachemodel;
using namespace cachemodel::testing;

namespace {

SharedCoreInputs spike(std::size_t cap, std::size_t r, double count, double aad_total,
                       std::uint64_t base_addr = 0) {
    SharedCoreInputs c{Histogram1D(cap), {}};
    c.l2_rdh.bin(r) = count;
    // spread the address mass over a few lines starting at base_addr
    const auto lines = static_cast<std::uint64_t>(aad_total);
    for (std::uint64_t i = 0; i < lines; ++i) c.l2_aad.add(base_addr + i * 64, 1.0);
    return c;
}

}  // namespace

TEST_CASE("stretch_factor is one plus the access ratio") {
    SUBCASE("silent other cores") {
        std::vector<SharedCoreInputs> cores{spike(16, 3, 5, 10), SharedCoreInputs{}};
        CHECK(stretch_factor(0, cores) == 1.0);
    }
    SUBCASE("ratio 5/4 stretches distance 4 to 9") {
        std::vector<SharedCoreInputs> cores{spike(16, 4, 1, 4), spike(16, 1, 1, 5, 0x1000)};
        const double f = stretch_factor(0, cores);
        CHECK(f == doctest::Approx(1.0 + 5.0 / 4.0).epsilon(1e-12));
        SharedModelInputs in{cores, geom(4096, 16), 64};
        auto ins = insertion_effect(in);
        CHECK(ins.contributions[0].at(9) == 1.0);  // 4 * 2.25 lands exactly on 9
    }
    SUBCASE("four cores aggregate into a virtual core") {
        std::vector<SharedCoreInputs> cores{spike(16, 1, 1, 10), spike(16, 1, 1, 20, 0x1000),
                                            spike(16, 1, 1, 30, 0x2000),
                                            spike(16, 1, 1, 40, 0x3000)};
        CHECK(stretch_factor(0, cores) == doctest::Approx(10.0).epsilon(1e-12));
    }
    SUBCASE("silent target throws") {
        std::vector<SharedCoreInputs> cores{SharedCoreInputs{}, spike(16, 1, 1, 5)};
        CHECK_THROWS_AS(stretch_factor(0, cores), ZeroAccess);
    }
}

TEST_CASE("insertion_effect maps distances onto the merged axis") {
    const CacheGeometry l2 = geom(4096, 16);

    SUBCASE("a single active core passes through unchanged") {
        SharedCoreInputs only = spike(16, 3, 7, 5);
        only.l2_rdh.set_cold(2);
        SharedModelInputs in{{only, SharedCoreInputs{}}, l2, 64};
        auto ins = insertion_effect(in);
        for (std::size_t b = 0; b <= 64; ++b)
            CHECK(ins.rdh_prime.at(b) == (b == 3 ? 7.0 : 0.0));
        CHECK(ins.rdh_prime.cold() == 2.0);
        CHECK(ins.stretch[0] == 1.0);
        CHECK(ins.stretch[1] == 0.0);  // silent marker
    }
    SUBCASE("equal access totals double a spike's distance") {
        SharedModelInputs in{{spike(16, 3, 5, 10), spike(16, 3, 5, 10, 0x1000)}, l2, 64};
        auto ins = insertion_effect(in);
        CHECK(ins.rdh_prime.at(6) == doctest::Approx(10.0).epsilon(1e-12));
        CHECK(ins.rdh_prime.finite_total() == doctest::Approx(10.0).epsilon(1e-12));
    }
    SUBCASE("fractional stretches interpolate between neighbouring bins") {
        // totals 10 and 12: factor 2.2 for the first core; 2 * 2.2 = 4.4
        SharedModelInputs in{{spike(16, 2, 5, 10), spike(16, 0, 0, 12, 0x1000)}, l2, 64};
        auto ins = insertion_effect(in);
        CHECK(ins.contributions[0].at(4) == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(ins.contributions[0].at(5) == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("mass beyond the merged cap clamps into the top bin") {
        SharedModelInputs in{{spike(16, 10, 4, 1), spike(16, 0, 0, 99, 0x1000)}, l2, 32};
        auto ins = insertion_effect(in);
        CHECK(ins.rdh_prime.at(32) == 4.0);
    }
    SUBCASE("mass is conserved") {
        std::mt19937_64 rng(17);
        std::vector<SharedCoreInputs> cores;
        double expect = 0;
        for (int c = 0; c < 3; ++c) {
            SharedCoreInputs ci{Histogram1D(64), {}};
            for (int k = 0; k < 20; ++k) ci.l2_rdh.bin(rng() % 65) += double(rng() % 10);
            ci.l2_rdh.set_cold(double(rng() % 5));
            for (int k = 0; k < 10; ++k) ci.l2_aad.add((rng() % 40) * 64, double(1 + rng() % 6));
            expect += ci.l2_rdh.total();
            cores.push_back(ci);
        }
        SharedModelInputs in{cores, l2, 512};
        auto ins = insertion_effect(in);
        CHECK(ins.rdh_prime.total() == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("p_same endpoint-sharing probability") {
    const CacheGeometry l2 = geom(128, 1);  // 2 sets, 64B lines

    SUBCASE("disjoint address sets") {
        std::vector<SharedCoreInputs> cores{spike(16, 1, 1, 4, 0), spike(16, 1, 1, 4, 0x1000)};
        CHECK(p_same(0, cores, l2) == 0.0);
    }
    SUBCASE("both cores hammer one line") {
        SharedCoreInputs a{Histogram1D(16), {}}, b{Histogram1D(16), {}};
        a.l2_aad.add(0x0, 7);
        b.l2_aad.add(0x0, 3);
        std::vector<SharedCoreInputs> cores{a, b};
        CHECK(p_same(0, cores, l2) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p_same(1, cores, l2) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("endpoint share times same-set share, summed over shared lines") {
        // target: lines 0 (set0) 6x, 1 (set1) 2x, 2 (set0) 2x
        // others: lines 0 3x, 3 (set1) 9x
        SharedCoreInputs a{Histogram1D(16), {}}, b{Histogram1D(16), {}};
        a.l2_aad.add(0 * 64, 6);
        a.l2_aad.add(1 * 64, 2);
        a.l2_aad.add(2 * 64, 2);
        b.l2_aad.add(0 * 64, 3);
        b.l2_aad.add(3 * 64, 9);
        std::vector<SharedCoreInputs> cores{a, b};
        CHECK(p_same(0, cores, l2) == doctest::Approx((6.0 / 10.0) * (3.0 / 3.0)).epsilon(1e-12));
        CHECK(p_same(1, cores, l2) == doctest::Approx((3.0 / 12.0) * (6.0 / 8.0)).epsilon(1e-12));
    }
}

TEST_CASE("split_effect") {
    SUBCASE("zero sharing probability is the identity") {
        SharedModelInputs in{{spike(16, 4, 8, 4), spike(16, 2, 6, 4, 0x1000)}, geom(4096, 16), 64};
        auto ins = insertion_effect(in);
        Histogram1D out = split_effect(ins, {0.0, 0.0}, in);
        CHECK(out == ins.rdh_prime);
    }
    SUBCASE("a bar splitting N epochs feeds every lower bar N/rd") {
        // one core, constructed insertion state: 8 epochs at merged bin 4,
        // sharing probability chosen so half of them split
        SharedModelInputs in{{spike(16, 2, 8, 10), spike(16, 0, 0, 10, 0x1000)},
                             geom(4096, 16), 16};
        InsertionResult ins;
        ins.rdh_prime = Histogram1D(16);
        ins.rdh_prime.bin(4) = 8;
        ins.contributions = {Histogram1D(16), Histogram1D(16)};
        ins.contributions[0].bin(4) = 8;
        ins.stretch = {2.0, 0.0};
        const double p = 1.0 - std::sqrt(0.5);  // 1 - (1-p)^2 = 0.5 at exponent 4*(1-1/2)=2
        Histogram1D out = split_effect(ins, {p, 0.0}, in);
        CHECK(out.at(4) == doctest::Approx(4.0).epsilon(1e-9));
        for (std::size_t b = 0; b < 4; ++b) CHECK(out.at(b) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(out.finite_total() == doctest::Approx(8.0).epsilon(1e-9));
    }
    SUBCASE("raising a core's sharing probability only moves mass downward") {
        SharedModelInputs in{{spike(64, 20, 10, 8), spike(64, 12, 10, 8, 0x1000)},
                             geom(4096, 16), 256};
        auto ins = insertion_effect(in);
        Histogram1D lo = split_effect(ins, {0.1, 0.0}, in);
        Histogram1D hi = split_effect(ins, {0.4, 0.0}, in);
        double lo_prefix = 0, hi_prefix = 0;
        for (std::size_t b = 0; b <= 256; ++b) {
            lo_prefix += lo.at(b);
            hi_prefix += hi.at(b);
            CHECK(hi_prefix >= lo_prefix - 1e-9);
        }
        CHECK(hi.total() == doctest::Approx(lo.total()).epsilon(1e-9));
    }
}

TEST_CASE("build_mrdh composition") {
    const CacheGeometry l2 = geom(4096, 16);

    SUBCASE("one active core passes through") {
        SharedCoreInputs only = spike(16, 5, 3, 4);
        only.l2_rdh.set_cold(1);
        auto res = build_mrdh({only, SharedCoreInputs{}}, l2, 64);
        for (std::size_t b = 0; b <= 16; ++b) CHECK(res.mrdh.at(b) == only.l2_rdh.at(b));
        CHECK(res.mrdh.cold() == 1.0);
    }
    SUBCASE("core order does not matter") {
        std::mt19937_64 rng(23);
        std::vector<SharedCoreInputs> cores;
        for (int c = 0; c < 3; ++c) {
            SharedCoreInputs ci{Histogram1D(32), {}};
            for (int k = 0; k < 12; ++k) ci.l2_rdh.bin(rng() % 33) += double(1 + rng() % 9);
            for (int k = 0; k < 8; ++k) ci.l2_aad.add((rng() % 16) * 64, double(1 + rng() % 5));
            cores.push_back(ci);
        }
        auto base = build_mrdh(cores, l2, 256);
        std::vector<SharedCoreInputs> perm{cores[2], cores[0], cores[1]};
        auto permuted = build_mrdh(perm, l2, 256);
        CHECK(base.mrdh.cold() == permuted.mrdh.cold());
        for (std::size_t b = 0; b <= 256; ++b)
            CHECK(base.mrdh.at(b) == doctest::Approx(permuted.mrdh.at(b)).epsilon(1e-12));
    }
    SUBCASE("disjoint footprints reduce to the insertion-only histogram") {
        auto a = spike(16, 4, 8, 6, 0);
        auto b = spike(16, 2, 6, 6, 0x4000);
        auto res = build_mrdh({a, b}, l2, 64);
        CHECK(res.diagnostics.p_same[0] == 0.0);
        CHECK(res.diagnostics.p_same[1] == 0.0);
        CHECK(res.mrdh == res.diagnostics.rdh_prime);
    }
    SUBCASE("total mass is conserved") {
        std::mt19937_64 rng(29);
        for (int it = 0; it < 5; ++it) {
            std::vector<SharedCoreInputs> cores;
            double expect = 0;
            for (int c = 0; c < 2; ++c) {
                SharedCoreInputs ci{Histogram1D(64), {}};
                for (int k = 0; k < 30; ++k) ci.l2_rdh.bin(rng() % 65) += double(rng() % 7);
                ci.l2_rdh.set_cold(double(rng() % 10));
                for (int k = 0; k < 12; ++k) ci.l2_aad.add((rng() % 20) * 64, double(1 + rng() % 9));
                expect += ci.l2_rdh.total();
                cores.push_back(ci);
            }
            auto res = build_mrdh(cores, l2, 512);
            CHECK(res.mrdh.total() == doctest::Approx(expect).epsilon(1e-6));
        }
    }
    SUBCASE("all cores silent throws") {
        CHECK_THROWS_AS(build_mrdh({SharedCoreInputs{}, SharedCoreInputs{}}, l2, 64),
                        AllCoresSilent);
    }
}

TEST_CASE("independent streams: merged miss rate tracks the merged-trace profile") {
    // Two disjoint uniform streams stand in for the shared-cache reference
    // streams directly (the raw distances and address mix are the model
    // inputs; no upstream filtering involved).
    SyntheticSpec spec;
    spec.core_count = 2;
    spec.records_per_core = 20000;
    spec.private_footprint = 96;
    spec.shared_footprint = 0;
    spec.seed = 61;
    Trace merged = generate(spec);
    const CacheGeometry probe = geom(64, 1);  // line-sized; only distances matter
    const std::size_t mcap = 2048;

    std::vector<SharedCoreInputs> cores;
    for (const auto& stream : split_by_core(merged)) {
        CoreProfile p = profile_core(stream, probe, 1024);
        cores.emplace_back(p.l1_rdh, p.l1_aad);
    }
    const CacheGeometry l2 = geom(128 * 64, 2);  // 128 lines, under the combined footprint
    auto res = build_mrdh(cores, l2, mcap);
    CHECK(res.mrdh == res.diagnostics.rdh_prime);  // no sharing anywhere

    Histogram1D truth = profile_core(as_single_stream(merged), probe, mcap).l1_rdh;
    const double model_rate = miss_rate(res.mrdh, l2).miss_rate;
    const double truth_rate = miss_rate(truth, l2).miss_rate;
    CHECK(model_rate == doctest::Approx(truth_rate).epsilon(0.10));
}

TEST_CASE("shared hot set: split-aware estimate beats the insertion-only one") {
    SyntheticSpec spec;
    spec.core_count = 2;
    spec.records_per_core = 20000;
    spec.private_footprint = 160;
    spec.shared_footprint = 48;
    spec.sharing_fraction = 0.55;
    spec.seed = 67;
    Trace merged = generate(spec);
    const CacheGeometry probe = geom(64, 1);
    const std::size_t mcap = 4096;

    std::vector<SharedCoreInputs> cores;
    for (const auto& stream : split_by_core(merged)) {
        CoreProfile p = profile_core(stream, probe, 1024);
        cores.emplace_back(p.l1_rdh, p.l1_aad);
    }
    const CacheGeometry l2 = geom(96 * 64, 96);  // capacity between the true and
                                                 // insertion-stretched shared distances
    auto res = build_mrdh(cores, l2, mcap);
    Histogram1D truth = profile_core(as_single_stream(merged), probe, mcap).l1_rdh;

    const double truth_rate = miss_rate(truth, l2).miss_rate;
    const double full_err = std::abs(miss_rate(res.mrdh, l2).miss_rate - truth_rate);
    const double ins_err =
        std::abs(miss_rate(res.diagnostics.rdh_prime, l2).miss_rate - truth_rate);
    CHECK(full_err < ins_err);
}
