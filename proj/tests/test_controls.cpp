#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <map>
#include <random>
#include <vector>

#include "atlas/controls.hpp"

using namespace atlas;
using namespace atlas::controls;
using attributes::AttributeVector;
using corpus::SummaryType;

namespace {

AttributeVector vec(double l, double r, double bg, double c) {
    AttributeVector v;
    v.length_chars = static_cast<std::size_t>(l);
    v.fkgl = r;
    v.bg_pct = bg;
    v.cwe = c;
    return v;
}

// pools whose L runs 0..n-1 and other attributes vary too
std::vector<AttributeVector> ramp_pool(int n) {
    std::vector<AttributeVector> pool;
    for (int i = 0; i < n; ++i)
        pool.push_back(vec(i, i * 0.5, i * 100.0 / (n - 1), i * 0.1));
    return pool;
}

}  // namespace

TEST_CASE("fit_bins observes extrema") {
    auto pool = ramp_pool(101);  // L in {0..100}
    auto scheme = fit_bins(pool);
    CHECK(scheme.l.min == 0.0);
    CHECK(scheme.l.max == 100.0);
    CHECK(scheme.l.n_bins == 10);

    CHECK_THROWS_AS(fit_bins({vec(1, 1, 1, 1)}), ValidationError);
    // constant FKGL -> degenerate attribute named in the error
    CHECK_THROWS_WITH(fit_bins({vec(0, 5, 0, 0), vec(10, 5, 50, 1)}),
                      Catch::Matchers::ContainsSubstring("R"));
}

TEST_CASE("bin_of arithmetic, top edge, clamping") {
    auto scheme = fit_bins(ramp_pool(101));
    CHECK(bin_of(25.0, Attribute::L, scheme) == 2);
    CHECK(bin_of(100.0, Attribute::L, scheme) == 9);  // max -> top bin
    CHECK(bin_of(0.0, Attribute::L, scheme) == 0);    // min -> bottom bin
    CHECK(bin_of(-5.0, Attribute::L, scheme) == 0);   // clamp below
    CHECK(bin_of(250.0, Attribute::L, scheme) == 9);  // clamp above
}

TEST_CASE("bin_of is monotone and in range on random pools") {
    std::mt19937 rng(123);
    auto u = [&rng](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng()) / 4294967295.0);
    };
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<AttributeVector> pool;
        int n = 2 + static_cast<int>(rng() % 40);
        for (int i = 0; i < n; ++i)
            pool.push_back(vec(u(0, 5000), u(-5, 30), u(0, 100), u(0, 12)));
        BinningScheme scheme;
        try {
            scheme = fit_bins(pool);
        } catch (const DegenerateDataError&) {
            continue;  // astronomically unlikely, but valid
        }
        for (Attribute a : kAttributes) {
            double lo = scheme.range(a).min, hi = scheme.range(a).max;
            CHECK(bin_of(lo, a, scheme) == 0);
            CHECK(bin_of(hi, a, scheme) == 9);
            int prev = 0;
            for (int s = 0; s <= 50; ++s) {
                double x = lo + (hi - lo) * s / 50.0;
                int b = bin_of(x, a, scheme);
                CHECK(b >= 0);
                CHECK(b <= 9);
                CHECK(b >= prev);
                prev = b;
            }
        }
    }
}

TEST_CASE("control token rendering") {
    auto pool = ramp_pool(101);
    auto scheme = fit_bins(pool);
    auto at_min = control_tokens(pool.front(), scheme);
    CHECK(at_min.rendered == "<len_0> <rdb_0> <bg_0> <cwe_0> ");
    auto at_max = control_tokens(pool.back(), scheme);
    CHECK(at_max.rendered == "<len_9> <rdb_9> <bg_9> <cwe_9> ");

    // mixed: L at min, others at max
    AttributeVector mixed = pool.back();
    mixed.length_chars = 0;
    CHECK(control_tokens(mixed, scheme).rendered ==
          "<len_0> <rdb_9> <bg_9> <cwe_9> ");
}

TEST_CASE("rendered prefix re-parses to the same bin record") {
    std::mt19937 rng(99);
    for (int i = 0; i < 200; ++i) {
        BinRecord rec;
        rec.l = static_cast<int>(rng() % 10);
        rec.r = static_cast<int>(rng() % 10);
        rec.bg = static_cast<int>(rng() % 10);
        rec.cwe = static_cast<int>(rng() % 10);
        auto parsed = parse_prefix(render_prefix(rec) + "Document body text");
        REQUIRE(parsed.has_value());
        CHECK(*parsed == rec);
    }
    CHECK_FALSE(parse_prefix("no prefix here").has_value());
    CHECK_FALSE(parse_prefix("<len_3> <rdb_11> <bg_0> <cwe_0> x").has_value());
}

TEST_CASE("mode_bins hand cases") {
    auto scheme = fit_bins(ramp_pool(101));  // L bins of width 10
    VectorsByType by_type;
    // L values 25, 25, 35 -> bins {2,2,3} -> mode 2
    by_type[SummaryType::ABSTRACT] = {vec(25, 10, 50, 1), vec(25, 20, 60, 2),
                                      vec(35, 30, 70, 3)};
    auto modes = mode_bins(by_type, scheme);
    CHECK(modes.at(SummaryType::ABSTRACT).bins.l == 2);

    // tie {2,2,3,3} -> lower index 2
    by_type[SummaryType::ABSTRACT].push_back(vec(35, 0.5, 1, 0.2));
    modes = mode_bins(by_type, scheme);
    CHECK(modes.at(SummaryType::ABSTRACT).bins.l == 2);

    // single observation: its own bins
    VectorsByType single;
    single[SummaryType::PLOS_LAY] = {vec(95, 40, 90, 9)};
    auto m = mode_bins(single, fit_bins(ramp_pool(101)));
    CHECK(m.at(SummaryType::PLOS_LAY).bins.l == 9);

    VectorsByType empty_type;
    empty_type[SummaryType::ELIFE_LAY] = {};
    CHECK_THROWS_AS(mode_bins(empty_type, scheme), ValidationError);
}

TEST_CASE("mode_bins equals brute-force histogram argmax") {
    std::mt19937 rng(7);
    auto scheme = fit_bins(ramp_pool(101));
    for (int trial = 0; trial < 1000; ++trial) {
        VectorsByType by_type;
        int n = 1 + static_cast<int>(rng() % 30);
        for (int i = 0; i < n; ++i)
            by_type[SummaryType::ABSTRACT].push_back(
                vec(rng() % 101, (rng() % 101) * 0.5,
                    (rng() % 101) * 1.0, (rng() % 101) * 0.1));
        auto modes = mode_bins(by_type, scheme);
        for (Attribute a : kAttributes) {
            std::array<int, 10> hist{};
            for (const auto& v : by_type[SummaryType::ABSTRACT])
                ++hist[static_cast<std::size_t>(
                    bin_of(attribute_value(v, a), a, scheme))];
            int arg = 0;
            for (int b = 1; b < 10; ++b)
                if (hist[static_cast<std::size_t>(b)] >
                    hist[static_cast<std::size_t>(arg)])
                    arg = b;
            CHECK(modes.at(SummaryType::ABSTRACT).bins.get(a) == arg);
        }
    }
}

TEST_CASE("mean policy bins the per-type mean value") {
    auto scheme = fit_bins(ramp_pool(101));
    VectorsByType by_type;
    by_type[SummaryType::ABSTRACT] = {vec(0, 0, 0, 0), vec(90, 45, 90, 9)};
    auto means = mean_bins(by_type, scheme);
    CHECK(means.at(SummaryType::ABSTRACT).bins.l == 4);  // mean L = 45 -> bin 4
}

TEST_CASE("extreme_bins picks lowest/highest populated bin") {
    auto scheme = fit_bins(ramp_pool(101));
    VectorsByType by_type;
    auto& pool = by_type[SummaryType::ABSTRACT];
    // R values: 5 obs in bin 0, 150 in bin 2, 200 in bin 7
    auto add = [&](int count, double r_value) {
        for (int i = 0; i < count; ++i) pool.push_back(vec(50, r_value, 50, 5));
    };
    add(5, 1.0);    // bin 0 (R range is 0..50 from ramp_pool)
    add(150, 12.0); // bin 2
    add(200, 36.0); // bin 7
    auto lay = extreme_bins(by_type, scheme, Direction::LAY,
                            SummaryType::ABSTRACT, 100);
    auto tech = extreme_bins(by_type, scheme, Direction::TECHNICAL,
                             SummaryType::ABSTRACT, 100);
    CHECK(lay.bins.r == 2);
    CHECK(tech.bins.r == 7);
    CHECK(lay.bins.r <= tech.bins.r);
    // L is pinned to the type's mode bin in both directions
    CHECK(lay.bins.l == tech.bins.l);

    CHECK_THROWS_AS(extreme_bins(by_type, scheme, Direction::LAY,
                                 SummaryType::ABSTRACT, 100000),
                    DegenerateDataError);
}

TEST_CASE("scheme persistence round trip") {
    auto scheme = fit_bins(ramp_pool(101));
    std::string path = "test_scheme_tmp.json";
    save_scheme(path, scheme);
    auto loaded = load_scheme(path);
    for (Attribute a : kAttributes) {
        CHECK(loaded.range(a).min == scheme.range(a).min);
        CHECK(loaded.range(a).max == scheme.range(a).max);
        CHECK(loaded.range(a).n_bins == scheme.range(a).n_bins);
    }
    std::remove(path.c_str());
}
