#include "fep/dynamics.hpp"
#include "fep/zero_range.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace fep;

namespace {

ExclusionConfig from_bits(const oracle::Bits& b) { return ExclusionConfig(LocalConfig(b.begin(), b.end())); }

ZrConfig torus(std::vector<int> p) { return ZrConfig{std::move(p), ZrGeometry::Torus}; }

}  // namespace

TEST_CASE("pile text encoding")
{
    auto z = ZrConfig::from_string("2,0,13");
    CHECK(z.piles == std::vector<int>{2, 0, 13});
    CHECK(z.particles() == 15);
    CHECK(z.to_string() == "2,0,13");
    CHECK_THROWS_AS(ZrConfig::from_string("1,-2"), std::invalid_argument);
    CHECK_THROWS_AS(ZrConfig::from_string("1,x"), std::invalid_argument);
    auto s = ZrConfig::from_string("0,3,1,0", ZrGeometry::Segment);
    CHECK(s.ell() == 2);
    CHECK(s.interior_particles() == 4);
}

TEST_CASE("ex_to_zr examples")
{
    CHECK(ex_to_zr(ExclusionConfig::from_string("011010")).piles == std::vector<int>{2, 1, 0});
    CHECK(ex_to_zr(ExclusionConfig::from_string("1110")).piles == std::vector<int>{3});
    // the first hole is the last site, to the left of site 0
    CHECK(ex_to_zr(ExclusionConfig::from_string("1010")).piles == std::vector<int>{1, 1});
    CHECK_THROWS_AS(ex_to_zr(ExclusionConfig::from_string("111")), std::invalid_argument);
}

TEST_CASE("ex_to_zr agrees with the labelling oracle")
{
    for (int n = 1; n <= 12; ++n)
        for (std::uint64_t m = 0; m + 1 < (std::uint64_t{1} << n); ++m) {
            auto b = oracle::from_mask(n, m);
            auto z = ex_to_zr(from_bits(b));
            REQUIRE(z.piles == oracle::ex_to_zr(b));
            REQUIRE(z.particles() == oracle::count(b));
        }
}

TEST_CASE("classify_zr examples")
{
    CHECK(classify_zr(torus({2, 1, 1})) == ClassLabel::Ergodic);
    CHECK(classify_zr(torus({1, 1, 0})) == ClassLabel::Blocked);
    CHECK(classify_zr(torus({3, 0, 1})) == ClassLabel::TransientGood);
    CHECK(classify_zr(torus({2, 1, 0})) == ClassLabel::TransientBad);
}

TEST_CASE("classification commutes with the map, exhaustive N <= 12")
{
    CHECK(classify(ExclusionConfig::from_string("011010")) == ClassLabel::TransientBad);
    CHECK(classify_zr(ex_to_zr(ExclusionConfig::from_string("011010"))) == ClassLabel::TransientBad);
    for (int n = 1; n <= 12; ++n)
        for (std::uint64_t m = 0; m + 1 < (std::uint64_t{1} << n); ++m) {
            auto eta = from_bits(oracle::from_mask(n, m));
            REQUIRE(classify(eta) == classify_zr(ex_to_zr(eta)));
        }
}

TEST_CASE("active exclusion moves are twice the piles of height two or more")
{
    for (int n = 1; n <= 12; ++n)
        for (std::uint64_t m = 0; m + 1 < (std::uint64_t{1} << n); ++m) {
            auto eta = from_bits(oracle::from_mask(n, m));
            auto z = ex_to_zr(eta);
            long high = 0;
            for (int v : z.piles)
                high += v >= 2;
            REQUIRE(static_cast<long>(active_moves(eta).size()) == 2 * high);
        }
}

TEST_CASE("zr_step")
{
    Rng rng(4);
    auto frozen = torus({1, 1});
    CHECK_FALSE(zr_step(frozen, rng).has_value());
    auto single = torus({3});
    for (int i = 0; i < 10; ++i) {
        auto dt = zr_step(single, rng);
        REQUIRE(dt.has_value());
        CHECK(single.piles == std::vector<int>{3});
    }
    auto w = torus({4, 0, 0, 1, 2, 0});
    for (int i = 0; i < 1000; ++i) {
        if (!zr_step(w, rng))
            break;
        REQUIRE(w.particles() == 7);
        for (int v : w.piles)
            REQUIRE(v >= 0);
    }
}

TEST_CASE("exclusion dynamics and induced pile moves commute")
{
    Rng rng(13);
    for (int trial = 0; trial < 400; ++trial) {
        int n = 3 + static_cast<int>(rng.index(8));
        ExclusionConfig eta(n);
        for (int x = 0; x < n; ++x)
            eta.set(x, rng.bernoulli(0.6));
        if (eta.particles() == n)
            continue;
        ExZrTracker tracker(eta);
        FepSimulator sim(eta);
        bool ok = true;
        sim.run_until(0.5 * n * n, rng, [&](const Event& e) {
            ok = ok && tracker.apply(e);
            ok = ok && tracker.mapped() == tracker.replayed();
        });
        REQUIRE(ok);
        auto now = ex_to_zr(sim.config());
        // same multiset of piles up to the rotation of labels
        auto a = now.piles, b = tracker.replayed().piles;
        bool rotated = false;
        for (std::size_t r = 0; r < a.size() && !rotated; ++r) {
            std::rotate(b.begin(), b.begin() + 1, b.end());
            rotated = a == b;
        }
        REQUIRE(rotated);
    }
}

TEST_CASE("window caps and bounds")
{
    CHECK(window_cap(4, 0.5) == 6);
    CHECK(window_cap(10, 0.25) == 12);
    CHECK(window_z_bound(4, 0.5) == doctest::Approx(1.25 * 1.5 * 10));
}

TEST_CASE("truncated windows match the per-window oracle")
{
    Rng rng(8);
    for (int trial = 0; trial < 300; ++trial) {
        int k = 3 + static_cast<int>(rng.index(20));
        std::vector<int> w(k);
        for (int& v : w)
            v = static_cast<int>(rng.index(4));
        int l = 1 + static_cast<int>(rng.index(k - 1));
        int cap = 1 + static_cast<int>(rng.index(2 * l));
        auto omega = torus(w);
        for (int x = 0; x < k; ++x) {
            auto win = truncate_window(right_window(omega, x, l), cap);
            REQUIRE(win.geometry == ZrGeometry::Segment);
            REQUIRE(win.piles == oracle::truncated_window(w, x, l, cap));
        }
    }
}

TEST_CASE("is_regular examples")
{
    CHECK(is_regular(torus(std::vector<int>(10, 2)), 4, 0.5));
    auto gap = torus({3, 3, 0, 0, 0, 0, 3, 3, 3, 3});
    CHECK_FALSE(is_regular(gap, 4, 0.5));
    CHECK_FALSE(is_regular(torus(std::vector<int>(10, 1)), 4, 0.5));
    CHECK_THROWS_AS(is_regular(torus({2, 2, 2}), 3, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(is_regular(torus({2, 2, 2}), 0, 0.5), std::invalid_argument);
}

TEST_CASE("in_A membership")
{
    // l=4, delta=0.5: six particles, Z <= 18.75
    CHECK(in_A(ZrConfig::from_string("0,2,2,1,1,0", ZrGeometry::Segment), 0.5));
    CHECK_FALSE(in_A(ZrConfig::from_string("0,0,0,3,3,0", ZrGeometry::Segment), 0.5));
    CHECK_FALSE(in_A(ZrConfig::from_string("0,2,2,1,0,0", ZrGeometry::Segment), 0.5));
    CHECK_FALSE(in_A(ZrConfig::from_string("1,2,2,1,1,0", ZrGeometry::Segment), 0.5));
    CHECK_THROWS_AS(in_A(torus({1, 2}), 0.5), std::invalid_argument);
}

TEST_CASE("is_regular agrees with the explicit scan")
{
    Rng rng(21);
    for (int trial = 0; trial < 2000; ++trial) {
        int k = 4 + static_cast<int>(rng.index(30));
        std::vector<int> w(k);
        for (int& v : w)
            v = 1 + static_cast<int>(rng.index(3)) - (rng.bernoulli(0.05) ? 1 : 0);
        int l = 1 + static_cast<int>(rng.index(std::min(k - 1, 8)));
        double delta = 0.1 + 0.8 * rng.uniform();
        REQUIRE(is_regular(torus(w), l, delta) == oracle::regular(w, l, delta));
    }
}
