#include "fep/estimators.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace fep;
using oracle::Rational;

namespace {

ExclusionConfig random_config(Rng& rng, int n, double p)
{
    ExclusionConfig eta(n);
    for (int x = 0; x < n; ++x)
        eta.set(x, rng.bernoulli(p));
    return eta;
}

double F(double r) { return r > 0.5 ? (2 * r - 1) / r : 0.0; }

}  // namespace

TEST_CASE("empirical pairing")
{
    auto eta = ExclusionConfig::from_string("1101101110");
    CHECK(empirical_pairing(eta, [](double) { return 1.0; }) == doctest::Approx(0.7));
    auto full = ExclusionConfig::from_string("11111111");
    double want = 0.0;
    for (int x = 1; x <= 8; ++x)
        want += x * x / 64.0;
    CHECK(empirical_pairing(full, [](double u) { return u * u; }) == doctest::Approx(want / 8));

    Rng rng(1);
    auto prof = Profile::sinusoid(0.75, 0.15);
    auto phi = [](double u) { return std::sin(2 * M_PI * u); };
    const int n = 1000, reps = 400;
    double s = 0.0, s2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        double v = empirical_pairing(sample_profile(prof, n, rng), phi);
        s += v;
        s2 += v * v;
    }
    double mean = s / reps, se = std::sqrt((s2 / reps - mean * mean) / reps);
    CHECK(std::abs(mean - 0.075) < 4 * se);
}

TEST_CASE("block profile")
{
    auto p = block_profile(ExclusionConfig::from_string("11011"), 1);
    REQUIRE(p.values.size() == 5);
    CHECK(p.values[0] == doctest::Approx(1.0));
    CHECK(p.values[1] == doctest::Approx(2.0 / 3));
    CHECK(p.values[2] == doctest::Approx(2.0 / 3));
    CHECK(p.values[3] == doctest::Approx(2.0 / 3));
    CHECK(p.values[4] == doctest::Approx(1.0));
    for (double v : block_profile(ExclusionConfig::from_string("1111111"), 2).values)
        CHECK(v == 1.0);
    CHECK_THROWS_AS(block_profile(ExclusionConfig::from_string("11011"), 3), std::invalid_argument);

    Rng rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 10 + static_cast<int>(rng.index(60));
        int l = static_cast<int>(rng.index((n - 1) / 2 + 1));
        auto eta = random_config(rng, n, 0.7);
        auto b = block_profile(eta, l).values;
        double mean = 0.0;
        for (int x = 0; x < n; ++x) {
            double direct = 0.0;
            for (int y = -l; y <= l; ++y)
                direct += eta(x + y);
            REQUIRE(b[x] == doctest::Approx(direct / (2 * l + 1)));
            mean += b[x];
        }
        REQUIRE(mean / n == doctest::Approx(static_cast<double>(eta.particles()) / n));
        // rotation by one site
        ExclusionConfig rot(n);
        for (int x = 0; x < n; ++x)
            rot.set(x, eta(x + 1));
        auto br = block_profile(rot, l).values;
        for (int x = 0; x < n; ++x)
            REQUIRE(br[x] == doctest::Approx(b[(x + 1) % n]));
    }
}

TEST_CASE("coarse graining")
{
    // sites at u = 1/4, 2/4, 3/4, 1 -> cells [0,1/2) and [1/2,1)
    auto c = coarse_grain({1.0, 2.0, 3.0, 4.0}, 2);
    CHECK(c == std::vector<double>{(1.0 + 4.0) / 2, (2.0 + 3.0) / 2});
    std::vector<double> flat(12, 0.8);
    for (double v : coarse_grain(flat, 4))
        CHECK(v == doctest::Approx(0.8));
}

TEST_CASE("replacement statistic")
{
    auto full = ExclusionConfig::from_string(std::string(40, '1'));
    for (int k : {1, 5, 10})
        CHECK(replacement_stat(full, 0, k) == 0.0);
    Rng rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 12 + static_cast<int>(rng.index(40));
        int k = 1 + static_cast<int>(rng.index((n - 3) / 2));
        auto eta = random_config(rng, n, 0.5 + 0.5 * rng.uniform());
        int x = static_cast<int>(rng.index(n));
        auto b = oracle::from_string(eta.to_string());
        double hsum = 0.0, occ = 0.0;
        for (int y = -k; y <= k; ++y) {
            hsum += oracle::h(b, x + y);
            occ += oracle::at(b, x + y);
        }
        double want = hsum / (2 * k + 1) - F(occ / (2 * k + 1));
        double got = replacement_stat(eta, x, k);
        REQUIRE(got == doctest::Approx(want));
        REQUIRE(std::abs(got) <= 2.0);
        LocalConfig w;
        for (int y = -k - 1; y <= k + 1; ++y)
            w.push_back(static_cast<std::uint8_t>(eta(x + y)));
        REQUIRE(replacement_stat(w, k) == doctest::Approx(want));
    }
}

TEST_CASE("replacement scan decays with the block size")
{
    Rng rng(4);
    ReplacementSource src;
    src.rho = 0.75;
    auto pts = replacement_scan(src, {8, 16, 32, 64}, 4000, rng);
    REQUIRE(pts.size() == 4);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double diff = pts[i].mean_abs - pts[i + 1].mean_abs;
        CHECK(diff > 2 * std::hypot(pts[i].stderr_, pts[i + 1].stderr_));
    }
    CHECK(pts.back().mean_abs < 0.05);

    ReplacementSource can;
    can.kind = ReplacementSource::Kind::Canonical;
    can.n = 400;
    can.particles = 300;
    for (const auto& p : replacement_scan(can, {4, 16}, 200, rng)) {
        CHECK(p.mean_abs >= 0.0);
        CHECK(p.mean_abs <= 2.0);
    }
    ReplacementSource cond;
    cond.kind = ReplacementSource::Kind::Conditioned;
    cond.ell = 8;
    cond.j = 13;
    for (const auto& p : replacement_scan(cond, {2, 4}, 200, rng))
        CHECK(p.mean_abs <= 2.0);
}

TEST_CASE("window expectations")
{
    auto occ = LocalFunction::occupancy();
    auto h = LocalFunction::h();
    CHECK(window_expectation(0.75, occ) == doctest::Approx(0.75));
    CHECK(window_expectation(0.75, h) == doctest::Approx(2.0 / 3));
    CHECK(window_expectation(1.0, h) == 1.0);
    CHECK(window_expectation(0.4, occ) == 0.5);
    CHECK(window_expectation(0.4, h) == 0.0);
}

TEST_CASE("ensembles gap against exact rationals")
{
    // l=3, j=5: every x with the h support inside the box
    int l = 3, j = 5;
    ConditionedWindow w(l, j, 0.75);
    auto g = ensembles_gap(w, LocalFunction::h(), 0.0);
    Rational rho_l(j, 2 * l + 1), z = 0;
    std::vector<std::pair<oracle::Bits, Rational>> hyper;
    for (std::uint64_t m = 0; m < (1u << (2 * l + 1)); ++m) {
        auto s = oracle::from_mask(2 * l + 1, m);
        bool ok = oracle::count(s) == j;
        for (int i = 0; i + 1 < 2 * l + 1; ++i)
            ok = ok && (s[i] || s[i + 1]);
        if (!ok)
            continue;
        auto p = oracle::window_prob(Rational(3, 4), s);
        z += p;
        hyper.push_back({s, p});
    }
    Rational gc = 0;
    for (std::uint64_t m = 0; m < 8; ++m) {
        auto s = oracle::from_mask(3, m);
        gc += (s[0] * s[1] + s[1] * s[2] - s[0] * s[1] * s[2]) * oracle::window_prob(rho_l, s);
    }
    double worst = 0.0;
    for (int x = -(l - 1); x <= l - 1; ++x) {
        Rational e = 0;
        for (const auto& [s, p] : hyper) {
            int c = x + l;
            e += (s[c - 1] * s[c] + s[c] * s[c + 1] - s[c - 1] * s[c] * s[c + 1]) * p;
        }
        worst = std::max(worst, std::abs(static_cast<double>(e / z - gc)));
    }
    CHECK(g.max_gap == doctest::Approx(worst).epsilon(1e-12));
    CHECK(g.rho_ell == doctest::Approx(5.0 / 7));
}

TEST_CASE("ensembles gap shrinks with the box")
{
    for (int l : {3, 6, 10}) {
        ConditionedWindow full(l, 2 * l + 1, 0.75);
        CHECK(ensembles_gap(full, LocalFunction::occupancy(), 0.25).max_gap == 0.0);
    }
    double prev = 1.0;
    for (int l : {4, 6, 8, 10, 12}) {
        int j = static_cast<int>(std::lround(0.75 * (2 * l + 1)));
        ConditionedWindow w(l, j, 0.75);
        auto g = ensembles_gap(w, LocalFunction::occupancy(), 0.25);
        CHECK(g.max_gap < prev);
        prev = g.max_gap;
        if (l == 12) {
            CHECK(g.max_gap < 0.05);
            CHECK(ensembles_gap(w, LocalFunction::h(), 0.25).max_gap < 0.05);
        }
    }
}

TEST_CASE("regularity knobs")
{
    double d = constructive_delta(0.6);
    double r = 0.55 / 0.45;
    CHECK(d == doctest::Approx(0.1819).epsilon(1e-3));
    CHECK(1 + d < r);
    CHECK((1 + d) * (1 + d / 2) > r);
    CHECK(ell_policy(512, 3.0) == static_cast<int>(std::floor(std::pow(std::log(512.0), 3.0))));
    CHECK(ell_policy(4096, 2.0) == 69);
    CHECK(quantile({3.0, 1.0, 2.0}, 0.5) == 2.0);
    CHECK(quantile({1.0, 2.0}, 0.25) == doctest::Approx(1.25));
}

TEST_CASE("small transience scan")
{
    TransienceSettings s;
    s.n_list = {64, 128};
    s.replicas = 8;
    s.seed = 9;
    s.ell_exponent = 1.0;
    auto a = transience_scan(s);
    REQUIRE(a.blocks.size() == 2);
    for (const auto& b : a.blocks) {
        CHECK(b.rows.size() == 8);
        CHECK(b.not_reached == 0);
        CHECK(b.fraction_regular >= 0.0);
        CHECK(b.fraction_regular <= 1.0);
        CHECK(b.q25_tau <= b.median_tau);
        CHECK(b.median_tau <= b.q75_tau);
        for (const auto& row : b.rows) {
            CHECK(row.reached);
            CHECK(row.tau_macro == doctest::Approx(row.tau_micro / (double(b.n) * b.n)));
        }
    }
    s.threads = 2;
    auto c = transience_scan(s);
    for (std::size_t i = 0; i < a.blocks.size(); ++i)
        for (std::size_t r = 0; r < a.blocks[i].rows.size(); ++r) {
            CHECK(a.blocks[i].rows[r].seed == c.blocks[i].rows[r].seed);
            CHECK(a.blocks[i].rows[r].tau_micro == c.blocks[i].rows[r].tau_micro);
        }
}

TEST_CASE("small hydrodynamic comparison")
{
    HydroSettings s;
    s.n = 512;
    s.t = 0.01;
    s.replicas = 2;
    s.grid_m = 64;
    s.seed = 5;
    auto a = hydro_compare(s);
    CHECK(a.u.size() == 64);
    CHECK(a.seeds.size() == 2);
    CHECK(a.events > 0);
    CHECK(a.l1 < 0.05);
    s.threads = 2;
    CHECK(hydro_compare(s).l1 == a.l1);

    HydroSettings flat = s;
    flat.rho0 = Profile::constant(0.75);
    flat.t = 0.0;
    double noise = hydro_compare(flat).l1;
    flat.t = 0.02;
    CHECK(hydro_compare(flat).l1 < 2 * noise);
    CHECK_THROWS_AS(([&] {
                        auto bad = s;
                        bad.rho0 = Profile::constant(0.5);
                        hydro_compare(bad);
                    }()),
                    std::invalid_argument);
}

TEST_CASE("initial noise scales like replicas^-1/2")
{
    HydroSettings s;
    s.n = 1024;
    s.t = 0.0;
    s.rho0 = Profile::constant(0.75);
    s.grid_m = 128;
    s.seed = 77;
    s.replicas = 4;
    double few = hydro_compare(s).l1;
    s.replicas = 16;
    double many = hydro_compare(s).l1;
    double ratio = few / many;
    CHECK(ratio > 1.0);
    CHECK(ratio < 4.0);
}
