#include "fep/dynamics.hpp"
#include "fep/lattice.hpp"
#include "fep/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace fep;

TEST_CASE("seed derivation")
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t r = 0; r < 100000; ++r)
        seen.insert(derive_seed(42, r));
    CHECK(seen.size() == 100000);
    Rng a = Rng::for_replica(7, 3), b = Rng::for_replica(7, 3);
    for (int i = 0; i < 100; ++i)
        REQUIRE(a.bits() == b.bits());
    CHECK(Rng::for_replica(7, 3).seed() != Rng::for_replica(8, 3).seed());
}

TEST_CASE("uniform index is unbiased on a small range")
{
    Rng rng(11);
    std::vector<long> hits(7, 0);
    for (int i = 0; i < 70000; ++i)
        ++hits[rng.index(7)];
    CHECK(oracle::chi_square_p(hits, std::vector<double>(7, 10000.0)) > 1e-3);
}

TEST_CASE("jump_rate examples")
{
    auto eta = ExclusionConfig::from_string("11011");
    CHECK(jump_rate(eta, 1, 1) == 1);
    CHECK(jump_rate(eta, 0, 1) == 0);
    CHECK(jump_rate(eta, 3, -1) == 1);
    auto blocked = ExclusionConfig::from_string("1010");
    for (int x = 0; x < 4; ++x)
        for (int d : {-1, 1})
            CHECK(jump_rate(blocked, x, d) == 0);
    CHECK_THROWS_AS(jump_rate(eta, 0, 2), std::invalid_argument);
}

TEST_CASE("rates match the exchange rate of the generator")
{
    for (int n = 1; n <= 10; ++n)
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            auto b = oracle::from_mask(n, m);
            ExclusionConfig eta(LocalConfig(b.begin(), b.end()));
            for (int x = 0; x < n; ++x)
                REQUIRE(swap_rate(eta, x) == oracle::swap_rate(b, x));
        }
}

TEST_CASE("current field")
{
    auto full = ExclusionConfig::from_string("111111");
    auto f = current_field(full);
    for (int x = 0; x < 6; ++x) {
        CHECK(f.hval[x] == 1);
        CHECK(f.j[x] == 0);
    }
    // particle at site index 1 jumps right into the hole at 2
    auto g = current_field(ExclusionConfig::from_string("11011"));
    CHECK(g.j[1] == 1);
    CHECK(g.j[2] == -1);
    CHECK(g.j[0] == 0);
}

TEST_CASE("gradient and generator identities, exhaustive N <= 8")
{
    for (int n = 3; n <= 8; ++n)
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            auto b = oracle::from_mask(n, m);
            ExclusionConfig eta(LocalConfig(b.begin(), b.end()));
            auto f = current_field(eta);
            for (int x = 0; x < n; ++x) {
                REQUIRE(f.hval[x] == oracle::h(b, x));
                REQUIRE(f.j[x] == oracle::h(b, x) - oracle::h(b, x + 1));
                // L eta(x) from the generator, summed over all edges
                int gen = 0;
                for (int y = 0; y < n; ++y)
                    gen += oracle::swap_rate(b, y) * (oracle::at(oracle::swapped(b, y), x) - b[x]);
                REQUIRE(gen == f.j[(x + n - 1) % n] - f.j[x]);
            }
        }
}

TEST_CASE("allowed swaps inside the ergodic set are reversible")
{
    for (int n = 3; n <= 10; ++n)
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            auto b = oracle::from_mask(n, m);
            if (!oracle::ergodic(b))
                continue;
            for (int x = 0; x < n; ++x) {
                if (!oracle::swap_rate(b, x))
                    continue;
                auto c = oracle::swapped(b, x);
                if (oracle::ergodic(c))
                    REQUIRE(oracle::swap_rate(c, x) > 0);
                REQUIRE(oracle::ergodic(c));
            }
        }
}

TEST_CASE("step picks each active move uniformly")
{
    auto eta = ExclusionConfig::from_string("11011");
    Rng rng(5);
    std::map<std::pair<int, int>, long> hits;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        FepSimulator sim(eta);
        auto e = sim.step(rng);
        REQUIRE(e.has_value());
        ++hits[{e->site, e->dir}];
        REQUIRE(sim.config().particles() == 4);
    }
    REQUIRE(hits.size() == 2);
    CHECK(hits.count({1, 1}) == 1);
    CHECK(hits.count({3, -1}) == 1);
    double sigma = std::sqrt(draws * 0.25);
    CHECK(std::abs(hits[{1, 1}] - draws / 2.0) < 3 * sigma);
}

TEST_CASE("holding times are exponential with the total rate")
{
    auto eta = ExclusionConfig::from_string("1110111011");
    FepSimulator probe(eta);
    double rate = probe.total_rate();
    Rng rng(9);
    double s = 0.0;
    const int draws = 50000;
    for (int i = 0; i < draws; ++i) {
        FepSimulator sim(eta);
        s += sim.step(rng)->t_micro;
    }
    double mean = s / draws;
    CHECK(std::abs(mean - 1.0 / rate) < 4.0 / rate / std::sqrt(draws));
}

TEST_CASE("frozen configurations")
{
    auto eta = ExclusionConfig::from_string("1010");
    FepSimulator sim(eta);
    Rng rng(1);
    CHECK(sim.frozen());
    CHECK_FALSE(sim.step(rng).has_value());
    auto tr = simulate(eta, 3.0, rng);
    CHECK(tr.final_config == eta);
    CHECK(tr.event_count == 0);
    CHECK(tr.t_micro_end == doctest::Approx(3.0 * 16));
}

TEST_CASE("incremental rate table equals a rebuild after every step")
{
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng.index(40));
        ExclusionConfig eta(n);
        for (int x = 0; x < n; ++x)
            eta.set(x, rng.bernoulli(0.65));
        FepSimulator sim(eta);
        int k = eta.particles();
        for (int s = 0; s < 300; ++s) {
            auto cfg = sim.config();
            REQUIRE(sim.active_moves() == active_moves(cfg));
            REQUIRE(sim.ergodic() == (classify(cfg) == ClassLabel::Ergodic));
            REQUIRE(cfg.particles() == k);
            if (!sim.step(rng))
                break;
        }
    }
}

TEST_CASE("ergodic component is closed and the process stays in it")
{
    Rng rng(77);
    for (int n : {7, 10, 13}) {
        for (int k = n / 2 + 1; k < n; ++k) {
            auto states = enumerate_ergodic(n, k);
            auto eta = states[rng.index(states.size())];
            auto tr = simulate(eta, 2.0, rng);
            CHECK(classify(tr.final_config) == ClassLabel::Ergodic);
            CHECK(tr.final_config.particles() == k);
        }
    }
}

TEST_CASE("recorded events replay to the final configuration")
{
    Rng rng(31);
    auto eta = ExclusionConfig::from_string("1110011101100111011110");
    auto tr = simulate(eta, 0.05, rng, true);
    CHECK(tr.events.size() == tr.event_count);
    auto cur = oracle::from_string(eta.to_string());
    double last = 0.0;
    for (const auto& e : tr.events) {
        REQUIRE(e.t_micro >= last);
        last = e.t_micro;
        int a = e.site;
        int b = ((a + e.dir) % 22 + 22) % 22;
        REQUIRE(cur[a] == 1);
        REQUIRE(cur[b] == 0);
        // the move must be allowed in the state it acts on
        long bond = e.dir == 1 ? a : b;
        REQUIRE(oracle::swap_rate(cur, bond) > 0);
        std::swap(cur[a], cur[b]);
    }
    CHECK(ExclusionConfig(LocalConfig(cur.begin(), cur.end())) == tr.final_config);
    CHECK(tr.t_micro_end == doctest::Approx(0.05 * 22 * 22));
}

TEST_CASE("long-run occupation is uniform on the ergodic component")
{
    // N=7, k=5: 14 states; samples spaced far apart in time
    auto states = enumerate_ergodic(7, 5);
    REQUIRE(states.size() == 14);
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < states.size(); ++i)
        index[states[i].to_string()] = static_cast<int>(i);
    Rng rng(99);
    FepSimulator sim(states[0]);
    std::vector<long> hits(14, 0);
    const int samples = 20000;
    double t = 0.0;
    for (int s = 0; s < samples; ++s) {
        t += 4.0;
        sim.run_until(t, rng);
        ++hits[index.at(sim.config().to_string())];
    }
    CHECK(oracle::chi_square_p(hits, std::vector<double>(14, samples / 14.0)) > 1e-3);
}

TEST_CASE("hitting time of the ergodic set")
{
    Rng rng(3);
    auto erg = ExclusionConfig::from_string("11011");
    auto r0 = hitting_time_ergodic(erg, rng, 100.0);
    CHECK(r0.status == HittingStatus::Reached);
    CHECK(r0.t_micro == 0.0);
    CHECK(hitting_time_ergodic(ExclusionConfig::from_string("1010"), rng, 100.0).status ==
          HittingStatus::NeverReachable);
    CHECK(hitting_time_ergodic(ExclusionConfig::from_string("1100"), rng, 100.0).status ==
          HittingStatus::NeverReachable);
    auto tr = ExclusionConfig::from_string("11100");
    for (int i = 0; i < 10000; ++i) {
        auto r = hitting_time_ergodic(tr, rng, 1e6);
        REQUIRE(r.status == HittingStatus::Reached);
        REQUIRE(r.t_micro > 0.0);
    }
    // a long transient with a tiny horizon
    auto slow = ExclusionConfig::from_string("1111111111111111000000");
    CHECK(hitting_time_ergodic(slow, rng, 1e-9).status == HittingStatus::NotReached);
}
