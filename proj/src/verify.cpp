#include "fep/verify.hpp"

#include "fep/dynamics.hpp"
#include "fep/lattice.hpp"
#include "fep/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fep {

namespace {

ExclusionConfig from_mask(int n, std::uint32_t mask)
{
    ExclusionConfig c(n);
    for (int x = 0; x < n; ++x)
        c.set(x, (mask >> x) & 1u);
    return c;
}

bool hole_isolated(int n, std::uint32_t mask)
{
    for (int x = 0; x < n; ++x)
        if (!((mask >> x) & 1u) && !((mask >> ((x + 1) % n)) & 1u))
            return false;
    return true;
}

void fail(SuiteResult& r, const std::string& what)
{
    if (r.passed)
        r.detail = what;
    r.passed = false;
}

}  // namespace

SuiteResult verify_counting(int n_max)
{
    SuiteResult r;
    r.name = "counting";
    for (int n = 1; n <= n_max; ++n) {
        std::vector<long> tally(n + 1, 0);
        for (std::uint32_t m = 0; m < (1u << n); ++m)
            if (hole_isolated(n, m))
                ++tally[std::popcount(m)];
        for (int k = 1; k <= n - 1; ++k) {
            ++r.checks;
            if (BigInt(tally[k]) != count_hole_isolated(n, k))
                fail(r, "N=" + std::to_string(n) + " k=" + std::to_string(k));
            long streamed = 0;
            HoleIsolatedEnumerator e(n, k);
            while (e.next())
                ++streamed;
            if (streamed != tally[k])
                fail(r, "enumerator N=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    }
    return r;
}

SuiteResult verify_window_counting(int n_max, int l_max)
{
    SuiteResult r;
    r.name = "window-counting";
    for (int n = 1; n <= n_max; ++n)
        for (int k = n / 2 + 1; k <= n; ++k) {
            auto states = enumerate_ergodic(n, k);
            for (int l = 1; l <= std::min(l_max, n); ++l) {
                std::map<LocalConfig, long> tally;
                for (const auto& s : states) {
                    LocalConfig w(l);
                    for (int i = 0; i < l; ++i)
                        w[i] = s[i];
                    ++tally[w];
                }
                for (std::uint32_t m = 0; m < (1u << l); ++m) {
                    LocalConfig w(l);
                    bool ok = true;
                    for (int i = 0; i < l; ++i) {
                        w[i] = (m >> i) & 1u;
                        if (i && !w[i] && !w[i - 1])
                            ok = false;
                    }
                    if (!ok)
                        continue;
                    ++r.checks;
                    auto it = tally.find(w);
                    long seen = it == tally.end() ? 0 : it->second;
                    if (BigInt(seen) != count_with_window(n, k, w))
                        fail(r, "N=" + std::to_string(n) + " k=" + std::to_string(k) + " l=" + std::to_string(l));
                }
            }
        }
    return r;
}

SuiteResult verify_irreducibility(int n_max)
{
    SuiteResult r;
    r.name = "irreducibility";
    for (int n = 1; n <= n_max; ++n)
        for (int k = n / 2 + 1; k <= n; ++k) {
            ++r.checks;
            if (!adjacency_graph(n, k).connected())
                fail(r, "N=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    return r;
}

SuiteResult verify_gradient(int n_max)
{
    SuiteResult r;
    r.name = "gradient";
    for (int n = 3; n <= n_max; ++n)
        for (std::uint32_t m = 0; m < (1u << n); ++m) {
            auto eta = from_mask(n, m);
            auto f = current_field(eta);
            std::vector<int> gen(n, 0);
            for (const auto& mv : active_moves(eta)) {
                gen[mv.site] -= 1;
                gen[eta.wrap(static_cast<long>(mv.site) + mv.dir)] += 1;
            }
            for (int x = 0; x < n; ++x) {
                r.checks += 2;
                if (f.j[x] != f.hval[x] - f.hval[(x + 1) % n])
                    fail(r, "gradient at " + eta.to_string());
                if (gen[x] != f.j[(x + n - 1) % n] - f.j[x])
                    fail(r, "generator at " + eta.to_string());
            }
        }
    return r;
}

SuiteResult verify_balance(int n_max)
{
    SuiteResult r;
    r.name = "balance";
    auto check = [&](int n, const std::vector<double>& p, const std::string& label) {
        std::size_t states = std::size_t{1} << n;
        std::vector<double> net(states, 0.0);
        for (std::uint32_t m = 0; m < states; ++m) {
            if (p[m] == 0.0)
                continue;
            auto eta = from_mask(n, m);
            for (const auto& mv : active_moves(eta)) {
                int to = eta.wrap(static_cast<long>(mv.site) + mv.dir);
                std::uint32_t m2 = m ^ (1u << mv.site) ^ (1u << to);
                net[m2] += p[m];
                net[m] -= p[m];
            }
        }
        for (std::size_t m = 0; m < states; ++m) {
            ++r.checks;
            r.max_error = std::max(r.max_error, std::abs(net[m]));
            if (std::abs(net[m]) > 1e-12)
                fail(r, label);
        }
    };
    for (int n = 2; n <= n_max; ++n) {
        std::size_t states = std::size_t{1} << n;
        for (double rho : {0.6, 0.75, 0.9}) {
            PeriodicGcm pg(rho, n);
            std::vector<double> p(states);
            for (std::uint32_t m = 0; m < states; ++m)
                p[m] = pg.prob(from_mask(n, m));
            check(n, p, "nu rho=" + std::to_string(rho) + " N=" + std::to_string(n));
        }
        for (int k = n / 2 + 1; k <= n; ++k) {
            double u = 1.0 / count_hole_isolated(n, k).convert_to<double>();
            std::vector<double> p(states, 0.0);
            for (std::uint32_t m = 0; m < states; ++m)
                if (std::popcount(m) == k && hole_isolated(n, m))
                    p[m] = u;
            check(n, p, "uniform N=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    }
    return r;
}

SuiteResult verify_formulas(int l_max)
{
    SuiteResult r;
    r.name = "formulas";
    for (int i = 0; i <= 8; ++i) {
        double rho = 0.55 + 0.05 * i;
        auto g = GcmParams::make(rho);
        for (int l = 1; l <= l_max; ++l)
            for (std::uint32_t m = 0; m < (1u << l); ++m) {
                LocalConfig s(l);
                for (int q = 0; q < l; ++q)
                    s[q] = (m >> q) & 1u;
                double a = gcm_window_prob(g, s);
                double b = gcm_window_prob_alt(g, s);
                double c = gcm_chain_prob(g, s);
                r.checks += 2;
                double e1 = a == 0 ? std::abs(b) : std::abs(a - b) / a;
                double e2 = a == 0 ? std::abs(c) : std::abs(a - c) / a;
                r.max_error = std::max({r.max_error, e1, e2});
                if (e1 > 1e-13 || e2 > 1e-13)
                    fail(r, "rho=" + std::to_string(rho) + " l=" + std::to_string(l));
                if (l < l_max) {
                    LocalConfig s1 = s, s0 = s;
                    s1.push_back(1);
                    s0.push_back(0);
                    double marg = gcm_window_prob(g, s1) + gcm_window_prob(g, s0);
                    double e3 = a == 0 ? std::abs(marg) : std::abs(marg - a) / a;
                    ++r.checks;
                    r.max_error = std::max(r.max_error, e3);
                    if (e3 > 1e-13)
                        fail(r, "marginal rho=" + std::to_string(rho) + " l=" + std::to_string(l));
                }
            }
    }
    return r;
}

SuiteResult run_suite(const std::string& name)
{
    if (name == "counting")
        return verify_counting();
    if (name == "window-counting")
        return verify_window_counting();
    if (name == "irreducibility")
        return verify_irreducibility();
    if (name == "gradient")
        return verify_gradient();
    if (name == "balance")
        return verify_balance();
    if (name == "formulas")
        return verify_formulas();
    throw std::invalid_argument("unknown verification suite '" + name + "'");
}

}  // namespace fep
