#include "fep/estimators.hpp"

#include "fep/dynamics.hpp"
#include "fep/fde.hpp"
#include "fep/parallel.hpp"
#include "fep/zero_range.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace fep {

double empirical_pairing(const ExclusionConfig& eta, const std::function<double(double)>& phi)
{
    int n = eta.size();
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        if (eta[i])
            s += phi(static_cast<double>(i + 1) / n);
    return s / n;
}

EmpiricalProfile block_profile(const ExclusionConfig& eta, int ell, double s)
{
    int n = eta.size();
    if (ell < 0 || 2 * ell + 1 > n)
        throw std::invalid_argument("block 2l+1 must fit in the torus");
    EmpiricalProfile p;
    p.ell = ell;
    p.s = s;
    p.values.resize(n);
    long run = 0;
    for (int y = -ell; y <= ell; ++y)
        run += eta(static_cast<long>(y));
    double w = 2.0 * ell + 1.0;
    for (int x = 0; x < n; ++x) {
        p.values[x] = static_cast<double>(run) / w;
        run += eta(static_cast<long>(x) + ell + 1) - eta(static_cast<long>(x) - ell);
    }
    return p;
}

std::vector<double> coarse_grain(const std::vector<double>& site_values, int m)
{
    int n = static_cast<int>(site_values.size());
    if (m < 1 || n < m)
        throw std::invalid_argument("need 1 <= M <= N");
    std::vector<double> sum(m, 0.0);
    std::vector<int> count(m, 0);
    for (int i = 0; i < n; ++i) {
        // u = (i+1)/N, cell floor(u M) taken mod M
        long c = (static_cast<long>(i + 1) * m / n) % m;
        sum[c] += site_values[i];
        ++count[c];
    }
    for (int c = 0; c < m; ++c)
        sum[c] /= count[c];
    return sum;
}

namespace {

int h_local(const LocalConfig& s, int i)
{
    int a = s[i - 1], b = s[i], c = s[i + 1];
    return a * b + b * c - a * b * c;
}

}  // namespace

double replacement_stat(const LocalConfig& window, int k)
{
    if (k < 0 || static_cast<int>(window.size()) != 2 * k + 3)
        throw std::invalid_argument("replacement statistic needs a window of 2k+3 sites");
    int c = k + 1;
    long hs = 0, occ = 0;
    for (int y = -k; y <= k; ++y) {
        hs += h_local(window, c + y);
        occ += window[c + y];
    }
    double w = 2.0 * k + 1.0;
    return hs / w - f_of_rho(occ / w);
}

double replacement_stat(const ExclusionConfig& eta, int x, int k)
{
    if (2 * k + 3 > eta.size())
        throw std::invalid_argument("replacement window exceeds the torus");
    LocalConfig w(2 * k + 3);
    for (int i = 0; i < 2 * k + 3; ++i)
        w[i] = eta(static_cast<long>(x) - k - 1 + i);
    return replacement_stat(w, k);
}

std::vector<ReplacementPoint> replacement_scan(const ReplacementSource& src, const std::vector<int>& ks,
                                               int replicas, Rng& rng)
{
    if (replicas < 2)
        throw std::invalid_argument("need at least two replicas");
    std::optional<ConditionedWindow> cw;
    std::vector<double> cdf;
    if (src.kind == ReplacementSource::Kind::Conditioned) {
        cw.emplace(src.ell, src.j, src.rho);
        double acc = 0.0;
        for (double p : cw->weights())
            cdf.push_back(acc += p);
    }
    GcmParams g{};
    if (src.kind == ReplacementSource::Kind::GrandCanonical)
        g = GcmParams::make(src.rho);

    std::vector<ReplacementPoint> out;
    for (int k : ks) {
        double s1 = 0.0, s2 = 0.0;
        for (int r = 0; r < replicas; ++r) {
            double v = 0.0;
            switch (src.kind) {
            case ReplacementSource::Kind::GrandCanonical:
                v = replacement_stat(sample_gcm_window(g, 2 * k + 3, rng), k);
                break;
            case ReplacementSource::Kind::Canonical:
                v = replacement_stat(canonical_sample(src.n, src.particles, rng), 0, k);
                break;
            case ReplacementSource::Kind::Conditioned: {
                if (2 * k + 3 > cw->width())
                    throw std::invalid_argument("replacement window exceeds the conditioned box");
                double u = rng.uniform() * cdf.back();
                auto idx = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
                idx = std::min<std::ptrdiff_t>(idx, static_cast<std::ptrdiff_t>(cdf.size()) - 1);
                const auto& s = cw->support()[idx];
                int c = cw->ell();
                LocalConfig w(s.begin() + (c - k - 1), s.begin() + (c + k + 2));
                v = replacement_stat(w, k);
                break;
            }
            }
            v = std::abs(v);
            s1 += v;
            s2 += v * v;
        }
        double mean = s1 / replicas;
        double var = std::max(0.0, (s2 - replicas * mean * mean) / (replicas - 1));
        out.push_back({k, mean, std::sqrt(var / replicas)});
    }
    return out;
}

LocalFunction LocalFunction::occupancy()
{
    return {0, 0, [](const LocalConfig& s) { return static_cast<double>(s[0]); }};
}

LocalFunction LocalFunction::h()
{
    return {-1, 1, [](const LocalConfig& s) { return static_cast<double>(h_local(s, 1)); }};
}

double window_expectation(double rho, const LocalFunction& f)
{
    auto m = WindowMeasure::at_density(rho);
    int width = f.hi - f.lo + 1;
    if (width < 1 || width > 24)
        throw std::invalid_argument("local function support too wide");
    LocalConfig s(width);
    double e = 0.0;
    for (std::uint32_t bits = 0; bits < (1u << width); ++bits) {
        for (int i = 0; i < width; ++i)
            s[i] = (bits >> i) & 1u;
        double p = m.prob(s);
        if (p > 0)
            e += p * f.f(s);
    }
    return e;
}

EnsembleGap ensembles_gap(const ConditionedWindow& w, const LocalFunction& f, double delta)
{
    if (!(delta >= 0.0 && delta < 1.0))
        throw std::invalid_argument("delta must lie in [0, 1)");
    int ell = w.ell();
    EnsembleGap out;
    out.rho_ell = w.rho_ell();
    double ref = window_expectation(out.rho_ell, f);
    int range = static_cast<int>(std::floor((1.0 - delta) * ell));
    int width = f.hi - f.lo + 1;
    LocalConfig s(width);
    for (int x = -range; x <= range; ++x) {
        if (x + f.lo < -ell || x + f.hi > ell)
            continue;
        double e = 0.0;
        const auto& states = w.support();
        const auto& probs = w.weights();
        for (std::size_t i = 0; i < states.size(); ++i) {
            for (int q = 0; q < width; ++q)
                s[q] = states[i][x + f.lo + q + ell];
            e += probs[i] * f.f(s);
        }
        double gap = std::abs(e - ref);
        out.xs.push_back(x);
        out.gaps.push_back(gap);
        out.max_gap = std::max(out.max_gap, gap);
    }
    return out;
}

double constructive_delta(double min_rho0)
{
    if (!(min_rho0 > 0.5 && min_rho0 <= 1.0))
        throw std::invalid_argument("profile minimum must lie in (1/2, 1]");
    double rho_bar = (0.5 + min_rho0) / 2.0;
    double r = rho_bar / (1.0 - rho_bar);
    double hi = r - 1.0;
    double lo = -1.5 + std::sqrt(0.25 + 2.0 * r);
    return 0.5 * (lo + hi);
}

int ell_policy(int n, double exponent)
{
    if (n < 2)
        throw std::invalid_argument("N must be at least 2");
    return static_cast<int>(std::floor(std::pow(std::log(static_cast<double>(n)), exponent)));
}

double quantile(std::vector<double> v, double q)
{
    if (v.empty())
        return std::nan("");
    std::sort(v.begin(), v.end());
    double pos = q * static_cast<double>(v.size() - 1);
    auto i = static_cast<std::size_t>(std::floor(pos));
    if (i + 1 >= v.size())
        return v.back();
    double frac = pos - static_cast<double>(i);
    return v[i] + frac * (v[i + 1] - v[i]);
}

TransienceReport transience_scan(const TransienceSettings& s)
{
    if (s.replicas < 1)
        throw std::invalid_argument("need at least one replica");
    if (!(s.rho0.min() > 0.5 && s.rho0.max() <= 1.0))
        throw std::invalid_argument("profile must map into (1/2, 1]");
    if (s.rho0.min() == 1.0)
        throw std::invalid_argument("profile identically 1 has nothing to relax");
    double delta = s.delta > 0 ? s.delta : constructive_delta(s.rho0.min());
    TransienceReport report;
    for (int n : s.n_list) {
        TransienceBlock block;
        block.n = n;
        block.ell = ell_policy(n, s.ell_exponent);
        block.delta = delta;
        block.rows.resize(s.replicas);
        std::uint64_t n_seed = derive_seed(s.seed, static_cast<std::uint64_t>(n));
        double scale = static_cast<double>(n) * n;
        parallel_for(s.replicas, s.threads, [&](int r) {
            TransienceRow row;
            row.replica = r;
            row.seed = derive_seed(n_seed, static_cast<std::uint64_t>(r));
            Rng rng(row.seed);
            auto eta = sample_profile(s.rho0, n, rng);
            row.holes = n - eta.particles();
            if (row.holes > block.ell)
                row.regular = is_regular(ex_to_zr(eta), block.ell, delta);
            auto hit = hitting_time_ergodic(eta, rng, s.t_max_macro * scale);
            row.reached = hit.status == HittingStatus::Reached;
            row.tau_micro = hit.t_micro;
            row.tau_macro = hit.t_micro / scale;
            row.events = hit.events;
            block.rows[r] = row;
        });
        std::vector<double> taus;
        int regular = 0;
        for (const auto& row : block.rows) {
            taus.push_back(row.reached ? row.tau_macro : std::numeric_limits<double>::infinity());
            regular += row.regular;
            block.not_reached += !row.reached;
        }
        block.median_tau = quantile(taus, 0.5);
        block.q25_tau = quantile(taus, 0.25);
        block.q75_tau = quantile(taus, 0.75);
        block.fraction_regular = static_cast<double>(regular) / s.replicas;
        report.blocks.push_back(std::move(block));
    }
    return report;
}

HydroResult hydro_compare(const HydroSettings& s)
{
    if (!(s.t >= 0.0))
        throw std::invalid_argument("time must be non-negative");
    if (s.replicas < 1)
        throw std::invalid_argument("need at least one replica");
    if (!(s.rho0.min() > 0.5 && s.rho0.max() <= 1.0))
        throw std::invalid_argument("profile must map into (1/2, 1]");
    int ell = s.block_ell > 0 ? s.block_ell : static_cast<int>(std::floor(std::sqrt(static_cast<double>(s.n))));
    if (2 * ell + 1 > s.n)
        throw std::invalid_argument("block 2l+1 must fit in the torus");
    if (s.grid_m < 3 || s.grid_m > s.n)
        throw std::invalid_argument("grid size must satisfy 3 <= M <= N");

    HydroResult out;
    std::vector<std::vector<double>> profiles(s.replicas);
    std::vector<std::uint64_t> events(s.replicas, 0);
    out.seeds.resize(s.replicas);
    double scale = static_cast<double>(s.n) * s.n;
    parallel_for(s.replicas, s.threads, [&](int r) {
        out.seeds[r] = derive_seed(s.seed, static_cast<std::uint64_t>(r));
        Rng rng(out.seeds[r]);
        auto eta = sample_profile(s.rho0, s.n, rng);
        FepSimulator sim(eta);
        sim.run_until(s.t * scale, rng);
        events[r] = sim.events();
        profiles[r] = block_profile(sim.config(), ell, s.t).values;
    });
    std::vector<double> mean(s.n, 0.0);
    for (int r = 0; r < s.replicas; ++r) {
        for (int i = 0; i < s.n; ++i)
            mean[i] += profiles[r][i];
        out.events += events[r];
    }
    for (double& v : mean)
        v /= s.replicas;
    out.rho_emp = coarse_grain(mean, s.grid_m);
    out.rho_pde = solve_fde(DensityProfile::sample(s.rho0, s.grid_m), s.t).cells;
    out.u.resize(s.grid_m);
    double l1 = 0.0;
    for (int c = 0; c < s.grid_m; ++c) {
        out.u[c] = (c + 0.5) / s.grid_m;
        l1 += std::abs(out.rho_emp[c] - out.rho_pde[c]);
    }
    out.l1 = l1 / s.grid_m;
    return out;
}

}  // namespace fep
