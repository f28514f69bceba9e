#include "fep/measures.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fep {

GcmParams GcmParams::make(double rho)
{
    if (!(rho > 0.5 && rho < 1.0))
        throw std::invalid_argument("grand-canonical constants need rho in (1/2, 1)");
    GcmParams g;
    g.rho = rho;
    g.kappa = 2 * rho - 1;
    g.alpha = (2 * rho - 1) * (2 * rho - 1) / (rho * (1 - rho));
    g.beta = (1 - rho) / (2 * rho - 1);
    g.gamma = rho / (2 * rho - 1);
    g.f_of_rho = fep::f_of_rho(rho);
    return g;
}

double f_of_rho(double rho) { return rho <= 0.5 ? 0.0 : (2 * rho - 1) / rho; }

namespace {

struct WindowStats {
    int ell = 0;
    int p = 0;
    int ends = 0;
    bool ergodic = true;
};

WindowStats stats(const LocalConfig& s)
{
    if (s.empty())
        throw std::invalid_argument("window must have at least one site");
    WindowStats w;
    w.ell = static_cast<int>(s.size());
    for (int i = 0; i < w.ell; ++i) {
        if (s[i] > 1)
            throw std::invalid_argument("occupation must be 0 or 1");
        w.p += s[i];
        if (i + 1 < w.ell && !s[i] && !s[i + 1])
            w.ergodic = false;
    }
    w.ends = s.front() + s.back();
    return w;
}

}  // namespace

double gcm_window_prob(const GcmParams& g, const LocalConfig& sigma)
{
    auto w = stats(sigma);
    if (!w.ergodic)
        return 0.0;
    return g.kappa * std::pow(g.alpha, w.p) * std::pow(g.beta, w.ell) * std::pow(g.gamma, w.ends);
}

double gcm_window_prob_alt(const GcmParams& g, const LocalConfig& sigma)
{
    auto w = stats(sigma);
    if (!w.ergodic)
        return 0.0;
    double r = g.rho;
    return (1 - r) * std::pow((1 - r) / r, w.ell - 1 - w.p) * std::pow((2 * r - 1) / r, 2 * w.p - w.ell + 1 - w.ends);
}

double gcm_chain_prob(const GcmParams& g, const LocalConfig& sigma)
{
    stats(sigma);
    double r = g.rho;
    double p = sigma[0] ? r : 1 - r;
    for (std::size_t i = 1; i < sigma.size(); ++i) {
        if (sigma[i - 1])
            p *= sigma[i] ? (2 * r - 1) / r : (1 - r) / r;
        else if (!sigma[i])
            return 0.0;
    }
    return p;
}

double two_point(const GcmParams& g, int ell)
{
    if (ell < 1)
        throw std::invalid_argument("distance must be at least 1");
    double r = g.rho;
    return r * r + (2 * r - 1 - r * r) * std::pow(1 - 1 / r, ell - 1);
}

double gcm_h_mean(const GcmParams& g) { return g.f_of_rho; }

LocalConfig sample_gcm_window(const GcmParams& g, int ell, Rng& rng)
{
    if (ell < 1)
        throw std::invalid_argument("window must have at least one site");
    LocalConfig s(ell);
    double stay = (2 * g.rho - 1) / g.rho;
    s[0] = rng.bernoulli(g.rho);
    for (int i = 1; i < ell; ++i)
        s[i] = s[i - 1] ? rng.bernoulli(stay) : 1;
    return s;
}

WindowMeasure WindowMeasure::at_density(double rho)
{
    if (!(rho >= 0.0 && rho <= 1.0))
        throw std::invalid_argument("density must lie in [0, 1]");
    if (rho == 1.0)
        return full();
    if (rho <= 0.5)
        return alternating();
    return supercritical(rho);
}

WindowMeasure WindowMeasure::supercritical(double rho)
{
    WindowMeasure m;
    m.regime_ = Regime::Supercritical;
    m.g_ = GcmParams::make(rho);
    return m;
}

WindowMeasure WindowMeasure::full()
{
    WindowMeasure m;
    m.regime_ = Regime::Full;
    return m;
}

WindowMeasure WindowMeasure::alternating()
{
    WindowMeasure m;
    m.regime_ = Regime::Alternating;
    return m;
}

double WindowMeasure::prob(const LocalConfig& sigma) const
{
    stats(sigma);
    switch (regime_) {
    case Regime::Supercritical: return gcm_window_prob(g_, sigma);
    case Regime::Full:
        for (auto v : sigma)
            if (!v)
                return 0.0;
        return 1.0;
    case Regime::Alternating:
        for (std::size_t i = 1; i < sigma.size(); ++i)
            if (sigma[i] == sigma[i - 1])
                return 0.0;
        return 0.5;
    }
    return 0.0;
}

namespace {

// log C(n, r), -inf when zero
double log_binomial(long n, long r)
{
    if (n < 0 || r < 0 || r > n)
        return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

}  // namespace

ExclusionConfig canonical_sample(int n, int k, Rng& rng)
{
    if (n < 1 || k > n || 2 * k <= n)
        throw std::invalid_argument("canonical measure needs N/2 < k <= N");
    int m = n - k;
    ExclusionConfig eta(n);
    int p = 0, first = -1, last = -1;
    for (int len = 1; len <= n; ++len) {
        // counts of completions after appending a particle (c1) or a hole (c0)
        auto args = [&](int bit, long& top, long& bottom) {
            int pp = p + bit;
            int zz = len - pp;
            int f = len == 1 ? bit : first;
            if (pp > k || zz > m || (last == 0 && bit == 0)) {
                top = -1;
                bottom = 0;
                return;
            }
            top = k - pp + f + bit - 1;
            bottom = m - zz;
        };
        long t1, b1, t0, b0;
        args(1, t1, b1);
        args(0, t0, b0);
        double p1;
        if (n <= 64) {
            BigInt c1 = binomial(t1, b1), c0 = binomial(t0, b0);
            BigInt total = c1 + c0;
            if (total == 0)
                throw std::logic_error("no completion of the canonical prefix");
            p1 = boost::multiprecision::cpp_rational(c1, total).convert_to<double>();
        } else {
            double l1 = log_binomial(t1, b1), l0 = log_binomial(t0, b0);
            if (std::isinf(l1) && std::isinf(l0))
                throw std::logic_error("no completion of the canonical prefix");
            p1 = std::isinf(l0) ? 1.0 : (std::isinf(l1) ? 0.0 : 1.0 / (1.0 + std::exp(l0 - l1)));
        }
        int bit = rng.uniform() < p1 ? 1 : 0;
        eta.set(len - 1, bit);
        p += bit;
        if (len == 1)
            first = bit;
        last = bit;
    }
    return eta;
}

double canonical_window_prob(int n, int k, const LocalConfig& sigma)
{
    if (2 * k <= n)
        throw std::invalid_argument("canonical measure needs k > N/2");
    for (std::size_t i = 0; i + 1 < sigma.size(); ++i)
        if (!sigma[i] && !sigma[i + 1])
            return 0.0;
    BigInt num = count_with_window(n, k, sigma);
    BigInt den = count_hole_isolated(n, k);
    return boost::multiprecision::cpp_rational(num, den).convert_to<double>();
}

ConditionedWindow::ConditionedWindow(int ell, int j, double rho, int cap) : ell_(ell), j_(j)
{
    if (ell < 1)
        throw std::invalid_argument("half-width must be at least 1");
    if (j < ell || j > 2 * ell + 1)
        throw std::invalid_argument("particle count must lie in {l, ..., 2l+1}");
    if (2 * ell + 1 > cap)
        throw std::length_error("window exceeds exact enumeration cap");
    double gamma = GcmParams::make(rho).gamma;
    int w = width();
    LocalConfig cur(w);
    // depth-first over configurations with j particles and isolated holes
    auto rec = [&](auto&& self, int pos, int left) -> void {
        int slots = w - pos;
        if (left > slots)
            return;
        if (pos == w) {
            states_.push_back(cur);
            return;
        }
        cur[pos] = 1;
        if (left > 0)
            self(self, pos + 1, left - 1);
        if (pos == 0 || cur[pos - 1]) {
            cur[pos] = 0;
            self(self, pos + 1, left);
        }
    };
    rec(rec, 0, j);
    double z = 0.0;
    for (const auto& s : states_) {
        probs_.push_back(std::pow(gamma, s.front() + s.back()));
        z += probs_.back();
    }
    for (auto& p : probs_)
        p /= z;
}

double ConditionedWindow::prob(const LocalConfig& sigma) const
{
    if (static_cast<int>(sigma.size()) != width())
        throw std::invalid_argument("window has the wrong width");
    auto w = stats(sigma);
    if (w.p != j_ || !w.ergodic)
        throw std::invalid_argument("configuration is off the conditioned hyperplane");
    for (std::size_t i = 0; i < states_.size(); ++i)
        if (states_[i] == sigma)
            return probs_[i];
    throw std::logic_error("hyperplane enumeration incomplete");
}

PeriodicGcm::PeriodicGcm(double rho, int n, int cap) : g_(GcmParams::make(rho)), n_(n)
{
    if (n < 1)
        throw std::invalid_argument("torus size must be positive");
    if (n > cap)
        throw std::length_error("N exceeds exact enumeration cap");
    z_ = ergodic_set_mass(rho, n);
}

double PeriodicGcm::tilde(const ExclusionConfig& eta) const
{
    if (eta.size() != n_)
        throw std::invalid_argument("configuration size mismatch");
    LocalConfig w(n_);
    double sum = 0.0;
    for (int x = 0; x < n_; ++x) {
        for (int i = 0; i < n_; ++i)
            w[i] = eta(static_cast<long>(x) + i);
        sum += gcm_window_prob(g_, w);
    }
    return sum / n_;
}

double PeriodicGcm::prob(const ExclusionConfig& eta) const
{
    if (classify(eta) != ClassLabel::Ergodic)
        return 0.0;
    return tilde(eta) / z_;
}

double ergodic_set_mass(double rho, int n)
{
    auto g = GcmParams::make(rho);
    if (n < 1)
        throw std::invalid_argument("torus size must be positive");
    double stay = (2 * g.rho - 1) / g.rho, leave = (1 - g.rho) / g.rho;
    // w[first][last][count]
    std::vector<double> w(4 * static_cast<std::size_t>(n + 1), 0.0), nw(w.size());
    auto at = [n](int f, int b, int c) { return (static_cast<std::size_t>(f) * 2 + b) * (n + 1) + c; };
    w[at(1, 1, 1)] = g.rho;
    w[at(0, 0, 0)] = 1 - g.rho;
    for (int len = 2; len <= n; ++len) {
        std::fill(nw.begin(), nw.end(), 0.0);
        for (int f = 0; f < 2; ++f)
            for (int c = 0; c < len; ++c) {
                double from1 = w[at(f, 1, c)];
                double from0 = w[at(f, 0, c)];
                nw[at(f, 1, c + 1)] += from1 * stay + from0;
                nw[at(f, 0, c)] += from1 * leave;
            }
        w.swap(nw);
    }
    double mass = 0.0;
    for (int f = 0; f < 2; ++f)
        for (int b = 0; b < 2; ++b) {
            if (!f && !b)
                continue;
            for (int c = 0; c <= n; ++c)
                if (2 * c > n)
                    mass += w[at(f, b, c)];
        }
    return mass;
}

double ergodic_set_mass_limit(double rho) { return rho * (2 - rho); }

ExclusionConfig sample_profile(const Profile& rho0, int n, Rng& rng, bool allow_outside)
{
    if (n < 1)
        throw std::invalid_argument("torus size must be positive");
    ExclusionConfig eta(n);
    for (int i = 0; i < n; ++i) {
        double r = rho0(static_cast<double>(i + 1) / n);
        if (!allow_outside && !(r > 0.5 && r <= 1.0))
            throw std::invalid_argument("profile leaves (1/2, 1]");
        if (!(r >= 0.0 && r <= 1.0))
            throw std::invalid_argument("profile leaves [0, 1]");
        eta.set(i, rng.uniform() < r);
    }
    return eta;
}

}  // namespace fep
