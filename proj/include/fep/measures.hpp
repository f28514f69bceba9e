#pragma once

#include "fep/lattice.hpp"
#include "fep/profile.hpp"
#include "fep/rng.hpp"

#include <vector>

namespace fep {

/// Constants of the grand-canonical measure at density rho in (1/2, 1).
struct GcmParams {
    double rho;
    double kappa;  ///< 2 rho - 1
    double alpha;  ///< (2 rho - 1)^2 / (rho (1 - rho))
    double beta;   ///< (1 - rho) / (2 rho - 1)
    double gamma;  ///< rho / (2 rho - 1)
    double f_of_rho;

    static GcmParams make(double rho);
};

/// F(rho) = max(0, (2 rho - 1) / rho), defined on [0, 1].
double f_of_rho(double rho);

/// kappa alpha^p beta^l gamma^(sigma(1) + sigma(l)); 0 if sigma has adjacent holes.
double gcm_window_prob(const GcmParams& g, const LocalConfig& sigma);
/// Same law written as (1-rho) ((1-rho)/rho)^(l-1-p) ((2rho-1)/rho)^(2p-l+1-sigma(1)-sigma(l)).
double gcm_window_prob_alt(const GcmParams& g, const LocalConfig& sigma);
/// Initial marginal times transition product of the two-state renewal chain.
double gcm_chain_prob(const GcmParams& g, const LocalConfig& sigma);

/// P_l = pi_rho(xi(0) = xi(l) = 1).
double two_point(const GcmParams& g, int ell);

double gcm_h_mean(const GcmParams& g);

/// Window of l consecutive sites drawn from pi_rho.
LocalConfig sample_gcm_window(const GcmParams& g, int ell, Rng& rng);

/// Window law of pi_rho for every rho in [0, 1]: the supercritical measure on
/// (1/2, 1), the full configuration at rho = 1, and the equal mixture of the
/// two alternating configurations for rho <= 1/2.
class WindowMeasure {
public:
    enum class Regime { Supercritical, Full, Alternating };

    static WindowMeasure at_density(double rho);
    static WindowMeasure supercritical(double rho);
    static WindowMeasure full();
    static WindowMeasure alternating();

    Regime regime() const { return regime_; }
    double prob(const LocalConfig& sigma) const;

private:
    Regime regime_ = Regime::Full;
    GcmParams g_{};
};

/// Uniform sample from Omega_N^k, built site by site from window counts.
ExclusionConfig canonical_sample(int n, int k, Rng& rng);

/// pi_N^k(eta restricted to sites 0..l-1 equals sigma), as a double.
double canonical_window_prob(int n, int k, const LocalConfig& sigma);

/// pi_rho conditioned on j particles in the box of 2l+1 sites.
class ConditionedWindow {
public:
    ConditionedWindow(int ell, int j, double rho, int cap = 25);

    int ell() const { return ell_; }
    int j() const { return j_; }
    int width() const { return 2 * ell_ + 1; }
    /// j / (2l + 1)
    double rho_ell() const { return static_cast<double>(j_) / width(); }
    bool in_margin(double delta1) const { return rho_ell() >= 0.5 + delta1; }

    /// sigma indexed 0..2l (site -l is index 0). Throws off the hyperplane.
    double prob(const LocalConfig& sigma) const;
    const std::vector<LocalConfig>& support() const { return states_; }
    const std::vector<double>& weights() const { return probs_; }

private:
    int ell_, j_;
    std::vector<LocalConfig> states_;
    std::vector<double> probs_;
};

/// Translation average of pi_rho windows restricted to the ergodic set E_N.
class PeriodicGcm {
public:
    PeriodicGcm(double rho, int n, int cap = kDefaultEnumerationCap);

    double rho() const { return g_.rho; }
    int size() const { return n_; }
    /// nu~_{rho,N}(E_N)
    double normalization() const { return z_; }
    /// nu~_{rho,N}(eta)
    double tilde(const ExclusionConfig& eta) const;
    /// nu_{rho,N}(eta)
    double prob(const ExclusionConfig& eta) const;

private:
    GcmParams g_;
    int n_;
    double z_;
};

/// Exact nu~_{rho,N}(E_N) by a transfer sum over windows of length N.
double ergodic_set_mass(double rho, int n);
/// rho (2 - rho)
double ergodic_set_mass_limit(double rho);

/// Independent sites with P(eta(x) = 1) = rho0(x/N), site x = index + 1.
ExclusionConfig sample_profile(const Profile& rho0, int n, Rng& rng, bool allow_outside = false);

}  // namespace fep
