#pragma once

#include "fep/lattice.hpp"
#include "fep/measures.hpp"
#include "fep/profile.hpp"
#include "fep/rng.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace fep {

struct EmpiricalProfile {
    int ell = 0;
    double s = 0.0;
    /// values[x] = (2l+1)^{-1} sum_{|y-x|<=l} eta(y)
    std::vector<double> values;
};

/// N^{-1} sum_x phi(x/N) eta(x), site x = index + 1.
double empirical_pairing(const ExclusionConfig& eta, const std::function<double(double)>& phi);

EmpiricalProfile block_profile(const ExclusionConfig& eta, int ell, double s = 0.0);

/// Averages site values (site index i at u = (i+1)/N) over the M cells
/// [c/M, (c+1)/M).
std::vector<double> coarse_grain(const std::vector<double>& site_values, int m);

/// V_k on a window of 2k+3 sites centred at index k+1.
double replacement_stat(const LocalConfig& window, int k);
/// V_k at site x of a torus configuration.
double replacement_stat(const ExclusionConfig& eta, int x, int k);

struct ReplacementSource {
    enum class Kind { GrandCanonical, Canonical, Conditioned };
    Kind kind = Kind::GrandCanonical;
    double rho = 0.75;    ///< GrandCanonical, Conditioned (through gamma)
    int n = 0;            ///< Canonical torus size
    int particles = 0;    ///< Canonical particle count
    int ell = 0;          ///< Conditioned half-width
    int j = 0;            ///< Conditioned particle count
};

struct ReplacementPoint {
    int k;
    double mean_abs;
    double stderr_;
};

/// Monte Carlo E|V_k| at the origin, one fresh sample per replica and k.
std::vector<ReplacementPoint> replacement_scan(const ReplacementSource& src, const std::vector<int>& ks,
                                               int replicas, Rng& rng);

/// Local function of the sites x+lo .. x+hi.
struct LocalFunction {
    int lo = 0;
    int hi = 0;
    std::function<double(const LocalConfig&)> f;

    static LocalFunction occupancy();
    static LocalFunction h();
};

struct EnsembleGap {
    double max_gap = 0.0;
    double rho_ell = 0.0;
    std::vector<int> xs;
    std::vector<double> gaps;
};

/// max over |x| <= floor((1-delta) l) (support kept inside the box) of
/// |hat pi^{l,j}(tau_x f) - pi_{rho_l(j)}(f)|, by exact enumeration.
EnsembleGap ensembles_gap(const ConditionedWindow& w, const LocalFunction& f, double delta);

/// Expectation of f under the infinite-volume window law at density rho.
double window_expectation(double rho, const LocalFunction& f);

/// Midpoint of (lo, hi) where (1+lo)(1+lo/2) = r and 1+hi = r,
/// r = rho_bar/(1-rho_bar), rho_bar = (1/2 + min rho0)/2.
double constructive_delta(double min_rho0);

/// floor((log N)^exponent)
int ell_policy(int n, double exponent);

struct TransienceSettings {
    std::vector<int> n_list;
    Profile rho0 = Profile::constant(0.75);
    int replicas = 32;
    std::uint64_t seed = 1;
    double delta = 0.0;  ///< <= 0 selects constructive_delta
    double ell_exponent = 3.0;
    double t_max_macro = 1.0;
    int threads = 1;
};

struct TransienceRow {
    int replica = 0;
    std::uint64_t seed = 0;
    bool reached = false;
    double tau_micro = 0.0;
    double tau_macro = 0.0;
    std::uint64_t events = 0;
    int holes = 0;
    bool regular = false;
};

struct TransienceBlock {
    int n = 0;
    int ell = 0;
    double delta = 0.0;
    std::vector<TransienceRow> rows;
    double median_tau = 0.0;
    double q25_tau = 0.0;
    double q75_tau = 0.0;
    double fraction_regular = 0.0;
    int not_reached = 0;
};

struct TransienceReport {
    std::vector<TransienceBlock> blocks;
};

TransienceReport transience_scan(const TransienceSettings& s);

struct HydroSettings {
    int n = 2048;
    Profile rho0 = Profile::sinusoid(0.75, 0.15);
    double t = 0.05;
    int replicas = 8;
    int block_ell = 0;  ///< 0 selects floor(sqrt N)
    int grid_m = 512;
    std::uint64_t seed = 1;
    int threads = 1;
};

struct HydroResult {
    double l1 = 0.0;
    std::vector<double> u;
    std::vector<double> rho_emp;
    std::vector<double> rho_pde;
    std::vector<std::uint64_t> seeds;
    std::uint64_t events = 0;
};

HydroResult hydro_compare(const HydroSettings& s);

/// Sample quantile with linear interpolation, q in [0, 1].
double quantile(std::vector<double> v, double q);

}  // namespace fep
