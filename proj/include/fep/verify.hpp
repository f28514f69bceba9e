#pragma once

#include <string>
#include <vector>

namespace fep {

struct SuiteResult {
    std::string name;
    bool passed = true;
    long checks = 0;
    double max_error = 0.0;
    std::string detail;
};

/// Enumeration count of hole-isolated configurations against the closed
/// form, every N <= n_max and 1 <= k <= N-1.
SuiteResult verify_counting(int n_max = 14);
/// Window counts of Omega_N^k against the binomial formula, N <= n_max, l <= l_max.
SuiteResult verify_window_counting(int n_max = 12, int l_max = 4);
/// Connectivity of the jump graph on Omega_N^k, N <= n_max.
SuiteResult verify_irreducibility(int n_max = 12);
/// Gradient form of the current and the generator identity, all 2^N states.
SuiteResult verify_gradient(int n_max = 8);
/// Stationarity of nu_{rho,N} and of the uniform measures on Omega_N^k.
SuiteResult verify_balance(int n_max = 10);
/// Window formula against its alternative form, the chain product, and
/// Kolmogorov consistency, l <= l_max.
SuiteResult verify_formulas(int l_max = 8);

SuiteResult run_suite(const std::string& name);

}  // namespace fep
