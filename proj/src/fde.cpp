#include "fep/fde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fep {

double DensityProfile::mass() const
{
    double s = 0.0;
    for (double v : cells)
        s += v;
    return s * dx();
}

double DensityProfile::min() const { return *std::min_element(cells.begin(), cells.end()); }

double DensityProfile::max() const { return *std::max_element(cells.begin(), cells.end()); }

DensityProfile DensityProfile::sample(const Profile& rho0, int m)
{
    if (m < 3)
        throw std::invalid_argument("grid needs at least 3 cells");
    DensityProfile p;
    p.cells.resize(m);
    for (int i = 0; i < m; ++i)
        p.cells[i] = rho0((i + 0.5) / m);
    return p;
}

double fde_max_dt(const DensityProfile& p)
{
    double lo = p.min();
    return p.dx() * p.dx() * lo * lo / 2.0;
}

DensityProfile fde_step(const DensityProfile& p, double dt)
{
    int m = p.size();
    if (m < 3)
        throw std::invalid_argument("grid needs at least 3 cells");
    if (!(p.min() > 0.5 && p.max() <= 1.0))
        throw std::domain_error("density left (1/2, 1]");
    if (!(dt >= 0.0) || dt > fde_max_dt(p))
        throw std::invalid_argument("time step violates the stability bound");
    std::vector<double> g(m);
    for (int i = 0; i < m; ++i)
        g[i] = (2.0 * p.cells[i] - 1.0) / p.cells[i];
    double lam = dt / (p.dx() * p.dx());
    DensityProfile out;
    out.t = p.t + dt;
    out.cells.resize(m);
    for (int i = 0; i < m; ++i) {
        double gl = g[i == 0 ? m - 1 : i - 1];
        double gr = g[i + 1 == m ? 0 : i + 1];
        out.cells[i] = p.cells[i] + lam * ((gr - g[i]) - (g[i] - gl));
    }
    if (!(out.min() > 0.5 && out.max() <= 1.0))
        throw std::domain_error("density left (1/2, 1]");
    return out;
}

DensityProfile solve_fde(const DensityProfile& initial, double t_end, DtPolicy policy, const SnapshotFn& snapshot,
                         long every)
{
    if (!(t_end >= 0.0))
        throw std::invalid_argument("end time must be non-negative");
    if (!(policy.cfl > 0.0 && policy.cfl <= 1.0))
        throw std::invalid_argument("cfl fraction must lie in (0, 1]");
    DensityProfile p = initial;
    if (snapshot && every > 0)
        snapshot(p, 0);
    if (t_end == 0.0)
        return p;
    // the minimum never decreases, so the initial bound stays valid
    double dt_max = policy.cfl * fde_max_dt(p);
    long steps = static_cast<long>(std::ceil(t_end / dt_max));
    double dt = t_end / static_cast<double>(steps);
    double t0 = p.t;
    for (long s = 1; s <= steps; ++s) {
        p = fde_step(p, dt);
        p.t = t0 + s * dt;
        if (snapshot && every > 0 && (s % every == 0 || s == steps))
            snapshot(p, s);
    }
    return p;
}

}  // namespace fep
