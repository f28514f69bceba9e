#pragma once

#include "fep/profile.hpp"

#include <functional>
#include <vector>

namespace fep {

/// Cell values of a density on the unit torus, dx = 1/M.
struct DensityProfile {
    std::vector<double> cells;
    double t = 0.0;

    int size() const { return static_cast<int>(cells.size()); }
    double dx() const { return 1.0 / static_cast<double>(cells.size()); }
    double mass() const;
    double min() const;
    double max() const;

    /// rho0 evaluated at cell centres (i + 1/2) / M.
    static DensityProfile sample(const Profile& rho0, int m);
};

/// Largest stable explicit step, dx^2 (min rho)^2 / 2.
double fde_max_dt(const DensityProfile& p);

/// One explicit step of d_t rho = Laplacian((2 rho - 1)/rho).
/// Throws std::invalid_argument above the stability bound and
/// std::domain_error if a cell leaves (1/2, 1].
DensityProfile fde_step(const DensityProfile& p, double dt);

struct DtPolicy {
    /// Fraction of the stability bound used per step.
    double cfl = 0.9;
};

using SnapshotFn = std::function<void(const DensityProfile&, long step)>;

/// Uniform steps landing exactly on t_end. `every` > 0 calls the snapshot
/// hook at step 0, every `every` steps, and at the end.
DensityProfile solve_fde(const DensityProfile& initial, double t_end, DtPolicy policy = {},
                         const SnapshotFn& snapshot = {}, long every = 0);

}  // namespace fep
