#pragma once

#include "qbgk/equilibrium_solver.hpp"
#include "qbgk/kernels.hpp"
#include "qbgk/momentum_grid.hpp"

namespace qbgk {

// Discrete-consistent coefficient mode: re-solves the moment relations with
// the continuum integrals replaced by grid sums, so the attractors carry the
// conserved moments of the state to round-off on the grid actually used.
// A damped Newton iteration on the full discrete system does this at
// per-step cost, seeded by the continuum solution (or the previous step's
// coefficients), which is within O(dp^2) of the discrete root.

struct DiscreteSolveReport {
    int iterations = 0;
    double residual = 0.0;  // scaled inf-norm of the final moment residual
};

/// Refine (a, b, c) so the grid sums of the equilibrium match target_raw
/// (unweighted sums: n, p, |p|^2). Throws ConvergenceError on failure.
IntraCoeffs refine_intra_discrete(const MomentumGrid& grid, double m, Statistics tau,
                                  const kernels::RawMoments& target_raw,
                                  const IntraCoeffs& seed, Exec exec,
                                  DiscreteSolveReport* report = nullptr);

/// Refine (a, b, c12, c21) so the two equilibria carry the species densities
/// individually and total momentum and energy jointly, as grid sums.
InterCoeffs refine_inter_discrete(const MomentumGrid& grid, double m1, Statistics tau1,
                                  double m2, Statistics tau2,
                                  const kernels::RawMoments& target1_raw,
                                  const kernels::RawMoments& target2_raw,
                                  const InterCoeffs& seed, Exec exec,
                                  DiscreteSolveReport* report = nullptr);

}  // namespace qbgk
