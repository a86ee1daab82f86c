#pragma once

#include "qbgk/distribution_field.hpp"
#include "qbgk/kernels.hpp"
#include "qbgk/moments.hpp"
#include "qbgk/momentum_grid.hpp"
#include "qbgk/statistics.hpp"

namespace qbgk {

/// Node-wise quantum equilibrium 1/(e^{m a |p/m - b|^2 + c} + tau).
/// Requires a > 0, and c > 0 for bosons. Fermion values stay strictly
/// below 1 for any finite parameters.
DistributionField eval_equilibrium(double a, const Vec3& b, double c, double m,
                                   Statistics tau, const MomentumGrid& grid,
                                   Exec exec = default_exec());

/// Midpoint-rule moments dp^3 * sum f {1, p, |p|^2/(2m)}. Odd moments of
/// origin-symmetric fields are bitwise zero (pair-ordered summation).
SpeciesMoments discrete_moments(const DistributionField& field, const MomentumGrid& grid,
                                Exec exec = default_exec());

/// Quantum entropy of the two-species state:
/// dp^3 * sum over both fields of s_tau(f), with
/// s_{+1}(f) = f ln f + (1-f) ln(1-f), s_{-1}(f) = f ln f - (1+f) ln(1+f).
/// Throws DomainError if a fermion value exceeds 1 + 1e-12.
double h_functional(const DistributionField& f1, const DistributionField& f2,
                    const MomentumGrid& grid, Exec exec = default_exec());

/// Largest occupancy value of the field.
double max_occupancy(const DistributionField& field, const MomentumGrid& grid,
                     Exec exec = default_exec());

}  // namespace qbgk
