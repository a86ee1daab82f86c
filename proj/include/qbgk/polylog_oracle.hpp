#pragma once

#include "qbgk/statistics.hpp"

namespace qbgk {
namespace oracle {

// Reference evaluations of the quantum moment integrals used to validate the
// panel-quadrature route. Never called from any solver path.
//
// For x >= 0 both statistics reduce to polylogarithms of z = -tau e^{-x}
// with |z| <= 1, summed as a direct series (published zeta constants at the
// slow-converging endpoint x = 0). The fermion continuation to x < 0 lies
// outside the series disk; there the reference switches to an equispaced
// midpoint rule, which is spectrally accurate for these analytic integrands
// and shares no nodes or weights with the production quadrature.

/// Direct series Li_s(z) = sum_{k>=1} z^k / k^s for |z| < 1.
double polylog_series(double s, double z);

/// Reference value of moment0 (the h_tau integral).
double moment0_reference(Statistics tau, double x);

/// Reference value of moment2 (the |p|^2-weighted integral).
double moment2_reference(Statistics tau, double x);

/// Reference j = moment0 / moment2^{3/5}.
double j_reference(Statistics tau, double x);

}  // namespace oracle
}  // namespace qbgk
