#pragma once

#include "qbgk/quadrature.hpp"
#include "qbgk/statistics.hpp"

namespace qbgk {

// Moment functionals of the unit quantum occupancy 1/(e^{|p|^2+x} + tau).
// All of them reduce to 1D radial integrals evaluated by the fixed-node
// panel quadrature in quadrature.hpp; every function below is a pure
// function of its arguments and safe to call concurrently.
//
// Domains: fermions accept any real x; bosons require x >= 0 (the integrand
// is singular or negative below), and x inside (0, 1e-12) is treated as 0
// for the s = 2, 4 integrals to avoid cancellation at the condensation edge.

/// h_tau(x) = integral over R^3 of 1/(e^{|p|^2+x} + tau) dp.
/// Strictly positive and strictly decreasing in x.
double moment0(Statistics tau, double x, const IntegralAccuracy& acc = {});

/// Integral over R^3 of |p|^2/(e^{|p|^2+x} + tau) dp.
double moment2(Statistics tau, double x, const IntegralAccuracy& acc = {});

/// j_tau(x) = moment0 / moment2^{3/5}. Strictly decreasing; for fermions
/// bounded above by j_limit_fermion().
double j_val(Statistics tau, double x, const IntegralAccuracy& acc = {});

/// Supremum of j for fermions, attained in the x -> -inf limit:
/// (4 pi)^{2/5} 5^{3/5} / 3.
double j_limit_fermion() noexcept;

/// Inverse of moment0 in x, by bracket expansion plus bisection.
/// Throws RangeError when the target is outside the achievable range
/// (target <= 0, or above moment0(boson, 0) in the Bose case).
double inv_moment0(Statistics tau, double target, const IntegralAccuracy& acc = {});

/// y(x) = h_{tau2}^{-1}( (m1^{3/2} N2 / (m2^{3/2} N1)) h_tau(x) ).
/// Propagates RangeError when the scaled target is infeasible at this x.
double y_of_x(Statistics tau, Statistics tau2, double m1, double m2,
              double N1, double N2, double x, const IntegralAccuracy& acc = {});

/// k_{tau,tau2}(x, y): ratio of the species-1 density integral to the 3/5
/// power of the mass-weighted sum of both energy integrals.
double k_val(Statistics tau, Statistics tau2, double m1, double m2,
             double x, double y, const IntegralAccuracy& acc = {});

/// g(x) = k(x, y(x)). Strictly decreasing on x >= admissible_lower_bound.
double g_val(Statistics tau, Statistics tau2, double m1, double m2,
             double N1, double N2, double x, const IntegralAccuracy& acc = {});

/// Lower end of the admissible domain of g:
/// max{ l(tau), h_tau^{-1}( (m2^{3/2} N1 / (m1^{3/2} N2)) h_{tau2}(l(tau2)) ) }.
/// Returns -inf for the fermion-fermion pair.
double admissible_lower_bound(Statistics tau, Statistics tau2, double m1, double m2,
                              double N1, double N2, const IntegralAccuracy& acc = {});

/// Supremum of g over the admissible domain when both species are fermions
/// (the x -> -inf limit, evaluated in closed form from the degenerate
/// asymptotics of the radial integrals).
double g_limit_fermion_fermion(double m1, double m2, double N1, double N2) noexcept;

/// D_tau(x) = (9/5) I2(x)^2 - I4(x) I0(x) built from the radial integrals
/// I_s = integral of r^s/(e^{r^2+x}+tau) dr. Negative on the whole domain.
/// Bosons require x > 0 here: the s = 0 integral diverges at x = 0.
double d_func(Statistics tau, double x, const IntegralAccuracy& acc = {});

namespace detail {

/// I_s(tau, x) = integral_0^inf r^s / (e^{r^2+x} + tau) dr for s in {0, 2, 4}.
double radial_integral(int s, Statistics tau, double x, const IntegralAccuracy& acc);

/// Cutoff rule: sqrt(max(0, 40 - x)) + 10.
double default_tail_cutoff(double x) noexcept;

}  // namespace detail
}  // namespace qbgk
