#include "qbgk/quantum_integrals.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qbgk/errors.hpp"
#include "qbgk/root_finding.hpp"

namespace qbgk {

namespace {

constexpr double kPi = std::numbers::pi;
// Bose x below this is treated as exactly 0 for the s = 2, 4 integrals.
constexpr double kBoseZeroClamp = 1e-12;
// Numeric stand-in for the fermion domain end l(+1) = -inf.
constexpr double kFermionClamp = -50.0;
constexpr double kFermionExpandFloor = -1.0e6;

void validate_accuracy(const IntegralAccuracy& acc) {
    if (!(acc.rel_tol > 0.0))
        throw AccuracyError("IntegralAccuracy.rel_tol must be positive");
    if (acc.rel_tol < 1e-15)
        throw AccuracyError("requested rel_tol below double-precision quadrature floor");
}

double origin_edge_for(Statistics tau, double x) {
    // Bose integrands vary on the scale sqrt(x) near the origin; refine the
    // first panels to that scale so small fugacities stay accurate.
    if (is_boson(tau) && x > 0.0 && x < 1e-5) {
        const double want = std::sqrt(x) / 8.0;
        double e = quad::default_origin_edge();
        while (e > want && e > 0x1p-26) e *= 0.5;
        return e;
    }
    return quad::default_origin_edge();
}

}  // namespace

namespace detail {

double default_tail_cutoff(double x) noexcept {
    return std::sqrt(std::fmax(0.0, 40.0 - x)) + 10.0;
}

double radial_integral(int s, Statistics tau, double x, const IntegralAccuracy& acc) {
    validate_accuracy(acc);
    if (is_boson(tau)) {
        if (x < 0.0)
            throw DomainError("Bose integral requires x >= 0 (integrand singular below)");
        if (s == 0 && x == 0.0)
            throw DomainError("Bose s=0 radial integral diverges at x = 0");
        if (s != 0 && x < kBoseZeroClamp) x = 0.0;
    }
    const double cutoff =
        acc.tail_cutoff > 0.0 ? acc.tail_cutoff : default_tail_cutoff(x);
    const double edge = origin_edge_for(tau, x);
    const bool fermion = is_fermion(tau);
    const auto f = [=](double r) {
        const double z = r * r + x;
        const double den = fermion ? std::exp(z) + 1.0 : std::expm1(z);
        double num = 1.0;
        if (s >= 2) num = r * r;
        if (s == 4) num *= r * r;
        return num / den;
    };
    const double result = quad::panels_0_to(cutoff, edge, f);
    // Tail bound: integrand decays at least like e^{-(r^2+x)} past the
    // cutoff, so the dropped mass is below c^{s-1} e^{-(c^2+x)}.
    const double log_tail =
        -(cutoff * cutoff + x) + (s - 1) * std::log(cutoff);
    if (result > 0.0 && log_tail > std::log(acc.rel_tol) + std::log(result))
        throw AccuracyError("tail_cutoff too small for requested rel_tol");
    return result;
}

}  // namespace detail

double moment0(Statistics tau, double x, const IntegralAccuracy& acc) {
    return 4.0 * kPi * detail::radial_integral(2, tau, x, acc);
}

double moment2(Statistics tau, double x, const IntegralAccuracy& acc) {
    return 4.0 * kPi * detail::radial_integral(4, tau, x, acc);
}

double j_val(Statistics tau, double x, const IntegralAccuracy& acc) {
    return moment0(tau, x, acc) / std::pow(moment2(tau, x, acc), 0.6);
}

double j_limit_fermion() noexcept {
    return std::pow(4.0 * kPi, 0.4) * std::pow(5.0, 0.6) / 3.0;
}

double inv_moment0(Statistics tau, double target, const IntegralAccuracy& acc) {
    if (!(target > 0.0))
        throw RangeError("inv_moment0 target must be positive");
    const auto h = [&](double x) { return moment0(tau, x, acc); };
    double lo, hi;
    if (is_boson(tau)) {
        const double hmax = h(0.0);
        if (target > hmax) {
            if (target <= hmax * (1.0 + 1e-10)) return 0.0;
            throw RangeError("inv_moment0 target exceeds moment0(boson, 0), the Bose maximum");
        }
        lo = 0.0;
        hi = 1.0;
        while (h(hi) > target) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e9) throw ConvergenceError("inv_moment0 bracket expansion failed upward");
        }
    } else {
        lo = kFermionClamp;
        while (h(lo) < target) {
            lo *= 2.0;
            if (lo < kFermionExpandFloor)
                throw ConvergenceError("inv_moment0 bracket expansion failed downward");
        }
        hi = 50.0;
        while (h(hi) > target) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e6) throw ConvergenceError("inv_moment0 bracket expansion failed upward");
        }
    }
    return bisect_decreasing(h, target, lo, hi);
}

double y_of_x(Statistics tau, Statistics tau2, double m1, double m2,
              double N1, double N2, double x, const IntegralAccuracy& acc) {
    if (!(m1 > 0.0) || !(m2 > 0.0)) throw DomainError("masses must be positive");
    if (!(N1 > 0.0) || !(N2 > 0.0)) throw DomainError("densities must be positive");
    const double scale = std::pow(m1, 1.5) * N2 / (std::pow(m2, 1.5) * N1);
    return inv_moment0(tau2, scale * moment0(tau, x, acc), acc);
}

double k_val(Statistics tau, Statistics tau2, double m1, double m2,
             double x, double y, const IntegralAccuracy& acc) {
    const double m132 = std::pow(m1, 1.5);
    const double m232 = std::pow(m2, 1.5);
    const double num = m132 * moment0(tau, x, acc);
    const double den = m132 * moment2(tau, x, acc) + m232 * moment2(tau2, y, acc);
    return num / std::pow(den, 0.6);
}

double admissible_lower_bound(Statistics tau, Statistics tau2, double m1, double m2,
                              double N1, double N2, const IntegralAccuracy& acc) {
    if (is_fermion(tau2)) return domain_lower_limit(tau);
    // tau2 boson: need y(x) >= 0, i.e. the scaled density target within the
    // Bose range, which pins x at h_tau^{-1}(ratio * h_{-1}(0)).
    const double ratio = std::pow(m2, 1.5) * N1 / (std::pow(m1, 1.5) * N2);
    const double target = ratio * moment0(Statistics::boson, 0.0, acc);
    if (is_boson(tau) && target >= moment0(Statistics::boson, 0.0, acc)) {
        // ratio >= 1: every x >= 0 admissible.
        return 0.0;
    }
    return inv_moment0(tau, target, acc);
}

double g_limit_fermion_fermion(double m1, double m2, double N1, double N2) noexcept {
    // Degenerate limit of both radial integrals: I2 ~ rho^3/3, I4 ~ rho^5/5
    // with the species-2 radius fixed by the density ratio.
    const double kappa = std::pow(m1, 1.5) * N2 / (std::pow(m2, 1.5) * N1);
    const double m132 = std::pow(m1, 1.5);
    const double m232 = std::pow(m2, 1.5);
    return (4.0 * kPi / 3.0) * m132 *
           std::pow((4.0 * kPi / 5.0) * (m132 + m232 * std::pow(kappa, 5.0 / 3.0)), -0.6);
}

double g_val(Statistics tau, Statistics tau2, double m1, double m2,
             double N1, double N2, double x, const IntegralAccuracy& acc) {
    const double lo = admissible_lower_bound(tau, tau2, m1, m2, N1, N2, acc);
    if (std::isfinite(lo) && x < lo - 1e-12 * std::fmax(1.0, std::fabs(lo)))
        throw DomainError("g_val argument below the admissible domain boundary");
    const double y = y_of_x(tau, tau2, m1, m2, N1, N2, x, acc);
    return k_val(tau, tau2, m1, m2, x, y, acc);
}

double d_func(Statistics tau, double x, const IntegralAccuracy& acc) {
    if (is_boson(tau) && !(x > 0.0))
        throw DomainError("d_func requires x > 0 for bosons (s=0 integral diverges at 0)");
    const double i0 = detail::radial_integral(0, tau, x, acc);
    const double i2 = detail::radial_integral(2, tau, x, acc);
    const double i4 = detail::radial_integral(4, tau, x, acc);
    return 1.8 * i2 * i2 - i4 * i0;
}

}  // namespace qbgk
