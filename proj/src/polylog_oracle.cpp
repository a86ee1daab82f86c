#include "qbgk/polylog_oracle.hpp"

#include <cmath>
#include <numbers>

#include "qbgk/errors.hpp"

namespace qbgk {
namespace oracle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeta32 = 2.6123753486854883;
constexpr double kZeta52 = 1.3414872572509171;

double eta_of(double zeta, double s) { return (1.0 - std::pow(2.0, 1.0 - s)) * zeta; }

// Equispaced midpoint rule for 4 pi * integral_0^inf r^mom_pow f(r) dr with
// f = 1/(e^{r^2+x}+1). Step shrinks with |x| to keep the nearest integrand
// pole at least ~40/(2 pi) steps away from the real axis.
double fermion_midpoint(int mom_pow, double x) {
    const double ax = std::fabs(x);
    double h = 0.05;
    const double pole_dist = kPi * kPi / (40.0 * std::sqrt(std::fmax(ax, 1.0)));
    if (pole_dist < h) h = pole_dist;
    const double r_max = std::sqrt(std::fmax(0.0, -x) + 45.0);
    const long n = static_cast<long>(std::ceil(r_max / h));
    double sum = 0.0;
    for (long i = 0; i < n; ++i) {
        const double r = (static_cast<double>(i) + 0.5) * h;
        const double z = r * r + x;
        double num = r * r;
        if (mom_pow == 4) num *= r * r;
        sum += num / (std::exp(z) + 1.0);
    }
    return 4.0 * kPi * h * sum;
}

}  // namespace

double polylog_series(double s, double z) {
    if (std::fabs(z) >= 1.0)
        throw DomainError("polylog series requires |z| < 1");
    double sum = 0.0;
    double zk = 1.0;
    for (int k = 1; k < 100000; ++k) {
        zk *= z;
        const double term = zk / std::pow(static_cast<double>(k), s);
        sum += term;
        if (std::fabs(term) < 1e-16) return sum;
    }
    throw ConvergenceError("polylog series did not reach the term cutoff");
}

double moment0_reference(Statistics tau, double x) {
    const double c = std::pow(kPi, 1.5);
    if (is_fermion(tau)) {
        if (x < 0.0) return fermion_midpoint(2, x);
        if (x == 0.0) return c * eta_of(kZeta32, 1.5);
        return -c * polylog_series(1.5, -std::exp(-x));
    }
    if (x < 0.0) throw DomainError("Bose reference requires x >= 0");
    if (x == 0.0) return c * kZeta32;
    return c * polylog_series(1.5, std::exp(-x));
}

double moment2_reference(Statistics tau, double x) {
    const double c = 1.5 * std::pow(kPi, 1.5);
    if (is_fermion(tau)) {
        if (x < 0.0) return fermion_midpoint(4, x);
        if (x == 0.0) return c * eta_of(kZeta52, 2.5);
        return -c * polylog_series(2.5, -std::exp(-x));
    }
    if (x < 0.0) throw DomainError("Bose reference requires x >= 0");
    if (x == 0.0) return c * kZeta52;
    return c * polylog_series(2.5, std::exp(-x));
}

double j_reference(Statistics tau, double x) {
    return moment0_reference(tau, x) / std::pow(moment2_reference(tau, x), 0.6);
}

}  // namespace oracle
}  // namespace qbgk
