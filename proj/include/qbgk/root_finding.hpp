#pragma once

#include <cmath>
#include <cstdlib>

#include "qbgk/errors.hpp"

namespace qbgk {

struct BisectionOptions {
    int max_iterations = 200;
    // Converged when the bracket width drops below x_tol * max(1, |x|).
    double x_tol = 1e-13;
};

/// Bisection root of f(x) = target for a monotone decreasing f on [lo, hi].
/// Requires f(lo) >= target >= f(hi); no derivatives, unconditionally safe.
template <class F>
double bisect_decreasing(F&& f, double target, double lo, double hi,
                         const BisectionOptions& opts = {}) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == target) return lo;
    if (fhi == target) return hi;
    if (flo < target || fhi > target)
        throw ConvergenceError("bisection bracket does not enclose the target");
    for (int it = 0; it < opts.max_iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo < opts.x_tol * std::fmax(1.0, std::fabs(mid))) return mid;
        const double fm = f(mid);
        if (fm == target) return mid;
        if (fm > target)
            lo = mid;
        else
            hi = mid;
    }
    throw ConvergenceError("bisection failed to converge within the iteration cap");
}

}  // namespace qbgk
