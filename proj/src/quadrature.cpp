#include "qbgk/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace qbgk {
namespace quad {

namespace {

// 20-point Gauss-Legendre abscissas (positive half) and weights on [-1, 1].
constexpr int kHalf = 10;
constexpr double kNodes[kHalf] = {
    0.07652652113349733, 0.22778585114164507, 0.37370608871541955,
    0.51086700195082710, 0.63605368072651503, 0.74633190646015079,
    0.83911697182221882, 0.91223442825132591, 0.96397192727791379,
    0.99312859918509492,
};
constexpr double kWeights[kHalf] = {
    0.15275338713072585, 0.14917298647260375, 0.14209610931838205,
    0.13168863844917663, 0.11819453196151842, 0.10193011981724044,
    0.08327674157670475, 0.06267204833410906, 0.04060142980038694,
    0.01761400713915212,
};

double panel(double a, double b, const std::function<double(double)>& f) {
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < kHalf; ++i) {
        const double d = hw * kNodes[i];
        s += kWeights[i] * (f(mid - d) + f(mid + d));
    }
    return hw * s;
}

}  // namespace

double default_origin_edge() { return 0x1p-12; }

double panels_0_to(double cutoff, double origin_edge,
                   const std::function<double(double)>& f) {
    if (cutoff <= 0.0) return 0.0;
    double sum = 0.0;
    // Geometric panels [e, 2e] from origin_edge up to min(1, cutoff).
    double hi = std::min(1.0, cutoff);
    double lo = std::min(origin_edge, hi);
    sum += panel(0.0, lo, f);
    while (lo < hi) {
        const double next = std::min(2.0 * lo, hi);
        sum += panel(lo, next, f);
        lo = next;
    }
    // Uniform panels of width 0.5 from 1 to cutoff.
    while (lo < cutoff) {
        const double next = std::min(lo + 0.5, cutoff);
        sum += panel(lo, next, f);
        lo = next;
    }
    return sum;
}

}  // namespace quad
}  // namespace qbgk
