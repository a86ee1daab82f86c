#pragma once

// Per-slab building blocks shared by the serial reference kernels and the
// OpenMP kernels. A slab is one k-plane of n*n values. Each slab routine
// runs in a fixed serial order, so a kernel's result depends only on how the
// per-slab partials are combined -- which both back ends do serially in
// index order. Serial and parallel execution therefore agree bitwise for
// any thread count.
//
// Momentum sums pair mirrored indices (i, n-1-i) inside one expression.
// Mirrored axis coordinates are exact negations, so for fields symmetric
// about the origin each pair contributes +0.0 and odd moments come out
// bitwise zero. This requires -ffp-contract=off (no FMA re-rounding).

#include <cmath>

#include "qbgk/statistics.hpp"

namespace qbgk {
namespace kernels {
namespace detail {

struct SlabMoments {
    double n = 0.0;    // sum f
    double px = 0.0;   // sum f * px   (x-pair ordered)
    double py = 0.0;   // sum f * py   (y-pair ordered)
    double exy = 0.0;  // sum f * (px^2 + py^2)
};

inline SlabMoments slab_moments(const double* slab, const double* ax, const double* ax2,
                                int n) {
    SlabMoments s;
    const int half = n / 2;
    for (int jh = 0; jh < half; ++jh) {
        const int js[2] = {jh, n - 1 - jh};
        double ln[2], lx[2], le[2];
        for (int t = 0; t < 2; ++t) {
            const double* row = slab + static_cast<std::size_t>(js[t]) * n;
            double sn = 0.0, sx = 0.0, se = 0.0;
            for (int ih = 0; ih < half; ++ih) {
                const int i0 = ih;
                const int i1 = n - 1 - ih;
                const double t0 = row[i0];
                const double t1 = row[i1];
                sn += t0 + t1;
                sx += ax[i0] * t0 + ax[i1] * t1;
                se += ax2[i0] * t0 + ax2[i1] * t1;
            }
            ln[t] = sn;
            lx[t] = sx;
            le[t] = se;
        }
        s.n += ln[0] + ln[1];
        s.px += lx[0] + lx[1];
        s.py += ax[js[0]] * ln[0] + ax[js[1]] * ln[1];
        s.exy += (le[0] + ax2[js[0]] * ln[0]) + (le[1] + ax2[js[1]] * ln[1]);
    }
    return s;
}

inline double entropy_term(double f, bool fermion) {
    const double fl = std::fmax(f, 1e-300);
    if (fermion) {
        const double fc = std::fmin(fl, 1.0 - 1e-16);
        return fc * std::log(fc) + (1.0 - fc) * std::log1p(-fc);
    }
    return fl * std::log(fl) - (1.0 + fl) * std::log1p(fl);
}

inline double slab_entropy(const double* slab, int n, bool fermion) {
    double s = 0.0;
    const std::size_t count = static_cast<std::size_t>(n) * n;
    for (std::size_t i = 0; i < count; ++i) s += entropy_term(slab[i], fermion);
    return s;
}

inline double slab_max(const double* slab, int n) {
    double m = slab[0];
    const std::size_t count = static_cast<std::size_t>(n) * n;
    for (std::size_t i = 1; i < count; ++i) m = std::fmax(m, slab[i]);
    return m;
}

// vx[i] = (a/m) qx^2, vy[j] likewise, vzc[k] = (a/m) qz^2 + c; the exponent
// is z = vx + vy + vzc.
inline void eval_slab(double* slab, const double* vx, const double* vy, double vzc,
                      int n, bool fermion) {
    // Largest double below 1; keeps deeply degenerate fermion nodes strictly
    // under the occupancy bound after rounding.
    constexpr double kFermiCap = 1.0 - 0x1p-53;
    for (int j = 0; j < n; ++j) {
        double* row = slab + static_cast<std::size_t>(j) * n;
        const double vjk = vy[j] + vzc;
        if (fermion) {
            for (int i = 0; i < n; ++i)
                row[i] = std::fmin(1.0 / (std::exp(vx[i] + vjk) + 1.0), kFermiCap);
        } else {
            for (int i = 0; i < n; ++i) row[i] = 1.0 / std::expm1(vx[i] + vjk);
        }
    }
}

inline void combine_slab(double* f, const double* ma, const double* mb, double decay,
                         double wa, double wb, int n) {
    const std::size_t count = static_cast<std::size_t>(n) * n;
    for (std::size_t i = 0; i < count; ++i)
        f[i] = decay * f[i] + (wa * ma[i] + wb * mb[i]);
}

}  // namespace detail
}  // namespace kernels
}  // namespace qbgk
