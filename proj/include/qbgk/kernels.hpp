#pragma once

#include <cstddef>

#include "qbgk/moments.hpp"
#include "qbgk/momentum_grid.hpp"
#include "qbgk/statistics.hpp"

namespace qbgk {

/// Kernel execution policy. `parallel` uses OpenMP when compiled in and
/// falls back to the serial reference otherwise. Both back ends combine
/// per-slab partials in a fixed order, so results are bitwise identical
/// for any thread count.
enum class Exec { serial, parallel };

/// Policy used when none is specified: parallel if OpenMP is available.
Exec default_exec() noexcept;

/// Cap worker parallelism (the THREADS environment variable routes here).
/// Values < 1 reset to the hardware default.
void set_max_threads(int threads) noexcept;
int max_threads() noexcept;

namespace kernels {

/// Unweighted grid sums: n = sum f, p = sum f p, e2 = sum f |p|^2.
/// Odd moments of origin-symmetric fields are bitwise +0 by pair ordering.
struct RawMoments {
    double n = 0.0;
    double px = 0.0;
    double py = 0.0;
    double pz = 0.0;
    double e2 = 0.0;
};

RawMoments reduce_moments(const double* f, const MomentumGrid& grid, Exec exec);

/// sum over nodes of the entropy density s_tau(f); no cell-volume weight.
double reduce_entropy(const double* f, Statistics tau, const MomentumGrid& grid, Exec exec);

double reduce_max(const double* f, const MomentumGrid& grid, Exec exec);

/// Writes the equilibrium occupancy 1/(e^{m a |p/m - b|^2 + c} + tau).
void eval_equilibrium(double* out, const MomentumGrid& grid, double m, Statistics tau,
                      double a, const Vec3& b, double c, Exec exec);

/// f <- decay * f + wa * ma + wb * mb, elementwise.
void relax_combine(double* f, const double* ma, const double* mb, double decay,
                   double wa, double wb, const MomentumGrid& grid, Exec exec);

namespace serial_impl {
RawMoments reduce_moments(const double* f, const MomentumGrid& grid);
double reduce_entropy(const double* f, Statistics tau, const MomentumGrid& grid);
double reduce_max(const double* f, const MomentumGrid& grid);
void eval_equilibrium(double* out, const MomentumGrid& grid, double m, Statistics tau,
                      double a, const Vec3& b, double c);
void relax_combine(double* f, const double* ma, const double* mb, double decay,
                   double wa, double wb, const MomentumGrid& grid);
}  // namespace serial_impl

#if defined(QBGK_HAVE_OPENMP)
namespace omp_impl {
RawMoments reduce_moments(const double* f, const MomentumGrid& grid);
double reduce_entropy(const double* f, Statistics tau, const MomentumGrid& grid);
double reduce_max(const double* f, const MomentumGrid& grid);
void eval_equilibrium(double* out, const MomentumGrid& grid, double m, Statistics tau,
                      double a, const Vec3& b, double c);
void relax_combine(double* f, const double* ma, const double* mb, double decay,
                   double wa, double wb, const MomentumGrid& grid);
}  // namespace omp_impl
#endif

/// Shared post-processing: combine per-slab partials into RawMoments in
/// fixed index order (z-pairs for pz).
RawMoments combine_slab_moments(const double* sn, const double* spx, const double* spy,
                                const double* sexy, const MomentumGrid& grid);

/// Per-axis exponent tables for eval_equilibrium: vx[i] = (a/m) (p_i - m b_x)^2
/// and vz_c[k] = (a/m) (p_k - m b_z)^2 + c.
void exponent_tables(const MomentumGrid& grid, double m, double a, const Vec3& b, double c,
                     double* vx, double* vy, double* vzc);

}  // namespace kernels
}  // namespace qbgk
