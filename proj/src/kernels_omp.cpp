#if defined(QBGK_HAVE_OPENMP)

#include <vector>

#include "kernels_detail.hpp"
#include "qbgk/kernels.hpp"

// OpenMP back end: one slab per loop iteration, partials stored by slab
// index and combined serially, so any thread count reproduces the serial
// reference bitwise.

namespace qbgk {
namespace kernels {
namespace omp_impl {

RawMoments reduce_moments(const double* f, const MomentumGrid& grid) {
    const int n = grid.n();
    const double* ax = grid.axis().data();
    const double* ax2 = grid.axis_sq().data();
    std::vector<double> sn(n), spx(n), spy(n), sexy(n);
    const std::size_t slab_len = static_cast<std::size_t>(n) * n;
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (int k = 0; k < n; ++k) {
        const detail::SlabMoments s = detail::slab_moments(f + k * slab_len, ax, ax2, n);
        sn[k] = s.n;
        spx[k] = s.px;
        spy[k] = s.py;
        sexy[k] = s.exy;
    }
    return combine_slab_moments(sn.data(), spx.data(), spy.data(), sexy.data(), grid);
}

double reduce_entropy(const double* f, Statistics tau, const MomentumGrid& grid) {
    const int n = grid.n();
    const bool fermion = is_fermion(tau);
    const std::size_t slab_len = static_cast<std::size_t>(n) * n;
    std::vector<double> partial(n);
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (int k = 0; k < n; ++k)
        partial[k] = detail::slab_entropy(f + k * slab_len, n, fermion);
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += partial[k];
    return s;
}

double reduce_max(const double* f, const MomentumGrid& grid) {
    const int n = grid.n();
    const std::size_t slab_len = static_cast<std::size_t>(n) * n;
    std::vector<double> partial(n);
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (int k = 0; k < n; ++k)
        partial[k] = detail::slab_max(f + k * slab_len, n);
    double m = partial[0];
    for (int k = 1; k < n; ++k) m = std::fmax(m, partial[k]);
    return m;
}

void eval_equilibrium(double* out, const MomentumGrid& grid, double m, Statistics tau,
                      double a, const Vec3& b, double c) {
    const int n = grid.n();
    std::vector<double> vx(n), vy(n), vzc(n);
    exponent_tables(grid, m, a, b, c, vx.data(), vy.data(), vzc.data());
    const bool fermion = is_fermion(tau);
    const std::size_t slab_len = static_cast<std::size_t>(n) * n;
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (int k = 0; k < n; ++k)
        detail::eval_slab(out + k * slab_len, vx.data(), vy.data(), vzc[k], n, fermion);
}

void relax_combine(double* f, const double* ma, const double* mb, double decay,
                   double wa, double wb, const MomentumGrid& grid) {
    const int n = grid.n();
    const std::size_t slab_len = static_cast<std::size_t>(n) * n;
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (int k = 0; k < n; ++k)
        detail::combine_slab(f + k * slab_len, ma + k * slab_len, mb + k * slab_len,
                             decay, wa, wb, n);
}

}  // namespace omp_impl
}  // namespace kernels
}  // namespace qbgk

#endif  // QBGK_HAVE_OPENMP
