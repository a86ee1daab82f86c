#include "qbgk/kernels.hpp"

#include <atomic>

#if defined(QBGK_HAVE_OPENMP)
#include <omp.h>
#endif

namespace qbgk {

namespace {
std::atomic<int> g_thread_cap{0};  // 0 = hardware default
}

Exec default_exec() noexcept {
#if defined(QBGK_HAVE_OPENMP)
    return Exec::parallel;
#else
    return Exec::serial;
#endif
}

void set_max_threads(int threads) noexcept { g_thread_cap.store(threads < 1 ? 0 : threads); }

int max_threads() noexcept {
#if defined(QBGK_HAVE_OPENMP)
    const int cap = g_thread_cap.load();
    const int hw = omp_get_max_threads();
    return cap == 0 ? hw : (cap < hw ? cap : hw);
#else
    return 1;
#endif
}

namespace kernels {

RawMoments reduce_moments(const double* f, const MomentumGrid& grid, Exec exec) {
#if defined(QBGK_HAVE_OPENMP)
    if (exec == Exec::parallel) return omp_impl::reduce_moments(f, grid);
#endif
    (void)exec;
    return serial_impl::reduce_moments(f, grid);
}

double reduce_entropy(const double* f, Statistics tau, const MomentumGrid& grid, Exec exec) {
#if defined(QBGK_HAVE_OPENMP)
    if (exec == Exec::parallel) return omp_impl::reduce_entropy(f, tau, grid);
#endif
    (void)exec;
    return serial_impl::reduce_entropy(f, tau, grid);
}

double reduce_max(const double* f, const MomentumGrid& grid, Exec exec) {
#if defined(QBGK_HAVE_OPENMP)
    if (exec == Exec::parallel) return omp_impl::reduce_max(f, grid);
#endif
    (void)exec;
    return serial_impl::reduce_max(f, grid);
}

void eval_equilibrium(double* out, const MomentumGrid& grid, double m, Statistics tau,
                      double a, const Vec3& b, double c, Exec exec) {
#if defined(QBGK_HAVE_OPENMP)
    if (exec == Exec::parallel) {
        omp_impl::eval_equilibrium(out, grid, m, tau, a, b, c);
        return;
    }
#endif
    (void)exec;
    serial_impl::eval_equilibrium(out, grid, m, tau, a, b, c);
}

void relax_combine(double* f, const double* ma, const double* mb, double decay,
                   double wa, double wb, const MomentumGrid& grid, Exec exec) {
#if defined(QBGK_HAVE_OPENMP)
    if (exec == Exec::parallel) {
        omp_impl::relax_combine(f, ma, mb, decay, wa, wb, grid);
        return;
    }
#endif
    (void)exec;
    serial_impl::relax_combine(f, ma, mb, decay, wa, wb, grid);
}

}  // namespace kernels
}  // namespace qbgk
