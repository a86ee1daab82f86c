#include <vector>

#include "kernels_detail.hpp"
#include "qbgk/kernels.hpp"

namespace qbgk {
namespace kernels {

RawMoments combine_slab_moments(const double* sn, const double* spx, const double* spy,
                                const double* sexy, const MomentumGrid& grid) {
    const int n = grid.n();
    const auto az = grid.axis();
    const auto az2 = grid.axis_sq();
    RawMoments out;
    for (int k = 0; k < n; ++k) {
        out.n += sn[k];
        out.px += spx[k];
        out.py += spy[k];
        out.e2 += sexy[k] + az2[static_cast<std::size_t>(k)] * sn[k];
    }
    for (int kh = 0; kh < n / 2; ++kh) {
        const int k0 = kh;
        const int k1 = n - 1 - kh;
        out.pz += az[static_cast<std::size_t>(k0)] * sn[k0] +
                  az[static_cast<std::size_t>(k1)] * sn[k1];
    }
    return out;
}

void exponent_tables(const MomentumGrid& grid, double m, double a, const Vec3& b, double c,
                     double* vx, double* vy, double* vzc) {
    const int n = grid.n();
    const double s = a / m;
    for (int i = 0; i < n; ++i) {
        const double qx = grid.coord(i) - m * b[0];
        const double qy = grid.coord(i) - m * b[1];
        const double qz = grid.coord(i) - m * b[2];
        vx[i] = s * qx * qx;
        vy[i] = s * qy * qy;
        vzc[i] = s * qz * qz + c;
    }
}

namespace serial_impl {

RawMoments reduce_moments(const double* f, const MomentumGrid& grid) {
    const int n = grid.n();
    const double* ax = grid.axis().data();
    const double* ax2 = grid.axis_sq().data();
    std::vector<double> sn(n), spx(n), spy(n), sexy(n);
    const std::size_t slab_len = static_cast<std::size_t>(n) * n;
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
    for (int k = 0; k < n; ++k)
        partial[k] = detail::slab_entropy(f + k * slab_len, n, fermion);
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += partial[k];
    return s;
}

double reduce_max(const double* f, const MomentumGrid& grid) {
    const int n = grid.n();
    const std::size_t slab_len = static_cast<std::size_t>(n) * n;
    double m = f[0];
    for (int k = 0; k < n; ++k)
        m = std::fmax(m, detail::slab_max(f + k * slab_len, n));
    return m;
}

void eval_equilibrium(double* out, const MomentumGrid& grid, double m, Statistics tau,
                      double a, const Vec3& b, double c) {
    const int n = grid.n();
    std::vector<double> vx(n), vy(n), vzc(n);
    exponent_tables(grid, m, a, b, c, vx.data(), vy.data(), vzc.data());
    const bool fermion = is_fermion(tau);
    const std::size_t slab_len = static_cast<std::size_t>(n) * n;
    for (int k = 0; k < n; ++k)
        detail::eval_slab(out + k * slab_len, vx.data(), vy.data(), vzc[k], n, fermion);
}

void relax_combine(double* f, const double* ma, const double* mb, double decay,
                   double wa, double wb, const MomentumGrid& grid) {
    const int n = grid.n();
    const std::size_t slab_len = static_cast<std::size_t>(n) * n;
    for (int k = 0; k < n; ++k)
        detail::combine_slab(f + k * slab_len, ma + k * slab_len, mb + k * slab_len,
                             decay, wa, wb, n);
}

}  // namespace serial_impl
}  // namespace kernels
}  // namespace qbgk
