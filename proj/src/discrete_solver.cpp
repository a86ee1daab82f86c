#include "qbgk/discrete_solver.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "qbgk/errors.hpp"

namespace qbgk {

namespace {

constexpr double kTolScaled = 5e-13;
constexpr double kFloorScaled = 1e-15;
constexpr int kMaxIterations = 60;

// Grid sums of the equilibrium M(a, b, c) and of the parameter-derivative
// weight w = M (1 - tau M), each against phi in {1, px, py, pz, |p|^2}.
struct FieldSums {
    std::array<double, 5> m_phi{};
    std::array<double, 5> w_phi{};
    std::array<double, 5> wu_phi{};                  // times u' = |p - m b|^2 / m
    std::array<std::array<double, 5>, 3> wq_phi{};   // times q_l = p_l - m b_l

    void add(const FieldSums& o) {
        for (int r = 0; r < 5; ++r) {
            m_phi[r] += o.m_phi[r];
            w_phi[r] += o.w_phi[r];
            wu_phi[r] += o.wu_phi[r];
            for (int l = 0; l < 3; ++l) wq_phi[l][r] += o.wq_phi[l][r];
        }
    }
};

struct AxisTables {
    std::vector<double> q;    // p_i - m b (per component: 3n entries)
    std::vector<double> zq2;  // (a/m) q^2 per component
};

FieldSums slab_field_sums(const MomentumGrid& grid, bool fermion, double tau,
                          const double* qx, const double* qy, const double* qz,
                          const double* zx, const double* zy, const double* zz,
                          double inv_m, double c, int k) {
    const int n = grid.n();
    const double* ax = grid.axis().data();
    const double* ax2 = grid.axis_sq().data();
    FieldSums s;
    const double pz = ax[k];
    const double pz2 = ax2[k];
    const double qzk = qz[k];
    const double zk = zz[k] + c;
    for (int j = 0; j < n; ++j) {
        const double py = ax[j];
        const double py2 = ax2[j];
        const double qyj = qy[j];
        const double zjk = zy[j] + zk;
        for (int i = 0; i < n; ++i) {
            const double z = zx[i] + zjk;
            const double M = fermion ? 1.0 / (std::exp(z) + 1.0) : 1.0 / std::expm1(z);
            const double w = M * (1.0 - tau * M);
            const double px = ax[i];
            const double p2 = ax2[i] + py2 + pz2;
            const double uprime = (qx[i] * qx[i] + qyj * qyj + qzk * qzk) * inv_m;
            const double phi[5] = {1.0, px, py, pz, p2};
            const double wq[3] = {w * qx[i], w * qyj, w * qzk};
            const double wu = w * uprime;
            for (int r = 0; r < 5; ++r) {
                s.m_phi[r] += M * phi[r];
                s.w_phi[r] += w * phi[r];
                s.wu_phi[r] += wu * phi[r];
                s.wq_phi[0][r] += wq[0] * phi[r];
                s.wq_phi[1][r] += wq[1] * phi[r];
                s.wq_phi[2][r] += wq[2] * phi[r];
            }
        }
    }
    return s;
}

FieldSums assemble_field_sums(const MomentumGrid& grid, double m, Statistics stat,
                              double a, const Vec3& b, double c, Exec exec) {
    const int n = grid.n();
    const bool fermion = is_fermion(stat);
    const double tau = occupancy_sign(stat);
    const double s = a / m;
    std::vector<double> qx(n), qy(n), qz(n), zx(n), zy(n), zz(n);
    for (int i = 0; i < n; ++i) {
        qx[i] = grid.coord(i) - m * b[0];
        qy[i] = grid.coord(i) - m * b[1];
        qz[i] = grid.coord(i) - m * b[2];
        zx[i] = s * qx[i] * qx[i];
        zy[i] = s * qy[i] * qy[i];
        zz[i] = s * qz[i] * qz[i];
    }
    std::vector<FieldSums> partial(static_cast<std::size_t>(n));
    const double inv_m = 1.0 / m;
#if defined(QBGK_HAVE_OPENMP)
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static) num_threads(max_threads())
        for (int k = 0; k < n; ++k)
            partial[k] = slab_field_sums(grid, fermion, tau, qx.data(), qy.data(), qz.data(),
                                         zx.data(), zy.data(), zz.data(), inv_m, c, k);
    } else
#endif
    {
        (void)exec;
        for (int k = 0; k < n; ++k)
            partial[k] = slab_field_sums(grid, fermion, tau, qx.data(), qy.data(), qz.data(),
                                         zx.data(), zy.data(), zz.data(), inv_m, c, k);
    }
    FieldSums total;
    for (int k = 0; k < n; ++k) total.add(partial[k]);
    return total;
}

/// In-place LU solve with partial pivoting; A row-major dim x dim.
bool lu_solve(double* A, double* rhs, int dim) {
    for (int col = 0; col < dim; ++col) {
        int piv = col;
        double best = std::fabs(A[col * dim + col]);
        for (int r = col + 1; r < dim; ++r) {
            const double v = std::fabs(A[r * dim + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) return false;
        if (piv != col) {
            for (int c = col; c < dim; ++c) std::swap(A[piv * dim + c], A[col * dim + c]);
            std::swap(rhs[piv], rhs[col]);
        }
        const double inv = 1.0 / A[col * dim + col];
        for (int r = col + 1; r < dim; ++r) {
            const double factor = A[r * dim + col] * inv;
            if (factor == 0.0) continue;
            A[r * dim + col] = 0.0;
            for (int c = col + 1; c < dim; ++c) A[r * dim + c] -= factor * A[col * dim + c];
            rhs[r] -= factor * rhs[col];
        }
    }
    for (int r = dim - 1; r >= 0; --r) {
        double v = rhs[r];
        for (int c = r + 1; c < dim; ++c) v -= A[r * dim + c] * rhs[c];
        rhs[r] = v / A[r * dim + r];
    }
    return true;
}

struct Scales {
    double n, p, e;
};

Scales residual_scales(const kernels::RawMoments& t) {
    const double pnorm = std::sqrt(t.px * t.px + t.py * t.py + t.pz * t.pz);
    const double pth = t.n * std::sqrt(std::fmax(t.e2 / std::fmax(t.n, 1e-300), 0.0));
    return {t.n, pth + pnorm, t.e2};
}

}  // namespace

IntraCoeffs refine_intra_discrete(const MomentumGrid& grid, double m, Statistics tau,
                                  const kernels::RawMoments& target, const IntraCoeffs& seed,
                                  Exec exec, DiscreteSolveReport* report) {
    double a = seed.a;
    Vec3 b = seed.b;
    double c = seed.c;
    const Scales sc = residual_scales(target);
    const double tgt[5] = {target.n, target.px, target.py, target.pz, target.e2};

    double prev_r = std::numeric_limits<double>::infinity();
    for (int it = 0; it < kMaxIterations; ++it) {
        const FieldSums S = assemble_field_sums(grid, m, tau, a, b, c, exec);
        double R[5];
        double r = 0.0;
        for (int rr = 0; rr < 5; ++rr) {
            R[rr] = S.m_phi[rr] - tgt[rr];
            const double scale = rr == 0 ? sc.n : (rr == 4 ? sc.e : sc.p);
            r = std::fmax(r, std::fabs(R[rr]) / scale);
        }
        if (report) {
            report->iterations = it;
            report->residual = r;
        }
        if (r <= kFloorScaled || (r <= kTolScaled && r >= 0.5 * prev_r)) {
            IntraCoeffs out = seed;
            out.a = a;
            out.b = b;
            out.c = c;
            return out;
        }
        prev_r = r;

        double J[25];
        for (int rr = 0; rr < 5; ++rr) {
            J[rr * 5 + 0] = -S.wu_phi[rr];
            for (int l = 0; l < 3; ++l) J[rr * 5 + 1 + l] = 2.0 * a * S.wq_phi[l][rr];
            J[rr * 5 + 4] = -S.w_phi[rr];
        }
        double delta[5] = {-R[0], -R[1], -R[2], -R[3], -R[4]};
        if (!lu_solve(J, delta, 5))
            throw ConvergenceError("discrete intra refinement: singular Jacobian");

        double lambda = 1.0;
        for (int halving = 0; halving < 12; ++halving) {
            const double a_new = a + lambda * delta[0];
            const double c_new = c + lambda * delta[4];
            if (a_new > 0.0 && (is_fermion(tau) || c_new > 0.0)) break;
            lambda *= 0.5;
        }
        a += lambda * delta[0];
        for (int l = 0; l < 3; ++l) b[l] += lambda * delta[1 + l];
        c += lambda * delta[4];
        if (!(a > 0.0) || (is_boson(tau) && !(c > 0.0)))
            throw ConvergenceError("discrete intra refinement left the parameter domain");
    }
    throw ConvergenceError("discrete intra refinement did not converge");
}

InterCoeffs refine_inter_discrete(const MomentumGrid& grid, double m1, Statistics tau1,
                                  double m2, Statistics tau2,
                                  const kernels::RawMoments& target1,
                                  const kernels::RawMoments& target2, const InterCoeffs& seed,
                                  Exec exec, DiscreteSolveReport* report) {
    double a = seed.a;
    Vec3 b = seed.b;
    double c12 = seed.c12;
    double c21 = seed.c21;

    const Scales sc1 = residual_scales(target1);
    const Scales sc2 = residual_scales(target2);
    const double p_scale = sc1.p + sc2.p;
    const double e_target = target1.e2 / (2.0 * m1) + target2.e2 / (2.0 * m2);
    const double e_scale = sc1.e / (2.0 * m1) + sc2.e / (2.0 * m2);
    const double p_target[3] = {target1.px + target2.px, target1.py + target2.py,
                                target1.pz + target2.pz};

    double prev_r = std::numeric_limits<double>::infinity();
    for (int it = 0; it < kMaxIterations; ++it) {
        const FieldSums S1 = assemble_field_sums(grid, m1, tau1, a, b, c12, exec);
        const FieldSums S2 = assemble_field_sums(grid, m2, tau2, a, b, c21, exec);

        double R[6];
        R[0] = S1.m_phi[0] - target1.n;
        R[1] = S2.m_phi[0] - target2.n;
        for (int l = 0; l < 3; ++l) R[2 + l] = S1.m_phi[1 + l] + S2.m_phi[1 + l] - p_target[l];
        R[5] = S1.m_phi[4] / (2.0 * m1) + S2.m_phi[4] / (2.0 * m2) - e_target;

        double r = std::fmax(std::fabs(R[0]) / sc1.n, std::fabs(R[1]) / sc2.n);
        for (int l = 0; l < 3; ++l) r = std::fmax(r, std::fabs(R[2 + l]) / p_scale);
        r = std::fmax(r, std::fabs(R[5]) / e_scale);
        if (report) {
            report->iterations = it;
            report->residual = r;
        }
        if (r <= kFloorScaled || (r <= kTolScaled && r >= 0.5 * prev_r)) {
            InterCoeffs out = seed;
            out.a = a;
            out.b = b;
            out.c12 = c12;
            out.c21 = c21;
            return out;
        }
        prev_r = r;

        // Columns: a, bx, by, bz, c12, c21.
        double J[36] = {0.0};
        J[0 * 6 + 0] = -S1.wu_phi[0];
        J[1 * 6 + 0] = -S2.wu_phi[0];
        J[0 * 6 + 4] = -S1.w_phi[0];
        J[1 * 6 + 5] = -S2.w_phi[0];
        for (int l = 0; l < 3; ++l) {
            J[0 * 6 + 1 + l] = 2.0 * a * S1.wq_phi[l][0];
            J[1 * 6 + 1 + l] = 2.0 * a * S2.wq_phi[l][0];
        }
        for (int row = 0; row < 3; ++row) {
            const int rr = 1 + row;  // phi index for momentum component `row`
            J[(2 + row) * 6 + 0] = -(S1.wu_phi[rr] + S2.wu_phi[rr]);
            for (int l = 0; l < 3; ++l)
                J[(2 + row) * 6 + 1 + l] = 2.0 * a * (S1.wq_phi[l][rr] + S2.wq_phi[l][rr]);
            J[(2 + row) * 6 + 4] = -S1.w_phi[rr];
            J[(2 + row) * 6 + 5] = -S2.w_phi[rr];
        }
        J[5 * 6 + 0] = -(S1.wu_phi[4] / (2.0 * m1) + S2.wu_phi[4] / (2.0 * m2));
        for (int l = 0; l < 3; ++l)
            J[5 * 6 + 1 + l] =
                2.0 * a * (S1.wq_phi[l][4] / (2.0 * m1) + S2.wq_phi[l][4] / (2.0 * m2));
        J[5 * 6 + 4] = -S1.w_phi[4] / (2.0 * m1);
        J[5 * 6 + 5] = -S2.w_phi[4] / (2.0 * m2);

        double delta[6];
        for (int i = 0; i < 6; ++i) delta[i] = -R[i];
        if (!lu_solve(J, delta, 6))
            throw ConvergenceError("discrete inter refinement: singular Jacobian");

        double lambda = 1.0;
        for (int halving = 0; halving < 12; ++halving) {
            const double a_new = a + lambda * delta[0];
            const double c12_new = c12 + lambda * delta[4];
            const double c21_new = c21 + lambda * delta[5];
            const bool ok = a_new > 0.0 && (is_fermion(tau1) || c12_new > 0.0) &&
                            (is_fermion(tau2) || c21_new > 0.0);
            if (ok) break;
            lambda *= 0.5;
        }
        a += lambda * delta[0];
        for (int l = 0; l < 3; ++l) b[l] += lambda * delta[1 + l];
        c12 += lambda * delta[4];
        c21 += lambda * delta[5];
        if (!(a > 0.0) || (is_boson(tau1) && !(c12 > 0.0)) || (is_boson(tau2) && !(c21 > 0.0)))
            throw ConvergenceError("discrete inter refinement left the parameter domain");
    }
    throw ConvergenceError("discrete inter refinement did not converge");
}

}  // namespace qbgk
