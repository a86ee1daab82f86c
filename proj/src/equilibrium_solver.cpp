#include "qbgk/equilibrium_solver.hpp"

#include <cmath>
#include <utility>

#include "qbgk/errors.hpp"
#include "qbgk/quantum_integrals.hpp"
#include "qbgk/root_finding.hpp"

namespace qbgk {

namespace {

constexpr double kFermionClamp = -50.0;
constexpr double kFermionExpandFloor = -1.0e6;
constexpr double kBoundaryBand = 1e-12;
constexpr double kDensityFloor = 1e-300;

struct IntraAnalysis {
    double e_int = 0.0;
    double target = 0.0;
    double bound = 0.0;
    bool feasible = false;
    bool at_boundary = false;  // fermion equality band: accept with clamp
    std::string reason;
};

IntraAnalysis analyze_intra(double m, Statistics tau, const SpeciesMoments& mom,
                            const IntegralAccuracy& acc) {
    IntraAnalysis an;
    if (!(m > 0.0)) throw DomainError("species mass must be positive");
    if (!(mom.N >= kDensityFloor)) {
        an.reason = "degenerate density";
        return an;
    }
    an.e_int = internal_energy_scalar(m, mom);
    if (!(an.e_int > 0.0)) {
        an.reason = "nonpositive internal energy";
        return an;
    }
    an.target = mom.N / std::pow(an.e_int, 0.6);
    if (is_fermion(tau)) {
        an.bound = j_limit_fermion();
        an.at_boundary = std::fabs(an.target - an.bound) <= kBoundaryBand * an.bound;
        an.feasible = an.at_boundary || an.target < an.bound;
        if (!an.feasible) an.reason = "density-energy ratio above the fermion degenerate limit";
    } else {
        an.bound = j_val(tau, 0.0, acc);
        an.feasible = an.target < an.bound * (1.0 - kBoundaryBand);
        if (!an.feasible) an.reason = "density-energy ratio at or above the Bose condensation boundary";
    }
    return an;
}

struct InterAnalysis {
    double e_mix = 0.0;
    double target = 0.0;
    double x_lo = 0.0;      // admissible-domain lower bound (may be -inf)
    double x_start = 0.0;   // nudged bracket start (finite)
    bool feasible = false;
    bool at_boundary = false;
    std::string reason;
};

// Expects the fermion-first normalized ordering.
InterAnalysis analyze_inter(double m1, double m2, Statistics tau1, Statistics tau2,
                            const SpeciesMoments& mom1, const SpeciesMoments& mom2,
                            const IntegralAccuracy& acc) {
    InterAnalysis an;
    if (!(m1 > 0.0) || !(m2 > 0.0)) throw DomainError("species masses must be positive");
    if (!(mom1.N >= kDensityFloor) || !(mom2.N >= kDensityFloor)) {
        an.reason = "degenerate density";
        return an;
    }
    const Vec3 ptot = mom1.P + mom2.P;
    const double mass_density = m1 * mom1.N + m2 * mom2.N;
    an.e_mix = 2.0 * mom1.E + 2.0 * mom2.E - norm2(ptot) / mass_density;
    if (!(an.e_mix > 0.0)) {
        an.reason = "nonpositive mixture internal energy";
        return an;
    }
    an.target = mom1.N / std::pow(an.e_mix, 0.6);

    an.x_lo = admissible_lower_bound(tau1, tau2, m1, m2, mom1.N, mom2.N, acc);
    const bool any_boson = is_boson(tau1) || is_boson(tau2);
    if (!any_boson) {
        // Fermion-fermion: boundary value is the x -> -inf limit of g.
        const double sup = g_limit_fermion_fermion(m1, m2, mom1.N, mom2.N);
        an.x_start = kFermionClamp;
        an.at_boundary = std::fabs(an.target - sup) <= kBoundaryBand * sup;
        an.feasible = an.at_boundary || an.target < sup;
        if (!an.feasible) an.reason = "mixture ratio above the fermion-fermion degenerate limit";
    } else {
        an.x_start = an.x_lo + 1e-12 * std::fmax(1.0, std::fabs(an.x_lo));
        const double boundary_val =
            g_val(tau1, tau2, m1, m2, mom1.N, mom2.N, an.x_start, acc);
        an.feasible = an.target < boundary_val * (1.0 - kBoundaryBand);
        if (!an.feasible)
            an.reason = "mixture ratio at or above the admissible boundary value "
                        "(Bose condensation edge)";
    }
    return an;
}

double momentum_scale(double mass_density, double energy, const Vec3& p) {
    return mass_density * std::sqrt(2.0 * energy / mass_density) + norm(p);
}

}  // namespace

double internal_energy_scalar(double m, const SpeciesMoments& mom) {
    return 2.0 * m * mom.E - norm2(mom.P) / mom.N;
}

bool check_feasibility_intra(double m, Statistics tau, const SpeciesMoments& mom,
                             const IntegralAccuracy& acc) {
    return analyze_intra(m, tau, mom, acc).feasible;
}

IntraCoeffs solve_intra(double m, Statistics tau, const SpeciesMoments& mom,
                        const IntegralAccuracy& acc) {
    const IntraAnalysis an = analyze_intra(m, tau, mom, acc);
    if (!an.feasible) throw FeasibilityError(an.reason);

    IntraCoeffs out;
    int evals = 0;
    const auto j = [&](double x) {
        ++evals;
        return j_val(tau, x, acc);
    };

    double c;
    bool clamped = false;
    if (is_fermion(tau) && an.at_boundary) {
        c = kFermionClamp;
        clamped = true;
    } else {
        double lo = is_fermion(tau) ? kFermionClamp : 0.0;
        if (is_fermion(tau)) {
            while (j(lo) < an.target) {
                lo *= 2.0;
                if (lo < kFermionExpandFloor) break;
            }
            if (lo < kFermionExpandFloor) {
                // Within round-off of the degenerate limit.
                c = kFermionClamp;
                clamped = true;
                lo = kFermionClamp;
            }
        }
        if (!clamped) {
            double hi = lo + 1.0;
            double step = 1.0;
            while (j(hi) > an.target) {
                lo = hi;
                hi += step;
                step *= 2.0;
                if (hi > 1e4)
                    throw ConvergenceError("solve_intra bracket expansion failed upward");
            }
            c = bisect_decreasing(j, an.target, lo, hi);
        } else {
            c = kFermionClamp;
        }
    }

    out.c = c;
    out.a = m * std::pow(moment0(tau, c, acc), 2.0 / 3.0) * std::pow(mom.N, -2.0 / 3.0);
    out.b = (1.0 / (m * mom.N)) * mom.P;
    out.iterations = evals;
    out.clamped = clamped;
    return out;
}

bool check_feasibility_inter(const MixtureProblem& prob, const IntegralAccuracy& acc) {
    const bool swap = is_boson(prob.tau1) && is_fermion(prob.tau2);
    if (swap)
        return analyze_inter(prob.m2, prob.m1, prob.tau2, prob.tau1, prob.mom2, prob.mom1, acc)
            .feasible;
    return analyze_inter(prob.m1, prob.m2, prob.tau1, prob.tau2, prob.mom1, prob.mom2, acc)
        .feasible;
}

InterCoeffs solve_inter(const MixtureProblem& prob, const InterSolveOptions& opts) {
    // Fermion-boson pairs are solved fermion-first; restore caller order at the end.
    const bool swap = is_boson(prob.tau1) && is_fermion(prob.tau2);
    const double m1 = swap ? prob.m2 : prob.m1;
    const double m2 = swap ? prob.m1 : prob.m2;
    const Statistics tau1 = swap ? prob.tau2 : prob.tau1;
    const Statistics tau2 = swap ? prob.tau1 : prob.tau2;
    const SpeciesMoments& mom1 = swap ? prob.mom2 : prob.mom1;
    const SpeciesMoments& mom2 = swap ? prob.mom1 : prob.mom2;
    const IntegralAccuracy& acc = opts.accuracy;

    const InterAnalysis an = analyze_inter(m1, m2, tau1, tau2, mom1, mom2, acc);
    if (!an.feasible) throw FeasibilityError(an.reason);

    int evals = 0;
    const auto g = [&](double x) {
        ++evals;
        return g_val(tau1, tau2, m1, m2, mom1.N, mom2.N, x, acc);
    };

    double c12;
    bool clamped = false;
    double lo = an.x_start;
    if (is_fermion(tau1) && is_fermion(tau2) && an.at_boundary) {
        c12 = kFermionClamp;
        clamped = true;
    } else {
        if (is_fermion(tau1) && is_fermion(tau2)) {
            while (g(lo) < an.target) {
                lo *= 2.0;
                if (lo < kFermionExpandFloor) break;
            }
            if (lo < kFermionExpandFloor) {
                lo = kFermionClamp;
                clamped = true;
            }
        }
        if (!clamped) {
            double hi = lo + opts.bracket_step;
            double step = opts.bracket_step;
            while (g(hi) > an.target) {
                lo = hi;
                hi += step;
                step *= 2.0;
                if (hi > 1e4)
                    throw ConvergenceError(
                        "solve_inter bracket expansion failed upward (g never fell below "
                        "the mixture ratio)");
            }
            c12 = bisect_decreasing(g, an.target, lo, hi);
        } else {
            c12 = kFermionClamp;
        }
    }

    const double c21 = y_of_x(tau1, tau2, m1, m2, mom1.N, mom2.N, c12, acc);
    const double e_sum = std::pow(m1, 1.5) * moment2(tau1, c12, acc) +
                         std::pow(m2, 1.5) * moment2(tau2, c21, acc);

    InterCoeffs out;
    out.a = std::pow(e_sum / an.e_mix, 0.4);
    out.b = (1.0 / (m1 * mom1.N + m2 * mom2.N)) * (mom1.P + mom2.P);
    out.c12 = swap ? c21 : c12;
    out.c21 = swap ? c12 : c21;
    out.iterations = evals;
    out.clamped = clamped;
    return out;
}

SpeciesMoments equilibrium_moments(double m, Statistics tau, double a, const Vec3& b,
                                   double c, const IntegralAccuracy& acc) {
    if (!(a > 0.0)) throw DomainError("equilibrium scale a must be positive");
    if (is_boson(tau) && !(c > 0.0))
        throw DomainError("Bose equilibrium requires c > 0");
    const double m32 = std::pow(m, 1.5);
    SpeciesMoments mom;
    mom.N = m32 * std::pow(a, -1.5) * moment0(tau, c, acc);
    mom.P = (m * mom.N) * b;
    mom.E = 0.5 * m32 * std::pow(a, -2.5) * moment2(tau, c, acc) +
            0.5 * m * mom.N * norm2(b);
    return mom;
}

ConstraintReport verify_coeffs(const IntraCoeffs& coeffs, double m, Statistics tau,
                               const SpeciesMoments& mom, double tol,
                               const IntegralAccuracy& acc) {
    const SpeciesMoments model = equilibrium_moments(m, tau, coeffs.a, coeffs.b, coeffs.c, acc);
    const double pscale = momentum_scale(m * mom.N, std::fmax(mom.E, 1e-300), mom.P);
    ConstraintReport rep;
    rep.tol = tol;
    rep.residuals = {
        {"density", std::fabs(model.N - mom.N) / mom.N},
        {"momentum", norm(model.P - mom.P) / pscale},
        {"energy", std::fabs(model.E - mom.E) / mom.E},
    };
    for (const auto& r : rep.residuals) rep.max_residual = std::fmax(rep.max_residual, r.residual);
    rep.pass = rep.max_residual <= tol;
    return rep;
}

ConstraintReport verify_coeffs(const InterCoeffs& coeffs, const MixtureProblem& prob,
                               double tol, const IntegralAccuracy& acc) {
    const double m132 = std::pow(prob.m1, 1.5);
    const double m232 = std::pow(prob.m2, 1.5);
    const double a = coeffs.a;
    const double n1_model = m132 * std::pow(a, -1.5) * moment0(prob.tau1, coeffs.c12, acc);
    const double n2_model = m232 * std::pow(a, -1.5) * moment0(prob.tau2, coeffs.c21, acc);
    const double mass_density_model = prob.m1 * n1_model + prob.m2 * n2_model;
    const Vec3 p_model = mass_density_model * coeffs.b;
    const double e_model = 0.5 * std::pow(a, -2.5) *
                               (m132 * moment2(prob.tau1, coeffs.c12, acc) +
                                m232 * moment2(prob.tau2, coeffs.c21, acc)) +
                           0.5 * mass_density_model * norm2(coeffs.b);

    const Vec3 ptot = prob.mom1.P + prob.mom2.P;
    const double etot = prob.mom1.E + prob.mom2.E;
    const double mass_density = prob.m1 * prob.mom1.N + prob.m2 * prob.mom2.N;
    const double pscale = momentum_scale(mass_density, etot, ptot);

    const double ratio_model =
        m132 * moment0(prob.tau1, coeffs.c12, acc) / (m232 * moment0(prob.tau2, coeffs.c21, acc));
    const double ratio = prob.mom1.N / prob.mom2.N;

    ConstraintReport rep;
    rep.tol = tol;
    rep.residuals = {
        {"density_1", std::fabs(n1_model - prob.mom1.N) / prob.mom1.N},
        {"density_2", std::fabs(n2_model - prob.mom2.N) / prob.mom2.N},
        {"momentum", norm(p_model - ptot) / pscale},
        {"energy", std::fabs(e_model - etot) / etot},
        {"density_ratio", std::fabs(ratio_model - ratio) / ratio},
    };
    for (const auto& r : rep.residuals) rep.max_residual = std::fmax(rep.max_residual, r.residual);
    rep.pass = rep.max_residual <= tol;
    return rep;
}

}  // namespace qbgk
