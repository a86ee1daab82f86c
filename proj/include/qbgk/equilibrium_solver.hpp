#pragma once

#include <string>
#include <vector>

#include "qbgk/moments.hpp"
#include "qbgk/quadrature.hpp"
#include "qbgk/statistics.hpp"

namespace qbgk {

/// Parameters of a single-species quantum equilibrium
/// 1/(e^{m a |p/m - b|^2 + c} + tau).
struct IntraCoeffs {
    double a = 0.0;  // inverse-temperature-like scale, > 0
    Vec3 b{0.0, 0.0, 0.0};
    double c = 0.0;  // fugacity parameter; > 0 for bosons
    int iterations = 0;
    // Ratio sat on the degenerate-limit boundary; c reported at the -50 clamp.
    bool clamped = false;
};

/// Shared parameters of the two inter-species equilibria: common scale a and
/// velocity b, per-species fugacity parameters c12 (species 1) and c21.
struct InterCoeffs {
    double a = 0.0;
    Vec3 b{0.0, 0.0, 0.0};
    double c12 = 0.0;
    double c21 = 0.0;
    int iterations = 0;
    bool clamped = false;
};

/// Inputs of the mixture coefficient problem.
struct MixtureProblem {
    double m1 = 1.0;
    double m2 = 1.0;
    Statistics tau1 = Statistics::fermion;
    Statistics tau2 = Statistics::fermion;
    SpeciesMoments mom1;
    SpeciesMoments mom2;
};

struct InterSolveOptions {
    // Initial upward bracket step; the uniqueness property is probed by
    // solving with two different seeds.
    double bracket_step = 1.0;
    IntegralAccuracy accuracy{};
};

/// 2mE - |P|^2/N: twice the rest-frame kinetic energy density scale.
/// May return <= 0 (super-kinetic momentum); callers reject such inputs.
double internal_energy_scalar(double m, const SpeciesMoments& mom);

/// Existence condition for the intra-species coefficients: positive internal
/// energy and density-energy ratio at or below the admissible bound
/// (strictly below for bosons).
bool check_feasibility_intra(double m, Statistics tau, const SpeciesMoments& mom,
                             const IntegralAccuracy& acc = {});

/// Unique (a, b, c) with the continuum moments of the equilibrium matching
/// (N, P, E). Throws FeasibilityError / ConvergenceError.
IntraCoeffs solve_intra(double m, Statistics tau, const SpeciesMoments& mom,
                        const IntegralAccuracy& acc = {});

/// Existence condition for the inter-species coefficients.
bool check_feasibility_inter(const MixtureProblem& prob, const IntegralAccuracy& acc = {});

/// Unique (a, b, c12, c21) satisfying the mixture moment relations:
/// species densities individually, total momentum and total energy jointly.
/// For the fermion-boson pair the solver normalizes fermion-first internally
/// and restores the caller's species order in the result.
InterCoeffs solve_inter(const MixtureProblem& prob, const InterSolveOptions& opts = {});

/// Relative residuals of the coefficient constraints, evaluated by continuum
/// quadrature.
struct ConstraintReport {
    struct Item {
        std::string name;
        double residual;
    };
    std::vector<Item> residuals;
    double max_residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

ConstraintReport verify_coeffs(const IntraCoeffs& coeffs, double m, Statistics tau,
                               const SpeciesMoments& mom, double tol = 1e-8,
                               const IntegralAccuracy& acc = {});

ConstraintReport verify_coeffs(const InterCoeffs& coeffs, const MixtureProblem& prob,
                               double tol = 1e-8, const IntegralAccuracy& acc = {});

/// Continuum moments of the intra equilibrium with the given parameters
/// (used by forward constructions and the verifier).
SpeciesMoments equilibrium_moments(double m, Statistics tau, double a, const Vec3& b,
                                   double c, const IntegralAccuracy& acc = {});

}  // namespace qbgk
