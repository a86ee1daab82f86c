#pragma once

#include <functional>

namespace qbgk {

/// Accuracy policy for the semi-infinite radial integrals.
/// tail_cutoff == 0 selects the built-in rule sqrt(max(0, 40 - x)) + 10,
/// which keeps the dropped tail far below rel_tol for every admissible x;
/// a positive value overrides it (tests double it to probe tail robustness).
struct IntegralAccuracy {
    double rel_tol = 1e-12;
    double tail_cutoff = 0.0;
};

namespace quad {

/// Composite 20-point Gauss-Legendre rule over fixed, deterministic panels
/// covering [0, cutoff]. Panels are geometrically refined toward 0 down to
/// `origin_edge` (power of two), then uniform with width 0.5. Node placement
/// depends only on (cutoff, origin_edge), never on integrand values, so
/// results are bit-stable across runs and platforms.
double panels_0_to(double cutoff, double origin_edge,
                   const std::function<double(double)>& f);

/// Default near-origin refinement edge (2^-12).
double default_origin_edge();

}  // namespace quad
}  // namespace qbgk
