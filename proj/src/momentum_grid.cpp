#include "qbgk/momentum_grid.hpp"

#include <cmath>

#include "qbgk/errors.hpp"

namespace qbgk {

MomentumGrid::MomentumGrid(double p_max, int n) : p_max_(p_max), n_(n) {
    if (!(p_max > 0.0)) throw DomainError("MomentumGrid: p_max must be positive");
    if (n < 4 || n % 2 != 0) throw DomainError("MomentumGrid: n must be even and >= 4");
    dp_ = 2.0 * p_max / n;
    axis_.resize(static_cast<std::size_t>(n));
    axis_sq_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Half-integer multiples of dp; the factor is exact, so mirrored
        // indices get bitwise-negated coordinates.
        const double half_units = 0.5 * static_cast<double>(2 * i - n + 1);
        axis_[static_cast<std::size_t>(i)] = half_units * dp_;
        axis_sq_[static_cast<std::size_t>(i)] =
            axis_[static_cast<std::size_t>(i)] * axis_[static_cast<std::size_t>(i)];
    }
}

double MomentumGrid::adequate_p_max(std::span<const SpeciesExtent> species) {
    double p = 0.0;
    for (const auto& s : species) {
        if (!(s.m > 0.0) || !(s.a > 0.0))
            throw DomainError("grid sizing requires positive mass and scale");
        p = std::fmax(p, s.m * s.b_norm + 8.0 * std::sqrt(s.m / s.a));
    }
    return p;
}

MomentumGrid MomentumGrid::sized_for(std::span<const SpeciesExtent> species, int n) {
    return MomentumGrid(adequate_p_max(species), n);
}

}  // namespace qbgk
