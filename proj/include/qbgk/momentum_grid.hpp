#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qbgk {

/// Uniform, cell-centered cubic momentum lattice on [-p_max, p_max]^3,
/// x-fastest storage order. n must be even so nodes come in exact +/- pairs,
/// which the moment reductions exploit to make odd moments of symmetric
/// fields vanish bitwise.
class MomentumGrid {
  public:
    MomentumGrid(double p_max, int n);

    double p_max() const noexcept { return p_max_; }
    int n() const noexcept { return n_; }
    double dp() const noexcept { return dp_; }
    double cell_volume() const noexcept { return dp_ * dp_ * dp_; }
    std::size_t size() const noexcept {
        return static_cast<std::size_t>(n_) * n_ * n_;
    }

    /// Axis coordinate of index i: (2i - n + 1)/2 * dp.
    double coord(int i) const noexcept { return axis_[static_cast<std::size_t>(i)]; }
    std::span<const double> axis() const noexcept { return axis_; }
    std::span<const double> axis_sq() const noexcept { return axis_sq_; }

    std::size_t index(int i, int j, int k) const noexcept {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(n_) * (static_cast<std::size_t>(j) +
                                               static_cast<std::size_t>(n_) * k);
    }

    bool operator==(const MomentumGrid& o) const noexcept {
        return p_max_ == o.p_max_ && n_ == o.n_;
    }

    /// One species' grid-extent requirement.
    struct SpeciesExtent {
        double m;       // mass
        double a;       // equilibrium scale
        double b_norm;  // |bulk velocity|
    };

    /// Half-width making every boundary-node equilibrium value < 1e-12:
    /// p_max = max_i (m_i |b_i| + 8 sqrt(m_i / a_i)).
    static double adequate_p_max(std::span<const SpeciesExtent> species);

    static MomentumGrid sized_for(std::span<const SpeciesExtent> species, int n);

  private:
    double p_max_;
    int n_;
    double dp_;
    std::vector<double> axis_;
    std::vector<double> axis_sq_;
};

}  // namespace qbgk
