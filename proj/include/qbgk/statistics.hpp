#pragma once

#include <limits>

namespace qbgk {

/// Occupancy statistics of a species: fermion (Pauli-blocked, occupancy < 1)
/// or boson (Bose-enhanced, unbounded occupancy).
enum class Statistics : int {
    fermion = +1,
    boson = -1,
};

/// Sign tau entering the denominator e^{|p|^2+x} + tau.
constexpr double occupancy_sign(Statistics s) noexcept {
    return s == Statistics::fermion ? 1.0 : -1.0;
}

/// Lower end of the fugacity-parameter domain: -inf for fermions, 0 for bosons.
constexpr double domain_lower_limit(Statistics s) noexcept {
    return s == Statistics::fermion ? -std::numeric_limits<double>::infinity() : 0.0;
}

constexpr bool is_fermion(Statistics s) noexcept { return s == Statistics::fermion; }
constexpr bool is_boson(Statistics s) noexcept { return s == Statistics::boson; }

constexpr const char* statistics_name(Statistics s) noexcept {
    return s == Statistics::fermion ? "fermion" : "boson";
}

}  // namespace qbgk
