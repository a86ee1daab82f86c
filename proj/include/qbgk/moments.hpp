#pragma once

#include <cmath>

namespace qbgk {

/// Plain 3-vector (momentum, velocity).
struct Vec3 {
    double v[3]{0.0, 0.0, 0.0};
    double operator[](int i) const noexcept { return v[i]; }
    double& operator[](int i) noexcept { return v[i]; }
};

inline double dot(const Vec3& a, const Vec3& b) noexcept {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm2(const Vec3& v) noexcept { return dot(v, v); }
inline double norm(const Vec3& v) noexcept { return std::sqrt(norm2(v)); }

inline Vec3 operator+(const Vec3& a, const Vec3& b) noexcept {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) noexcept {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double s, const Vec3& v) noexcept {
    return {s * v[0], s * v[1], s * v[2]};
}

/// Number density, momentum density and kinetic energy density of one
/// species, taken with respect to the momentum distribution f(p):
/// N = int f, P = int f p, E = int f |p|^2 / (2m).
struct SpeciesMoments {
    double N = 0.0;
    Vec3 P{0.0, 0.0, 0.0};
    double E = 0.0;
};

/// Moments in the velocity representation (f_bar(v) = m^3 f(p), v = p/m):
/// the density and energy integrals coincide with the momentum ones, and the
/// first moment becomes the mean velocity P/(mN). The returned P slot holds
/// that mean velocity.
inline SpeciesMoments p_to_v_moments(const SpeciesMoments& mom, double m) {
    return {mom.N, (1.0 / (m * mom.N)) * mom.P, mom.E};
}

/// Inverse of p_to_v_moments.
inline SpeciesMoments v_to_p_moments(const SpeciesMoments& vmom, double m) {
    return {vmom.N, (m * vmom.N) * vmom.P, vmom.E};
}

}  // namespace qbgk
