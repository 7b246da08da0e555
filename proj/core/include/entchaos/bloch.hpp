#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace entchaos {

/// Coordinate-chart guard: the spherical chart degenerates at the poles, so
/// points with |sin(theta)| below this bound are rejected rather than
/// propagated with silently degraded accuracy.
inline constexpr double kPoleGuard = 1e-8;

struct PoleProximityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Point on the Bloch sphere, polar axis along z. theta in (0, pi), phi
/// reduced to [0, 2*pi). The canonical chart pairs q = phi with p = cos(theta).
template <class Real>
struct BlochAnglesT {
    Real theta{};
    Real phi{};
};

using BlochAngles = BlochAnglesT<double>;

template <class Real>
Real reduce_angle(Real phi) {
    using std::atan;
    const Real two_pi = 8 * atan(Real(1));
    using std::floor;
    return phi - two_pi * floor(phi / two_pi);
}

template <class Real>
void check_pole(const BlochAnglesT<Real>& a) {
    using std::sin;
    using std::fabs;
    if (fabs(sin(a.theta)) < kPoleGuard)
        throw PoleProximityError("spherical chart is singular: |sin(theta)| < 1e-8");
}

/// Polarization direction Z(theta, phi).
template <class Real>
std::array<Real, 3> bloch_vector(const BlochAnglesT<Real>& a) {
    using std::sin;
    using std::cos;
    return {sin(a.theta) * cos(a.phi), sin(a.theta) * sin(a.phi), cos(a.theta)};
}

/// Transverse frame vector X(theta, phi) = d Z / d theta.
template <class Real>
std::array<Real, 3> frame_x(const BlochAnglesT<Real>& a) {
    using std::sin;
    using std::cos;
    return {cos(a.theta) * cos(a.phi), cos(a.theta) * sin(a.phi), -sin(a.theta)};
}

/// Transverse frame vector Y(theta, phi), azimuthal unit vector.
template <class Real>
std::array<Real, 3> frame_y(const BlochAnglesT<Real>& a) {
    using std::sin;
    using std::cos;
    return {-sin(a.phi), cos(a.phi), Real(0)};
}

/// Recovers chart angles from a unit vector; theta = arccos(z) lands in
/// (0, pi) away from the poles, phi in [0, 2*pi).
template <class Real>
BlochAnglesT<Real> angles_from_vector(const std::array<Real, 3>& v) {
    using std::acos;
    using std::atan2;
    BlochAnglesT<Real> a;
    a.theta = acos(v[2]);
    a.phi = reduce_angle(atan2(v[1], v[0]));
    return a;
}

}  // namespace entchaos
