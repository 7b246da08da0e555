#pragma once

#include "entchaos/bloch.hpp"

#include <cmath>

namespace entchaos {

/// Kicked-top control parameters: linear precession angle alpha about x per
/// period, torsion strength beta, unit driving period.
struct KickedTopParams {
    double alpha = 0.0;
    double beta = 0.0;
    double tau = 1.0;  // fixed by convention
};

/// 2x2 real matrix in (delta_q, delta_p) fluctuation coordinates.
template <class Real>
struct Mat2 {
    Real qq{}, qp{}, pq{}, pp{};

    static Mat2 identity() { return {Real(1), Real(0), Real(0), Real(1)}; }

    Mat2 operator*(const Mat2& o) const {
        return {qq * o.qq + qp * o.pq, qq * o.qp + qp * o.pp,
                pq * o.qq + pp * o.pq, pq * o.qp + pp * o.pp};
    }

    Real det() const { return qq * pp - qp * pq; }
};

/// Symmetric 2x2 fluctuation correlation matrix for a single collective mode.
template <class Real>
struct Corr2 {
    Real qq{}, pp{}, qp{};

    static Corr2 vacuum() { return {Real(1) / 2, Real(1) / 2, Real(0)}; }

    Real det() const { return qq * pp - qp * qp; }
    Real trace() const { return qq + pp; }

    /// Congruence transport G -> M G M^T by a tangent-map factor M.
    Corr2 congruence(const Mat2<Real>& M) const {
        const Real nqq = M.qq * (M.qq * qq + M.qp * qp) + M.qp * (M.qq * qp + M.qp * pp);
        const Real npp = M.pq * (M.pq * qq + M.pp * qp) + M.pp * (M.pq * qp + M.pp * pp);
        const Real nqp = M.pq * (M.qq * qq + M.qp * qp) + M.pp * (M.qq * qp + M.qp * pp);
        return {nqq, npp, nqp};
    }
};

template <class Real>
struct KickedTopStep {
    BlochAnglesT<Real> intermediate;  // after the precession about x
    BlochAnglesT<Real> final;         // after the torsional kick
};

/// One stroboscopic period of the classical map on the Bloch sphere:
/// free precession by alpha about x, then the kick phi'' = phi' +
/// beta*cos(theta'). Both points are returned because the fluctuation map
/// needs the intermediate one. The precession branch follows the sign of
/// cos(phi): the x component of the spin is conserved, so the azimuth stays
/// in the same half-plane.
template <class Real>
KickedTopStep<Real> kicked_top_step(const BlochAnglesT<Real>& a, const KickedTopParams& p) {
    using std::sin;
    using std::cos;
    using std::tan;
    using std::atan;
    using std::acos;

    check_pole(a);

    const Real alpha = Real(p.alpha);
    const Real beta = Real(p.beta);
    const Real pi = 4 * atan(Real(1));

    const Real cphi = cos(a.phi);
    Real phi1 = atan(tan(a.phi) * cos(alpha) - sin(alpha) / (tan(a.theta) * cphi));
    if (cphi < 0) phi1 += pi;
    phi1 = reduce_angle(phi1);

    Real ctheta1 = cos(a.theta) * cos(alpha) + sin(a.theta) * sin(a.phi) * sin(alpha);
    if (ctheta1 > Real(1)) ctheta1 = Real(1);
    if (ctheta1 < Real(-1)) ctheta1 = Real(-1);

    KickedTopStep<Real> out;
    out.intermediate = {acos(ctheta1), phi1};
    check_pole(out.intermediate);

    out.final = {out.intermediate.theta, reduce_angle(phi1 + beta * ctheta1)};
    return out;
}

/// Inverse period: undo the kick, then precess by -alpha.
template <class Real>
BlochAnglesT<Real> kicked_top_inverse_step(const BlochAnglesT<Real>& a, const KickedTopParams& p) {
    using std::cos;
    BlochAnglesT<Real> unkicked{a.theta, reduce_angle(a.phi - Real(p.beta) * cos(a.theta))};
    KickedTopParams back{-p.alpha, 0.0, p.tau};
    return kicked_top_step(unkicked, back).intermediate;
}

/// Angle between the polar-axis-adapted transverse frame and the frame
/// adapted to spherical coordinates about x; defined up to a shift by pi,
/// which drops out of every observable.
template <class Real>
Real frame_angle(const BlochAnglesT<Real>& a) {
    using std::tan;
    using std::cos;
    using std::atan;
    return -atan(tan(a.phi) / cos(a.theta));
}

/// Tangent map of one period in the co-moving frame: rotation by the frame
/// mismatch chi = psi - psi' accumulated during the precession, followed by
/// the momentum shear of strength beta*sin^2(theta') produced by the kick.
template <class Real>
Mat2<Real> kicked_top_tangent(const BlochAnglesT<Real>& a, const BlochAnglesT<Real>& a_mid,
                              double beta) {
    using std::sin;
    using std::cos;
    const Real chi = frame_angle(a) - frame_angle(a_mid);
    const Real c = cos(chi), s = sin(chi);
    const Real k = Real(beta) * sin(a_mid.theta) * sin(a_mid.theta);
    // [[1,0],[-k,1]] * [[c,s],[-s,c]]
    return {c, s, -k * c - s, -k * s + c};
}

/// One-period update of the fluctuation correlation matrix along the
/// classical step (a -> a_mid -> kicked). Every coefficient depends on the
/// frame angles through cos^2, sin^2 or double-angle functions only, so the
/// psi -> psi + pi ambiguity cancels.
template <class Real>
Corr2<Real> kicked_top_fluct_step(const Corr2<Real>& G, const BlochAnglesT<Real>& a,
                                  const BlochAnglesT<Real>& a_mid, double beta) {
    using std::sin;
    using std::cos;
    check_pole(a);
    check_pole(a_mid);

    const Real chi = frame_angle(a) - frame_angle(a_mid);
    const Real c2 = cos(chi) * cos(chi);
    const Real s2 = sin(chi) * sin(chi);
    const Real sin2chi = sin(2 * chi);
    const Real cos2chi = cos(2 * chi);

    Corr2<Real> r;  // frame rotation
    r.qq = c2 * G.qq + sin2chi * G.qp + s2 * G.pp;
    r.pp = s2 * G.qq - sin2chi * G.qp + c2 * G.pp;
    r.qp = -sin2chi / 2 * G.qq + cos2chi * G.qp + sin2chi / 2 * G.pp;

    const Real k = Real(beta) * sin(a_mid.theta) * sin(a_mid.theta);
    Corr2<Real> out;  // kick shear
    out.qq = r.qq;
    out.pp = r.pp - 2 * k * r.qp + k * k * r.qq;
    out.qp = r.qp - k * r.qq;
    return out;
}

}  // namespace entchaos
