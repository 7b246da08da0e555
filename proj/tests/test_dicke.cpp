#include "entchaos/dicke.hpp"

#include "entchaos/tangent.hpp"

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

using namespace entchaos;

namespace {

// Classical Hamiltonian in the canonical chart (Q, P, q = phi, p = cos(theta)/2).
double hamiltonian_canonical(const Eigen::VectorXd& x, const DickeParams& par) {
    const double Q = x(0), P = x(1), phi = x(2), p = x(3);
    const double sin_half = std::sqrt(std::max(0.25 - p * p, 0.0));  // sin(theta)/2
    return par.omega0 * p + 0.5 * par.omega * (Q * Q + P * P) +
           par.gamma * Q * sin_half * std::cos(phi);
}

Eigen::VectorXd rhs_canonical_fd(const Eigen::VectorXd& x, const DickeParams& par, double eps) {
    Eigen::VectorXd grad(4);
    for (int i = 0; i < 4; ++i) {
        Eigen::VectorXd hi = x, lo = x;
        hi(i) += eps;
        lo(i) -= eps;
        grad(i) = (hamiltonian_canonical(hi, par) - hamiltonian_canonical(lo, par)) / (2.0 * eps);
    }
    // pair-interleaved symplectic unit on ((Q,P),(q,p))
    Eigen::VectorXd f(4);
    f(0) = grad(1);
    f(1) = -grad(0);
    f(2) = grad(3);
    f(3) = -grad(2);
    return f;
}

DickeState state_of(double Q, double P, double theta, double phi) {
    return DickeState{Q, P, BlochAngles{theta, phi}};
}

}  // namespace

TEST_CASE("decoupled flow: oscillator plus uniform precession") {
    const DickeParams p{1.3, 0.8, 0.0};
    const auto f1 = dicke_rhs(state_of(1.0, 0.0, M_PI / 3, 0.7), p);
    CHECK(f1[0] == doctest::Approx(0.0));
    CHECK(f1[1] == doctest::Approx(-p.omega));
    CHECK(f1[2] == doctest::Approx(p.omega0));
    CHECK(f1[3] == doctest::Approx(0.0));

    const auto f2 = dicke_rhs(state_of(0.0, 1.0, M_PI / 3, 0.7), p);
    CHECK(f2[0] == doctest::Approx(p.omega));
    CHECK(f2[1] == doctest::Approx(0.0));
    CHECK(f2[2] == doctest::Approx(p.omega0));
    CHECK(f2[3] == doctest::Approx(0.0));
}

TEST_CASE("flow equals the symplectic gradient of the Hamiltonian") {
    const DickeParams p{1.0, 1.0, 0.85};
    const DickeState x = state_of(1.0, 0.0, std::acos(0.1), 1.4);
    const auto f = dicke_rhs(x, p);

    Eigen::VectorXd xc(4);
    xc << x.Q, x.P, x.angles.phi, 0.5 * std::cos(x.angles.theta);
    const Eigen::VectorXd fc = rhs_canonical_fd(xc, p, 1e-6);

    CHECK(f[0] == doctest::Approx(fc(0)).epsilon(1e-6));
    CHECK(f[1] == doctest::Approx(fc(1)).epsilon(1e-6));
    CHECK(f[2] == doctest::Approx(fc(2)).epsilon(1e-6));
    // p = cos(theta)/2, so dtheta/dt = -2 (dp/dt) / sin(theta)
    CHECK(f[3] == doctest::Approx(-2.0 * fc(3) / std::sin(x.angles.theta)).epsilon(1e-6));
}

TEST_CASE("classical energy values") {
    CHECK(dicke_energy(state_of(0, 0, M_PI / 2, 0.3), DickeParams{1, 1, 0}) == doctest::Approx(0.0));
    CHECK(dicke_energy(state_of(0, 0, 1e-14, 0.0), DickeParams{1, 1, 0}) == doctest::Approx(0.5));
    CHECK(DickeParams{1.0, 1.0, 0.0}.critical_coupling() == doctest::Approx(0.5));
}

TEST_CASE("energy section point") {
    const auto simple = dicke_point_from_energy(2.0, BlochAngles{M_PI / 2, 0.0},
                                                DickeParams{1, 1, 0});
    CHECK(simple.state.Q == doctest::Approx(2.0));
    CHECK(simple.state.P == 0.0);
    CHECK(simple.q_positive);

    const DickeParams p{1.0, 1.0, 0.85};
    const BlochAngles a{std::acos(0.1), 1.4};
    const auto pt = dicke_point_from_energy(3.0, a, p);
    CHECK(pt.state.Q > 0.0);
    CHECK(dicke_energy(pt.state, p) == doctest::Approx(3.0).epsilon(1e-12));

    // tangency: gamma = 0, E equal to the spin term alone gives the double root Q = 0
    const DickeParams pfree{1, 1, 0};
    const double E_tangent = dicke_energy(state_of(0, 0, M_PI / 3, 0.0), pfree);
    const auto degenerate = dicke_point_from_energy(E_tangent, BlochAngles{M_PI / 3, 0.0}, pfree);
    CHECK(degenerate.state.Q == doctest::Approx(0.0));

    CHECK_THROWS_AS(dicke_point_from_energy(-5.0, BlochAngles{M_PI / 2, 0.0},
                                            DickeParams{1, 1, 0}),
                    std::domain_error);
}

TEST_CASE("integrator reproduces the decoupled oscillator") {
    const DickeParams p{1.0, 1.0, 0.0};
    const auto traj = integrate_dicke(state_of(1.0, 0.0, M_PI / 3, 0.2), p, 100.0, 1e-14, 0.5);
    double worst10 = 0.0, worst100 = 0.0;
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const double err = std::abs(traj.states[i].Q - std::cos(traj.times[i]));
        if (traj.times[i] <= 10.0) worst10 = std::max(worst10, err);
        worst100 = std::max(worst100, err);
    }
    CHECK(worst10 < 10.0 * 1e-14);
    // over [0,100] the ~150 accepted steps per unit time put the coherent
    // rounding floor near 5e-13; see the phase-drift scaling study
    CHECK(worst100 < 1e-12);
}

TEST_CASE("energy conservation on a chaotic orbit") {
    const DickeParams p{1.0, 1.0, 5.0};
    const auto start = dicke_point_from_energy(1.5, BlochAngles{std::acos(0.1), 1.4}, p);
    const auto traj = integrate_dicke(start.state, p, 30.0, 1e-14, 0.1);
    const double E0 = traj.energy.front();
    double drift = 0.0;
    for (double E : traj.energy) drift = std::max(drift, std::abs(E - E0) / std::abs(E0));
    CHECK(drift < 30.0 * 1e-10);  // < 1e-10 per unit time
}

TEST_CASE("time reversal recovers the initial point") {
    const DickeParams p{1.0, 1.0, 5.0};
    const auto start = dicke_point_from_energy(1.5, BlochAngles{std::acos(0.1), 1.4}, p).state;
    auto traj = integrate_dicke(start, p, 10.0, 1e-14, 10.0);
    DickeState mid = traj.states.back();
    mid.P = -mid.P;
    mid.angles.phi = -mid.angles.phi;
    auto back = integrate_dicke(mid, p, 10.0, 1e-14, 10.0);
    DickeState end = back.states.back();
    end.P = -end.P;
    end.angles.phi = -end.angles.phi;
    CHECK(end.Q == doctest::Approx(start.Q).epsilon(1e-8));
    CHECK(end.P == doctest::Approx(start.P).epsilon(1e-8).scale(1.0));
    CHECK(std::cos(end.angles.theta) ==
          doctest::Approx(std::cos(start.angles.theta)).epsilon(1e-8).scale(1.0));
    CHECK(std::cos(end.angles.phi) ==
          doctest::Approx(std::cos(start.angles.phi)).epsilon(1e-8).scale(1.0));
}

TEST_CASE("poincare section of the decoupled oscillator is periodic") {
    const DickeParams p{1.0, 1.0, 0.0};
    const auto traj = integrate_dicke(state_of(1.0, 0.0, M_PI / 3, 0.2), p, 50.0, 1e-12, 0.05);
    const auto pts = poincare_section(traj, p);
    // P = -sin(t): sign changes every pi, Q > 0 keeps one crossing per period
    CHECK(pts.size() == 7);
    for (const auto& [phi, ct] : pts) CHECK(ct == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("no crossings without a sign change") {
    DickeTrajectory traj;
    for (int i = 0; i < 10; ++i) {
        traj.times.push_back(i * 0.1);
        traj.states.push_back(state_of(1.0, 0.5, M_PI / 3, 0.0));
        traj.energy.push_back(0.0);
    }
    CHECK(poincare_section(traj, DickeParams{1, 1, 0}).empty());
}

TEST_CASE("chaotic section scatters over the accessible region") {
    const DickeParams p{1.0, 1.0, 5.0};
    const auto start = dicke_point_from_energy(1.5, BlochAngles{std::acos(0.1), 1.4}, p).state;
    const auto traj = integrate_dicke(start, p, 200.0, 1e-12, 0.05);
    const auto pts = poincare_section(traj, p);
    CHECK(pts.size() > 20);
    double lo = 1.0, hi = -1.0;
    for (const auto& [phi, ct] : pts) {
        CHECK(std::abs(ct) <= 1.0);
        lo = std::min(lo, ct);
        hi = std::max(hi, ct);
    }
    CHECK(hi - lo > 0.5);  // spread, not a closed curve
}

TEST_CASE("stability matrix structure") {
    const DickeParams p{1.0, 1.0, 0.0};
    const auto A0 = dicke_stability_matrix(state_of(0.3, -0.2, 1.1, 0.4), p);
    Eigen::Matrix4d expected = Eigen::Matrix4d::Zero();
    expected(0, 1) = p.omega;
    expected(1, 0) = -p.omega;
    CHECK((A0 - expected).norm() == doctest::Approx(0.0));

    const DickeParams pc{1.0, 1.0, 5.0};
    const auto x = dicke_point_from_energy(1.5, BlochAngles{std::acos(0.1), 1.4}, pc).state;
    const auto A = dicke_stability_matrix(x, pc);
    CHECK(std::abs(A.trace()) < 1e-14);

    // Hamiltonian structure: -J A must be symmetric
    Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
    J(0, 1) = J(2, 3) = 1.0;
    J(1, 0) = J(3, 2) = -1.0;
    const Eigen::Matrix4d H = -J * A;
    CHECK((H - H.transpose()).norm() < 1e-14);
}

TEST_CASE("stability matrix matches the frame-transported flow Jacobian") {
    const DickeParams p{1.0, 1.0, 0.85};
    const auto x = dicke_point_from_energy(3.0, BlochAngles{std::acos(0.1), 1.4}, p).state;
    const auto A = dicke_stability_matrix(x, p);

    // Jacobian of the canonical flow (Q, P, phi, p = cos(theta)/2)
    auto canonical_rhs = [&p](const Eigen::VectorXd& y) {
        const double theta = std::acos(std::clamp(2.0 * y(3), -1.0, 1.0));
        const auto f = dicke_rhs(DickeState{y(0), y(1), BlochAngles{theta, y(2)}}, p);
        Eigen::VectorXd out(4);
        out << f[0], f[1], f[2], -0.5 * std::sin(theta) * f[3];
        return out;
    };
    Eigen::VectorXd yc(4);
    yc << x.Q, x.P, x.angles.phi, 0.5 * std::cos(x.angles.theta);
    const Eigen::MatrixXd Acan = jacobian_fd(canonical_rhs, yc, 1e-6);

    // transport to the co-moving frame: A = T Acan T^{-1} + dT/dt T^{-1}
    const double st = std::sin(x.angles.theta);
    const double ct = std::cos(x.angles.theta);
    Eigen::Matrix4d T = Eigen::Matrix4d::Identity();
    T(2, 2) = 0.0;
    T(2, 3) = -std::sqrt(2.0) / st;
    T(3, 2) = st / std::sqrt(2.0);
    T(3, 3) = 0.0;
    const double theta_dot = dicke_rhs(x, p)[3];
    Eigen::Matrix4d dT = Eigen::Matrix4d::Zero();
    dT(2, 3) = std::sqrt(2.0) * ct / (st * st) * theta_dot;
    dT(3, 2) = ct / std::sqrt(2.0) * theta_dot;

    const Eigen::Matrix4d oracle = T * Acan * T.inverse() + dT * T.inverse();
    CHECK((A - oracle).norm() < 1e-5);
}
