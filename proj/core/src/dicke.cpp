#include "entchaos/dicke.hpp"

#include "entchaos/ode.hpp"

#include <cmath>
#include <stdexcept>

namespace entchaos {

std::array<double, 4> dicke_rhs(const DickeState& x, const DickeParams& p) {
    check_pole(x.angles);
    const double st = std::sin(x.angles.theta);
    const double ct = std::cos(x.angles.theta);
    const double sp = std::sin(x.angles.phi);
    const double cp = std::cos(x.angles.phi);

    const double dQ = p.omega * x.P;
    const double dP = -p.omega * x.Q - 0.5 * p.gamma * st * cp;
    const double dphi = p.omega0 - p.gamma * x.Q * cp * ct / st;
    const double dtheta = -p.gamma * x.Q * sp;
    return {dQ, dP, dphi, dtheta};
}

double dicke_energy(const DickeState& x, const DickeParams& p) {
    const double st = std::sin(x.angles.theta);
    const double ct = std::cos(x.angles.theta);
    return 0.5 * p.omega0 * ct + 0.5 * p.omega * (x.Q * x.Q + x.P * x.P) +
           0.5 * p.gamma * x.Q * st * std::cos(x.angles.phi);
}

DickeEnergyPoint dicke_point_from_energy(double E, const BlochAngles& angles,
                                         const DickeParams& p) {
    // (omega/2) Q^2 + (gamma sin(theta) cos(phi)/2) Q + (omega0 cos(theta)/2 - E) = 0
    const double a = 0.5 * p.omega;
    const double b = 0.5 * p.gamma * std::sin(angles.theta) * std::cos(angles.phi);
    const double c = 0.5 * p.omega0 * std::cos(angles.theta) - E;

    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0)
        throw std::domain_error("dicke_point_from_energy: energy unreachable at this spin direction");

    const double sq = std::sqrt(disc);
    const double hi = (-b + sq) / (2.0 * a);
    const double lo = (-b - sq) / (2.0 * a);

    DickeEnergyPoint out;
    out.q_positive = hi > 0.0;
    out.state = DickeState{out.q_positive ? hi : std::max(hi, lo), 0.0, angles};
    return out;
}

Eigen::Matrix4d dicke_stability_matrix(const DickeState& x, const DickeParams& p) {
    check_pole(x.angles);
    const double st = std::sin(x.angles.theta);
    const double ct = std::cos(x.angles.theta);
    const double sp = std::sin(x.angles.phi);
    const double cp = std::cos(x.angles.phi);
    const double g = p.gamma / std::sqrt(2.0);
    const double w = p.gamma * x.Q * cp / st;

    Eigen::Matrix4d A;
    A << 0.0, p.omega, 0.0, 0.0,
        -p.omega, 0.0, -g * ct * cp, g * sp,
        -g * sp, 0.0, 0.0, -w,
        -g * ct * cp, 0.0, w, 0.0;
    return A;
}

namespace {

Eigen::VectorXd pack(const DickeState& x) {
    Eigen::VectorXd y(4);
    y << x.Q, x.P, x.angles.phi, x.angles.theta;
    return y;
}

DickeState unpack(const Eigen::VectorXd& y) {
    return DickeState{y(0), y(1), BlochAngles{y(3), y(2)}};
}

}  // namespace

DickeTrajectory integrate_dicke(const DickeState& x0, const DickeParams& p, double t_final,
                                double tol, double sample_dt) {
    DickeTrajectory traj;
    Eigen::VectorXd y = pack(x0);
    auto rhs = [&p](double, const Eigen::VectorXd& y) {
        const auto f = dicke_rhs(unpack(y), p);
        Eigen::VectorXd dy(4);
        dy << f[0], f[1], f[2], f[3];
        return dy;
    };
    integrate_adaptive(rhs, y, 0.0, t_final, tol, sample_dt,
                       [&](double t, const Eigen::VectorXd& yt) {
                           const DickeState s = unpack(yt);
                           traj.times.push_back(t);
                           traj.states.push_back(s);
                           traj.energy.push_back(dicke_energy(s, p));
                       });
    return traj;
}

std::vector<std::pair<double, double>> poincare_section(const DickeTrajectory& traj,
                                                        const DickeParams& p) {
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i + 1 < traj.times.size(); ++i) {
        const DickeState& a = traj.states[i];
        const DickeState& b = traj.states[i + 1];
        if (a.P == 0.0) continue;  // counted at the previous interval's endpoint refinement
        if ((a.P < 0.0) == (b.P < 0.0)) continue;

        const double h = traj.times[i + 1] - traj.times[i];
        const double da = dicke_rhs(a, p)[1];  // dP/dt at the endpoints
        const double db = dicke_rhs(b, p)[1];

        // Cubic Hermite for P on [0,1], then one Newton step from the secant root.
        auto hermite = [&](double u, double fa, double fb, double ga, double gb) {
            const double u2 = u * u, u3 = u2 * u;
            return (2 * u3 - 3 * u2 + 1) * fa + (u3 - 2 * u2 + u) * h * ga +
                   (-2 * u3 + 3 * u2) * fb + (u3 - u2) * h * gb;
        };
        auto hermite_d = [&](double u, double fa, double fb, double ga, double gb) {
            const double u2 = u * u;
            return (6 * u2 - 6 * u) * fa + (3 * u2 - 4 * u + 1) * h * ga +
                   (-6 * u2 + 6 * u) * fb + (3 * u2 - 2 * u) * h * gb;
        };

        double u = a.P / (a.P - b.P);
        const double f = hermite(u, a.P, b.P, da, db);
        const double fp = hermite_d(u, a.P, b.P, da, db);
        if (fp != 0.0) u -= f / fp;
        u = std::min(1.0, std::max(0.0, u));

        const double Q = hermite(u, a.Q, b.Q, p.omega * a.P, p.omega * b.P);
        if (Q <= 0.0) continue;

        const auto fa4 = dicke_rhs(a, p);
        const auto fb4 = dicke_rhs(b, p);
        const double phi = hermite(u, a.angles.phi, b.angles.phi, fa4[2], fb4[2]);
        const double ctheta = hermite(u, std::cos(a.angles.theta), std::cos(b.angles.theta),
                                      -std::sin(a.angles.theta) * fa4[3],
                                      -std::sin(b.angles.theta) * fb4[3]);
        pts.emplace_back(phi, ctheta);
    }
    return pts;
}

}  // namespace entchaos
