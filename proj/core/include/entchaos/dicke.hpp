#pragma once

#include "entchaos/bloch.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <vector>

namespace entchaos {

/// Dicke-model parameters. The superradiant transition sits at
/// gamma_c = sqrt(omega*omega0)/2.
struct DickeParams {
    double omega = 1.0;   // boson frequency
    double omega0 = 1.0;  // spin splitting
    double gamma = 0.0;   // spin-boson coupling

    double critical_coupling() const { return 0.5 * std::sqrt(omega * omega0); }
};

/// Classical Dicke phase-space point: O(1)-rescaled boson quadratures plus
/// the collective-spin direction.
struct DickeState {
    double Q = 0.0;
    double P = 0.0;
    BlochAngles angles;
};

/// Hamilton flow (dQ/dt, dP/dt, dphi/dt, dtheta/dt) for a classical spin of
/// length 1/2. The azimuthal equation is the canonical one obtained from the
/// Poisson brackets in the (phi, cos(theta)/2) chart.
std::array<double, 4> dicke_rhs(const DickeState& x, const DickeParams& p);

/// Classical energy omega0*cos(theta)/2 + omega*(Q^2+P^2)/2
/// + gamma*Q*sin(theta)*cos(phi)/2.
double dicke_energy(const DickeState& x, const DickeParams& p);

struct DickeEnergyPoint {
    DickeState state;
    bool q_positive = false;  // whether the Q > 0 root was available
};

/// Solves for the P = 0 point at the requested energy with the given spin
/// direction: Q is a root of the section quadratic, preferring Q > 0, else
/// the larger root. Throws if the energy is unreachable.
DickeEnergyPoint dicke_point_from_energy(double E, const BlochAngles& angles,
                                         const DickeParams& p);

/// Linear stability matrix of the flow in the co-moving fluctuation frame,
/// coordinates (dQ, dP, dq, dp). Traceless; equals J times a symmetric
/// Hessian, so the linearized flow is Hamiltonian.
Eigen::Matrix4d dicke_stability_matrix(const DickeState& x, const DickeParams& p);

/// Sampled classical trajectory. Times are strictly increasing; energy is
/// recorded at every sample.
struct DickeTrajectory {
    std::vector<double> times;
    std::vector<DickeState> states;
    std::vector<double> energy;
};

/// Integrates the flow with the embedded 4(5) stepper at absolute and
/// relative accuracy tol, sampling at multiples of sample_dt.
DickeTrajectory integrate_dicke(const DickeState& x0, const DickeParams& p, double t_final,
                                double tol, double sample_dt);

/// Section crossings P = 0, Q > 0, reported as (phi, cos theta). Crossing
/// times come from cubic Hermite interpolation of P(t) between samples plus
/// one Newton refinement.
std::vector<std::pair<double, double>> poincare_section(const DickeTrajectory& traj,
                                                        const DickeParams& p);

}  // namespace entchaos
