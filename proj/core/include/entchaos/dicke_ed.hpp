#pragma once

#include "entchaos/dicke.hpp"
#include "entchaos/spin_ops.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace entchaos {

/// Dense Dicke Hamiltonian on spin-(N/2) x truncated boson space, index
/// (spin k)*N_cut + n; real symmetric in this basis. Dimension is capped to
/// keep the eigensolve within desk-scale memory.
Eigen::MatrixXd dicke_hamiltonian(int N, int N_cut, const DickeParams& p);

/// Spin coherent state times a displaced boson vacuum with
/// alpha = sqrt(N) (Q0 + i P0)/sqrt(2). Rejects displacements whose
/// occupation <n> + 5 sqrt(<n>) reaches the cutoff.
VectorXcd dicke_initial_state(double theta0, double phi0, double Q0, double P0, int N, int N_cut);

struct DickeEdSeries {
    std::vector<double> t;
    std::vector<double> S_A;           // atoms-cavity entanglement entropy
    std::vector<double> mean_boson;    // <n>(t)
    std::vector<double> tail_mass;     // weight in the top 10% of the boson ladder
    std::vector<std::string> warnings;
    double max_norm_error = 0.0;
};

/// Evolves by one-time dense eigendecomposition of H and returns the
/// atoms-cavity entanglement entropy at the requested times. Flags samples
/// whose boson occupation approaches the cutoff.
DickeEdSeries evolve_and_entropy_dicke(const VectorXcd& state0, const Eigen::MatrixXd& H, int N,
                                       int N_cut, const std::vector<double>& times);

/// A-priori boson cutoff factor from the classical orbit: the running
/// maximum of (Q^2 + P^2)/2 with headroom, clamped to [4, 8].
int estimate_cutoff_factor(const DickeTrajectory& traj);

}  // namespace entchaos
