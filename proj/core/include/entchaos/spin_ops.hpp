#pragma once

#include <Eigen/Dense>
#include <complex>

namespace entchaos {

using VectorXcd = Eigen::VectorXcd;
using MatrixXcd = Eigen::MatrixXcd;

/// Collective spin-N/2 operators in the |S, M> basis, index k = 0..N
/// corresponding to M = S - k. Satisfies [Sx, Sy] = i Sz and
/// Sx^2 + Sy^2 + Sz^2 = S(S+1).
struct CollectiveSpinOps {
    int N = 0;
    int dimension = 0;  // N + 1
    Eigen::MatrixXd sx;
    MatrixXcd sy;
    Eigen::MatrixXd sz;  // diagonal
};

CollectiveSpinOps collective_spin_matrices(int N);

/// Ladder-structure application of the spin components, O(N) per call.
VectorXcd apply_sx(int N, const VectorXcd& v);
VectorXcd apply_sy(int N, const VectorXcd& v);
VectorXcd apply_sz(int N, const VectorXcd& v);

/// Spin coherent state polarized along (theta0, phi0):
/// exp(-i phi0 Sz) exp(-i theta0 Sy) |S, S>, with the rotations applied so
/// that <S>/(N/2) equals the Bloch vector of (theta0, phi0). Amplitudes are
/// assembled in log space, stable up to large N.
VectorXcd spin_coherent_state(int N, double theta0, double phi0);

/// 3x3 symmetrized covariance of (Sx, Sy, Sz) in the given state.
Eigen::Matrix3d spin_covariance(int N, const VectorXcd& psi);

/// Fisher density of a pure state over collective spin projections:
/// 4 max_n Var(S_n) / N, i.e. (4/N) times the top covariance eigenvalue.
double qfi_exact(const VectorXcd& psi, int N);

}  // namespace entchaos
