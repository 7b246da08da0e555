#pragma once

#include <Eigen/Dense>
#include <vector>

namespace entchaos {

/// Symmetric 2n x 2n second-moment matrix of the rescaled quantum
/// fluctuations. Coordinates are ordered by subsystem, conjugate pair by
/// pair: (q1, p1, q2, p2, ...). For a pure Gaussian state det(2G) = 1 and
/// every symplectic eigenvalue of 2G is >= 1.
struct CorrelationMatrix {
    Eigen::MatrixXd m;

    CorrelationMatrix() = default;
    explicit CorrelationMatrix(Eigen::MatrixXd mat) : m(std::move(mat)) {}

    int dof() const { return static_cast<int>(m.rows()) / 2; }
};

/// Symplectic unit for the (q1..qn, p1..pn) ordering:
/// [[0, I], [-I, 0]]. Satisfies J^2 = -I, J^T = -J.
struct SymplecticForm {
    int n = 0;
    Eigen::MatrixXd matrix;
};

SymplecticForm symplectic_unit(int n);

/// Symplectic unit matching the pair-interleaved coordinate ordering used by
/// CorrelationMatrix: block-diagonal copies of [[0,1],[-1,0]].
Eigen::MatrixXd pair_symplectic_unit(int n);

/// Minimal-uncertainty (coherent/vacuum) correlation matrix G = I/2.
CorrelationMatrix vacuum_correlation(int n);

/// Symplectic eigenvalues nu_1 >= ... >= nu_n of 2G: the positive halves of
/// the spectrum of i*(-2G*J). Requires G symmetric positive definite; each
/// nu_i >= 1 for a physical state. For n = 1 this reduces to 2*sqrt(det G).
std::vector<double> symplectic_eigenvalues(const CorrelationMatrix& G);

/// Principal submatrix on the selected conjugate pairs (0-based pair
/// indices). Selecting every pair returns G itself.
CorrelationMatrix reduced_correlation(const CorrelationMatrix& G,
                                      const std::vector<int>& pairs);

/// Number of bosonic excitations carried by a one-mode correlation matrix:
/// (G_qq + G_pp - 1) / 2. Vanishes exactly on the vacuum.
double excitation_number(const CorrelationMatrix& G);

}  // namespace entchaos
