#include "entchaos/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entchaos {

SymplecticForm symplectic_unit(int n) {
    if (n < 1) throw std::invalid_argument("symplectic_unit: n must be >= 1");
    SymplecticForm J;
    J.n = n;
    J.matrix = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    J.matrix.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    J.matrix.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    return J;
}

Eigen::MatrixXd pair_symplectic_unit(int n) {
    if (n < 1) throw std::invalid_argument("pair_symplectic_unit: n must be >= 1");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        J(2 * k, 2 * k + 1) = 1.0;
        J(2 * k + 1, 2 * k) = -1.0;
    }
    return J;
}

CorrelationMatrix vacuum_correlation(int n) {
    if (n < 1) throw std::invalid_argument("vacuum_correlation: n must be >= 1");
    return CorrelationMatrix(0.5 * Eigen::MatrixXd::Identity(2 * n, 2 * n));
}

std::vector<double> symplectic_eigenvalues(const CorrelationMatrix& G) {
    const int n = G.dof();
    if (n < 1 || G.m.rows() != G.m.cols())
        throw std::invalid_argument("symplectic_eigenvalues: malformed correlation matrix");

    Eigen::LLT<Eigen::MatrixXd> llt(G.m);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("symplectic_eigenvalues: matrix is not positive definite");

    if (n == 1)
        return {2.0 * std::sqrt(G.m.determinant())};

    // Spectrum of -2GJ consists of conjugate pairs +-i*nu; harvest |Im|.
    const Eigen::MatrixXd M = -2.0 * G.m * pair_symplectic_unit(n);
    Eigen::EigenSolver<Eigen::MatrixXd> es(M, /*computeEigenvectors=*/false);
    std::vector<double> nus;
    for (int i = 0; i < 2 * n; ++i) {
        const double im = es.eigenvalues()(i).imag();
        if (im > 0.0) nus.push_back(im);
    }
    if (static_cast<int>(nus.size()) != n)
        throw std::runtime_error("symplectic_eigenvalues: spectrum did not split into conjugate pairs");
    std::sort(nus.begin(), nus.end(), std::greater<>());
    return nus;
}

CorrelationMatrix reduced_correlation(const CorrelationMatrix& G,
                                      const std::vector<int>& pairs) {
    const int n = G.dof();
    const int nA = static_cast<int>(pairs.size());
    if (nA < 1 || nA > n)
        throw std::invalid_argument("reduced_correlation: invalid pair selection");
    Eigen::VectorXi idx(2 * nA);
    for (int k = 0; k < nA; ++k) {
        if (pairs[k] < 0 || pairs[k] >= n)
            throw std::invalid_argument("reduced_correlation: pair index out of range");
        idx(2 * k) = 2 * pairs[k];
        idx(2 * k + 1) = 2 * pairs[k] + 1;
    }
    return CorrelationMatrix(G.m(idx, idx));
}

double excitation_number(const CorrelationMatrix& G) {
    if (G.dof() != 1)
        throw std::invalid_argument("excitation_number: expects a one-mode matrix");
    return 0.5 * (G.m(0, 0) + G.m(1, 1) - 1.0);
}

}  // namespace entchaos
