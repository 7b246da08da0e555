#include "entchaos/spin_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace entchaos {

namespace {

// S+ matrix element <S,M+1|S+|S,M> = sqrt(S(S+1) - M(M+1)), M = S - k.
double ladder_up(int N, int k) {
    const double S = 0.5 * N;
    const double M = S - k;
    return std::sqrt(S * (S + 1.0) - M * (M + 1.0));
}

}  // namespace

CollectiveSpinOps collective_spin_matrices(int N) {
    if (N < 1) throw std::invalid_argument("collective_spin_matrices: N must be >= 1");
    CollectiveSpinOps ops;
    ops.N = N;
    ops.dimension = N + 1;
    const int d = ops.dimension;
    const double S = 0.5 * N;

    ops.sx = Eigen::MatrixXd::Zero(d, d);
    ops.sy = MatrixXcd::Zero(d, d);
    ops.sz = Eigen::MatrixXd::Zero(d, d);
    for (int k = 0; k < d; ++k) ops.sz(k, k) = S - k;
    for (int k = 1; k < d; ++k) {
        const double c = ladder_up(N, k);  // couples |M=S-k> to |M=S-k+1>
        ops.sx(k - 1, k) = 0.5 * c;
        ops.sx(k, k - 1) = 0.5 * c;
        ops.sy(k - 1, k) = std::complex<double>(0.0, -0.5) * c;
        ops.sy(k, k - 1) = std::complex<double>(0.0, 0.5) * c;
    }
    return ops;
}

VectorXcd apply_sx(int N, const VectorXcd& v) {
    const int d = N + 1;
    VectorXcd out = VectorXcd::Zero(d);
    for (int k = 1; k < d; ++k) {
        const double c = 0.5 * ladder_up(N, k);
        out(k - 1) += c * v(k);
        out(k) += c * v(k - 1);
    }
    return out;
}

VectorXcd apply_sy(int N, const VectorXcd& v) {
    const int d = N + 1;
    VectorXcd out = VectorXcd::Zero(d);
    const std::complex<double> mi(0.0, -0.5), pi(0.0, 0.5);
    for (int k = 1; k < d; ++k) {
        const double c = ladder_up(N, k);
        out(k - 1) += mi * c * v(k);
        out(k) += pi * c * v(k - 1);
    }
    return out;
}

VectorXcd apply_sz(int N, const VectorXcd& v) {
    const int d = N + 1;
    const double S = 0.5 * N;
    VectorXcd out(d);
    for (int k = 0; k < d; ++k) out(k) = (S - k) * v(k);
    return out;
}

VectorXcd spin_coherent_state(int N, double theta0, double phi0) {
    const int d = N + 1;
    const double S = 0.5 * N;
    const double lc = std::log(std::max(std::cos(0.5 * theta0), 0.0));
    const double ls = std::log(std::max(std::sin(0.5 * theta0), 0.0));

    VectorXcd psi(d);
    for (int k = 0; k <= N; ++k) {
        // |<S,M|psi>| = binom(N,k)^{1/2} cos(t/2)^{N-k} sin(t/2)^k, M = S - k
        const double log_binom =
            std::lgamma(N + 1.0) - std::lgamma(k + 1.0) - std::lgamma(N - k + 1.0);
        double log_amp = 0.5 * log_binom;
        log_amp += (k == N && lc == -HUGE_VAL) ? 0.0 : (N - k) * lc;
        log_amp += (k == 0 && ls == -HUGE_VAL) ? 0.0 : k * ls;
        const double M = S - k;
        psi(k) = std::polar(std::exp(log_amp), -M * phi0);
    }
    psi.normalize();  // removes the residual rounding of the binomial sum
    return psi;
}

Eigen::Matrix3d spin_covariance(int N, const VectorXcd& psi) {
    const VectorXcd sxp = apply_sx(N, psi);
    const VectorXcd syp = apply_sy(N, psi);
    const VectorXcd szp = apply_sz(N, psi);
    const VectorXcd* comp[3] = {&sxp, &syp, &szp};

    Eigen::Vector3d mean;
    for (int a = 0; a < 3; ++a) mean(a) = psi.dot(*comp[a]).real();

    Eigen::Matrix3d cov;
    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) {
            const double sym = 0.5 * (comp[a]->dot(*comp[b]) + comp[b]->dot(*comp[a])).real();
            cov(a, b) = cov(b, a) = sym - mean(a) * mean(b);
        }
    return cov;
}

double qfi_exact(const VectorXcd& psi, int N) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(spin_covariance(N, psi),
                                                      Eigen::EigenvaluesOnly);
    return 4.0 * es.eigenvalues().maxCoeff() / N;
}

}  // namespace entchaos
