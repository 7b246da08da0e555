#include "entchaos/kicked_top_ed.hpp"

#include <cmath>
#include <stdexcept>

namespace entchaos {

MatrixXcd kicked_top_floquet(int N, double alpha, double beta, double s) {
    const auto ops = collective_spin_matrices(N);
    const int d = ops.dimension;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ops.sx);
    MatrixXcd precession = MatrixXcd::Zero(d, d);
    {
        const Eigen::MatrixXd& V = es.eigenvectors();
        VectorXcd phases(d);
        for (int i = 0; i < d; ++i) phases(i) = std::polar(1.0, -alpha * es.eigenvalues()(i));
        precession = V.cast<std::complex<double>>() * phases.asDiagonal() *
                     V.transpose().cast<std::complex<double>>();
    }

    const double g = beta / (2.0 * N * s);
    MatrixXcd U(d, d);
    for (int k = 0; k < d; ++k) {
        const double M = 0.5 * N - k;
        const std::complex<double> kick = std::polar(1.0, -g * M * M);
        U.row(k) = kick * precession.row(k);
    }
    return U;
}

namespace {

double log_binom(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// Binomial split weights sqrt(C(N_A,j) C(N_B,l) / C(N,j+l)) for an
/// (N_A, N_B) cut of the symmetric sector. Built once per run.
Eigen::MatrixXd split_weights(int N, int N_A) {
    const int N_B = N - N_A;
    Eigen::MatrixXd w(N_A + 1, N_B + 1);
    for (int j = 0; j <= N_A; ++j)
        for (int l = 0; l <= N_B; ++l)
            w(j, l) = std::exp(
                0.5 * (log_binom(N_A, j) + log_binom(N_B, l) - log_binom(N, j + l)));
    return w;
}

MatrixXcd amplitude_split(const VectorXcd& state, int N_A, const Eigen::MatrixXd& w) {
    const int N_B = static_cast<int>(w.cols()) - 1;
    MatrixXcd Psi(N_A + 1, N_B + 1);
    for (int j = 0; j <= N_A; ++j)
        for (int l = 0; l <= N_B; ++l) Psi(j, l) = state(j + l) * w(j, l);
    return Psi;
}

double entropy_of_split(const MatrixXcd& Psi) {
    // Spectrum of the reduced state = spectrum of the smaller Gram matrix.
    const MatrixXcd gram = Psi.rows() <= Psi.cols() ? MatrixXcd(Psi * Psi.adjoint())
                                                    : MatrixXcd(Psi.adjoint() * Psi);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    double S = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        const double p = es.eigenvalues()(i);
        if (p > 1e-12) S -= p * std::log(p);
    }
    return S;
}

void check_bipartition(const VectorXcd& state, int N, int N_A) {
    if (N_A < 1 || N_A >= N)
        throw std::invalid_argument("spin bipartition: need 1 <= N_A < N");
    if (state.size() != N + 1)
        throw std::invalid_argument("spin bipartition: state is not in the symmetric sector");
}

}  // namespace

MatrixXcd spin_bipartition_rdm(const VectorXcd& state, int N, int N_A) {
    check_bipartition(state, N, N_A);
    const MatrixXcd Psi = amplitude_split(state, N_A, split_weights(N, N_A));
    return Psi * Psi.adjoint();
}

double spin_bipartition_entropy(const VectorXcd& state, int N, int N_A) {
    check_bipartition(state, N, N_A);
    return entropy_of_split(amplitude_split(state, N_A, split_weights(N, N_A)));
}

double square_commutator_exact(const VectorXcd& psi0, const MatrixXcd& U, int t) {
    const int N = static_cast<int>(psi0.size()) - 1;
    const double S = 0.5 * N;

    VectorXcd u = psi0;                              // U^t |psi0>
    VectorXcd w = apply_sz(N, psi0) / S;             // U^t B |psi0>
    for (int i = 0; i < t; ++i) {
        u = U * u;
        w = U * w;
    }
    VectorXcd a = apply_sz(N, w) / S;
    VectorXcd b = apply_sz(N, u) / S;
    for (int i = 0; i < t; ++i) {
        a = U.adjoint() * a;
        b = U.adjoint() * b;
    }
    const VectorXcd k = a - apply_sz(N, b) / S;  // [A(t), B] |psi0>
    return S * S * k.squaredNorm();
}

KickedTopEdSeries run_kicked_top_ed(int N, const KickedTopParams& p, double theta0, double phi0,
                                    int n_kicks, int N_A, bool with_otoc) {
    const double S = 0.5 * N;
    const MatrixXcd U = kicked_top_floquet(N, p.alpha, p.beta);
    const VectorXcd psi0 = spin_coherent_state(N, theta0, phi0);
    const Eigen::MatrixXd weights = split_weights(N, N_A);

    KickedTopEdSeries out;
    VectorXcd psi = psi0;
    VectorXcd w = apply_sz(N, psi0) / S;  // forward image of B|psi0> for the echo

    for (int t = 0; t <= n_kicks; ++t) {
        if (t > 0) {
            psi = U * psi;
            if (with_otoc) w = U * w;
        }
        out.t.push_back(t);
        out.S_A.push_back(entropy_of_split(amplitude_split(psi, N_A, weights)));
        out.f_Q.push_back(qfi_exact(psi, N));
        if (with_otoc) {
            VectorXcd a = apply_sz(N, w) / S;
            VectorXcd b = apply_sz(N, psi) / S;
            for (int i = 0; i < t; ++i) {
                a = U.adjoint() * a;
                b = U.adjoint() * b;
            }
            out.c_zz.push_back(S * S * (a - apply_sz(N, b) / S).squaredNorm());
        }
        out.max_norm_error = std::max(out.max_norm_error, std::abs(psi.norm() - 1.0));
    }
    return out;
}

}  // namespace entchaos
