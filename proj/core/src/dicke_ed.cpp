#include "entchaos/dicke_ed.hpp"

#include <lapacke.h>

#include <cmath>
#include <stdexcept>

namespace entchaos {

namespace {
constexpr int kMaxDimension = 1 << 14;
}

Eigen::MatrixXd dicke_hamiltonian(int N, int N_cut, const DickeParams& p) {
    if (N < 1 || N_cut < 2) throw std::invalid_argument("dicke_hamiltonian: need N >= 1, N_cut >= 2");
    const int d_spin = N + 1;
    const long dim = static_cast<long>(d_spin) * N_cut;
    if (dim > kMaxDimension)
        throw std::length_error("dicke_hamiltonian: dimension exceeds the dense-solver cap");

    const double S = 0.5 * N;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);

    auto idx = [N_cut](int k, int n) { return k * N_cut + n; };
    const double g = p.gamma / std::sqrt(2.0 * N);  // coupling on Sx (b + b^dag)

    for (int k = 0; k < d_spin; ++k) {
        const double M = S - k;
        for (int n = 0; n < N_cut; ++n) {
            H(idx(k, n), idx(k, n)) = p.omega0 * M + p.omega * n;
            // Sx couples k <-> k+1, (b + b^dag) couples n <-> n+1.
            if (k + 1 < d_spin && n + 1 < N_cut) {
                const double sx = 0.5 * std::sqrt(S * (S + 1.0) - M * (M - 1.0));
                const double bos = std::sqrt(n + 1.0);
                H(idx(k, n), idx(k + 1, n + 1)) += g * sx * bos;
                H(idx(k + 1, n + 1), idx(k, n)) += g * sx * bos;
            }
            if (k + 1 < d_spin && n > 0) {
                const double sx = 0.5 * std::sqrt(S * (S + 1.0) - M * (M - 1.0));
                const double bos = std::sqrt(static_cast<double>(n));
                H(idx(k, n), idx(k + 1, n - 1)) += g * sx * bos;
                H(idx(k + 1, n - 1), idx(k, n)) += g * sx * bos;
            }
        }
    }
    return H;
}

VectorXcd dicke_initial_state(double theta0, double phi0, double Q0, double P0, int N, int N_cut) {
    const std::complex<double> alpha =
        std::sqrt(static_cast<double>(N)) * std::complex<double>(Q0, P0) / std::sqrt(2.0);
    const double nbar = std::norm(alpha);
    if (nbar + 5.0 * std::sqrt(nbar) >= N_cut)
        throw std::domain_error("dicke_initial_state: coherent displacement exceeds the boson cutoff");

    VectorXcd boson(N_cut);
    // c_n = e^{-|a|^2/2} a^n / sqrt(n!), assembled in log space
    for (int n = 0; n < N_cut; ++n) {
        const double log_mag =
            -0.5 * nbar + n * std::log(std::max(std::abs(alpha), 1e-300)) - 0.5 * std::lgamma(n + 1.0);
        boson(n) = std::polar(std::exp(log_mag), n * std::arg(alpha));
    }

    const VectorXcd spin = spin_coherent_state(N, theta0, phi0);
    VectorXcd psi(static_cast<long>(N + 1) * N_cut);
    for (int k = 0; k <= N; ++k)
        psi.segment(static_cast<long>(k) * N_cut, N_cut) = spin(k) * boson;
    return psi;
}

DickeEdSeries evolve_and_entropy_dicke(const VectorXcd& state0, const Eigen::MatrixXd& H, int N,
                                       int N_cut, const std::vector<double>& times) {
    const int d_spin = N + 1;
    const long dim = static_cast<long>(d_spin) * N_cut;
    if (H.rows() != dim || state0.size() != dim)
        throw std::invalid_argument("evolve_and_entropy_dicke: dimension mismatch");

    // One-time dense symmetric eigendecomposition (divide and conquer).
    Eigen::MatrixXd V = H;
    Eigen::VectorXd E(dim);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(dim),
                                           V.data(), static_cast<lapack_int>(dim), E.data());
    if (info != 0) throw std::runtime_error("evolve_and_entropy_dicke: dsyevd failed");

    const VectorXcd coeffs = V.transpose().cast<std::complex<double>>() * state0;

    DickeEdSeries out;
    const int tail_start = N_cut - std::max(N_cut / 10, 1);
    for (double t : times) {
        VectorXcd phased(dim);
        for (long i = 0; i < dim; ++i) phased(i) = std::polar(1.0, -E(i) * t) * coeffs(i);
        const VectorXcd psi = V.cast<std::complex<double>>() * phased;
        out.max_norm_error = std::max(out.max_norm_error, std::abs(psi.norm() - 1.0));

        // Trace out the boson: rows = spin index, columns = boson occupation.
        Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
            Psi(psi.data(), d_spin, N_cut);
        const MatrixXcd rho_spin = Psi * Psi.adjoint();

        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho_spin, Eigen::EigenvaluesOnly);
        double S = 0.0;
        for (int i = 0; i < es.eigenvalues().size(); ++i) {
            const double pr = es.eigenvalues()(i);
            if (pr > 1e-12) S -= pr * std::log(pr);
        }

        double nbar = 0.0, tail = 0.0;
        for (int k = 0; k < d_spin; ++k)
            for (int n = 0; n < N_cut; ++n) {
                const double w = std::norm(Psi(k, n));
                nbar += n * w;
                if (n >= tail_start) tail += w;
            }

        out.t.push_back(t);
        out.S_A.push_back(S);
        out.mean_boson.push_back(nbar);
        out.tail_mass.push_back(tail);
        if (tail > 1e-6)
            out.warnings.push_back("boson occupation near cutoff at t = " + std::to_string(t));
    }
    return out;
}

int estimate_cutoff_factor(const DickeTrajectory& traj) {
    double peak = 0.0;
    for (const auto& s : traj.states)
        peak = std::max(peak, 0.5 * (s.Q * s.Q + s.P * s.P));
    const int delta = static_cast<int>(std::ceil(1.5 * peak + 2.0));
    return std::min(8, std::max(4, delta));
}

}  // namespace entchaos
