#include "entchaos/quantifiers.hpp"

#include "entchaos/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entchaos {

namespace {
constexpr double kNuClampBand = 1e-10;
}

double renyi2_entropy(const CorrelationMatrix& G_A) {
    const Eigen::MatrixXd twoG = 2.0 * G_A.m;
    const double det = twoG.determinant();
    if (det <= 0.0)
        throw std::domain_error("renyi2_entropy: det(2G) must be positive");
    return 0.5 * std::log(det);
}

double entropy_of_symplectic_eigenvalue(double nu) {
    if (nu <= 1.0) return 0.0;
    const double a = 0.5 * (nu + 1.0);
    const double b = 0.5 * (nu - 1.0);
    return a * std::log(a) - b * std::log(b);
}

double vn_entropy_from_nus(const std::vector<double>& nus) {
    double S = 0.0;
    for (double nu : nus) {
        if (nu < 1.0 - kNuClampBand)
            throw std::domain_error("vn_entropy: symplectic eigenvalue below the Heisenberg floor");
        S += entropy_of_symplectic_eigenvalue(std::max(nu, 1.0));
    }
    return S;
}

double vn_entropy(const CorrelationMatrix& G_A) {
    return vn_entropy_from_nus(symplectic_eigenvalues(G_A));
}

double vn_entropy_from_det(double det_GA) {
    if (det_GA < 0.25 - kNuClampBand)
        throw std::domain_error("vn_entropy_from_det: det G_A must be >= 1/4");
    if (det_GA <= 0.25) return 0.0;
    const double nu = 2.0 * std::sqrt(det_GA);
    // nu*arccoth(nu) + (1/2) ln((nu^2-1)/4)
    return 0.5 * nu * std::log((nu + 1.0) / (nu - 1.0)) + 0.5 * std::log(0.25 * (nu * nu - 1.0));
}

double vn_entropy_from_logdet(double log_det_GA) {
    if (log_det_GA < 690.0) return vn_entropy_from_det(std::exp(log_det_GA));
    // det too large for a double: S -> 1 + (1/2) ln det, remainder O(1/det)
    return 1.0 + 0.5 * log_det_GA;
}

double det_GA_spin(double f_A, double n_exc) {
    if (!(f_A > 0.0 && f_A < 1.0))
        throw std::invalid_argument("det_GA_spin: f_A must lie in (0,1)");
    if (n_exc < 0.0) throw std::invalid_argument("det_GA_spin: n_exc must be >= 0");
    return 0.25 + f_A * (1.0 - f_A) * n_exc;
}

double qfi_from_correlation(const CorrelationMatrix& G) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G.m, Eigen::EigenvaluesOnly);
    return 4.0 * es.eigenvalues().maxCoeff();
}

double qfi_spin(double n_exc) {
    if (n_exc < 0.0) n_exc = 0.0;
    if (n_exc == 0.0) return 1.0;
    return 1.0 + 2.0 * n_exc + 2.0 * n_exc * std::sqrt(1.0 + 1.0 / n_exc);
}

double squeezing_spin(double n_exc) {
    return 1.0 / qfi_spin(n_exc);
}

namespace {

Eigen::Matrix2d spin_block(const CorrelationMatrix& G, int spin_pair) {
    const auto GA = reduced_correlation(G, {spin_pair});
    return GA.m;
}

}  // namespace

double qfi_spin_block(const CorrelationMatrix& G, int spin_pair) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(spin_block(G, spin_pair),
                                                      Eigen::EigenvaluesOnly);
    return 2.0 * es.eigenvalues().maxCoeff();
}

double squeezing_spin_block(const CorrelationMatrix& G, int spin_pair) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(spin_block(G, spin_pair),
                                                      Eigen::EigenvaluesOnly);
    return 2.0 * es.eigenvalues().minCoeff();
}

double square_commutator_semiclassical(const Propagator& U, const BlochAngles& at0,
                                       const BlochAngles& at_t, int axis_a, int axis_b) {
    if (U.matrix.rows() != 2)
        throw std::invalid_argument("square_commutator_semiclassical: expects one spin mode");
    Mat2<double> m{U.matrix(0, 0), U.matrix(0, 1), U.matrix(1, 0), U.matrix(1, 1)};
    return square_commutator_frames(m, at0, at_t, axis_a, axis_b);
}

QuantifierSeries kicked_top_quantifiers(const KickedTopFlucRun& run, double f_A) {
    QuantifierSeries q;
    q.times = run.t;
    q.c_zz = run.c_zz;
    for (double n : run.n_exc) {
        const double d = det_GA_spin(f_A, std::max(n, 0.0));
        q.S_vn.push_back(vn_entropy_from_det(d));
        q.S_renyi2.push_back(0.5 * std::log(4.0 * d));
        q.f_Q.push_back(qfi_spin(std::max(n, 0.0)));
        q.xi2.push_back(squeezing_spin(std::max(n, 0.0)));
    }
    return q;
}

QuantifierSeries dicke_quantifiers(const DickeTangentRun& run) {
    QuantifierSeries q;
    q.times = run.traj.times;
    for (size_t k = 0; k < run.U_scaled.size(); ++k) {
        const Eigen::Matrix4d& Us = run.U_scaled[k];
        const double sigma = run.scale_log[k];

        // G = (e^{2 sigma}/2) Us Us^T; work on the scaled product and restore
        // the factor in log space where overflow is possible.
        const Eigen::Matrix4d B = Us * Us.transpose();
        const Eigen::Matrix2d Bspin = B.block<2, 2>(2, 2);
        const double ms = std::max(Bspin.cwiseAbs().maxCoeff(), 1e-300);
        const double det_scaled = std::max((Bspin / ms).determinant(), 1e-300);
        // det G_A = e^{4 sigma}/4 * det Bspin, clamped at the Heisenberg floor
        const double logdet_spin =
            std::max(4.0 * sigma - std::log(4.0) + std::log(det_scaled) + 2.0 * std::log(ms),
                     std::log(0.25));
        q.S_vn.push_back(vn_entropy_from_logdet(logdet_spin));
        q.S_renyi2.push_back(0.5 * (logdet_spin + std::log(4.0)));

        const double scale = std::exp(2.0 * sigma) / 2.0;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(Bspin, Eigen::EigenvaluesOnly);
        q.f_Q.push_back(2.0 * scale * es.eigenvalues().maxCoeff());
        q.xi2.push_back(2.0 * scale * es.eigenvalues().minCoeff());

        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es4(B, Eigen::EigenvaluesOnly);
        q.f_Q_all.push_back(4.0 * scale * es4.eigenvalues().maxCoeff());
    }
    return q;
}

}  // namespace entchaos
