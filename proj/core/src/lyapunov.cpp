#include "entchaos/lyapunov.hpp"

#include "entchaos/ode.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace entchaos {

namespace {

constexpr double kRankTolerance = 1e-140;

/// Deterministic uniform in [-1, 1): fixed bit-to-double mapping so runs are
/// reproducible across standard library implementations.
double uniform_pm1(std::mt19937_64& rng) {
    return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
}

}  // namespace

std::pair<Eigen::MatrixXd, std::vector<double>> gram_schmidt(const Eigen::MatrixXd& vectors) {
    const Eigen::Index K = vectors.cols();
    Eigen::MatrixXd Q = vectors;
    std::vector<double> alpha(K);
    for (Eigen::Index k = 0; k < K; ++k) {
        for (Eigen::Index l = 0; l < k; ++l)
            Q.col(k) -= Q.col(l).dot(vectors.col(k)) * Q.col(l);
        alpha[k] = Q.col(k).norm();
        if (!(alpha[k] > kRankTolerance))
            throw std::runtime_error("gram_schmidt: rank-deficient tangent frame");
        Q.col(k) /= alpha[k];
    }
    return {Q, alpha};
}

void KickedTopTangentSystem::advance(double s, Eigen::MatrixXd& W) {
    const int kicks = static_cast<int>(std::lround(s));
    if (kicks <= 0 || std::abs(s - kicks) > 1e-9)
        throw std::invalid_argument("kicked top: renormalization interval must be a whole number of kicks");
    for (int i = 0; i < kicks; ++i) {
        const auto step = kicked_top_step(BlochAnglesT<double>{x_.theta, x_.phi}, p_);
        const Mat2<double> u = kicked_top_tangent(BlochAnglesT<double>{x_.theta, x_.phi},
                                                  step.intermediate, p_.beta);
        Eigen::Matrix2d U;
        U << u.qq, u.qp, u.pq, u.pp;
        W = U * W;
        x_ = BlochAngles{step.final.theta, step.final.phi};
    }
}

void DickeTangentSystem::advance(double s, Eigen::MatrixXd& W) {
    const int K = static_cast<int>(W.cols());
    Eigen::VectorXd y(4 + 4 * K);
    y(0) = x_.Q;
    y(1) = x_.P;
    y(2) = x_.angles.phi;
    y(3) = x_.angles.theta;
    Eigen::Map<Eigen::MatrixXd>(y.data() + 4, 4, K) = W;

    auto rhs = [this, K](double, const Eigen::VectorXd& y) {
        const DickeState st{y(0), y(1), BlochAngles{y(3), y(2)}};
        const auto f = dicke_rhs(st, p_);
        const Eigen::Matrix4d A = dicke_stability_matrix(st, p_);
        Eigen::VectorXd dy(4 + 4 * K);
        dy(0) = f[0];
        dy(1) = f[1];
        dy(2) = f[2];
        dy(3) = f[3];
        Eigen::Map<Eigen::MatrixXd>(dy.data() + 4, 4, K) =
            A * Eigen::Map<const Eigen::MatrixXd>(y.data() + 4, 4, K);
        return dy;
    };
    integrate_adaptive(rhs, y, 0.0, s, tol_, s, [](double, Eigen::VectorXd&) {});
    x_ = DickeState{y(0), y(1), BlochAngles{y(3), y(2)}};
    W = Eigen::Map<Eigen::MatrixXd>(y.data() + 4, 4, K);
}

LyapunovSeries benettin_spectrum(TangentSystem& system, int K, double s, int n_steps,
                                 std::uint64_t seed) {
    const int dim = system.tangent_dim();
    if (K < 1 || K > dim) throw std::invalid_argument("benettin_spectrum: need 1 <= K <= 2n");
    if (s <= 0.0) throw std::invalid_argument("benettin_spectrum: s must be positive");

    std::mt19937_64 rng(seed);
    Eigen::MatrixXd W(dim, K);
    for (int j = 0; j < K; ++j)
        for (int i = 0; i < dim; ++i) W(i, j) = uniform_pm1(rng);

    LyapunovSeries series;
    series.K = K;
    series.s = s;
    W = gram_schmidt(W).first;

    std::vector<double> log_sum(K, 0.0);
    std::vector<double> alpha(K);
    for (int i = 1; i <= n_steps; ++i) {
        system.advance(s, W);
        // Classical Gram-Schmidt; a collapsed direction carries no volume
        // information, so it is replaced by a fresh random vector.
        for (int k = 0; k < K; ++k) {
            for (int attempt = 0;; ++attempt) {
                const Eigen::VectorXd v = W.col(k);
                Eigen::VectorXd w = v;
                for (int l = 0; l < k; ++l) w -= W.col(l).dot(v) * W.col(l);
                alpha[k] = w.norm();
                if (alpha[k] > kRankTolerance) {
                    W.col(k) = w / alpha[k];
                    break;
                }
                if (attempt >= 8)
                    throw std::runtime_error("benettin_spectrum: persistent rank deficiency");
                for (int r = 0; r < dim; ++r) W(r, k) = uniform_pm1(rng);
                series.events.push_back("re-randomized tangent vector " + std::to_string(k) +
                                        " at step " + std::to_string(i));
            }
        }
        const double r = i * s;
        std::vector<double> lam(K);
        for (int k = 0; k < K; ++k) {
            log_sum[k] += std::log(alpha[k]);
            lam[k] = log_sum[k] / r;
        }
        std::sort(lam.begin(), lam.end(), std::greater<>());
        series.r.push_back(r);
        series.exponents.push_back(std::move(lam));
    }
    return series;
}

LyapunovEstimate lyapunov_estimate(const LyapunovSeries& series) {
    if (series.r.size() < 3) throw std::invalid_argument("lyapunov_estimate: series too short");
    const double r_max = series.r.back();
    const double r_min = series.r.front();
    if (r_max / r_min < 1e3)
        throw std::invalid_argument("lyapunov_estimate: series must span at least three decades");

    const double r_lo = r_max / 100.0;  // last two decades
    LyapunovEstimate est;
    est.lambda.assign(series.K, 0.0);
    est.sigma.assign(series.K, 0.0);
    int count = 0;
    for (size_t i = 0; i < series.r.size(); ++i) {
        if (series.r[i] < r_lo) continue;
        ++count;
        for (int k = 0; k < series.K; ++k) est.lambda[k] += series.exponents[i][k];
    }
    for (int k = 0; k < series.K; ++k) est.lambda[k] /= count;
    for (size_t i = 0; i < series.r.size(); ++i) {
        if (series.r[i] < r_lo) continue;
        for (int k = 0; k < series.K; ++k) {
            const double d = series.exponents[i][k] - est.lambda[k];
            est.sigma[k] += d * d;
        }
    }
    for (int k = 0; k < series.K; ++k) est.sigma[k] = std::sqrt(est.sigma[k] / count);
    return est;
}

double ks_rate(const std::vector<double>& lambda, const std::vector<double>& sigma) {
    double sum = 0.0;
    for (size_t k = 0; k < lambda.size(); ++k) {
        const double threshold = std::max(k < sigma.size() ? sigma[k] : 0.0, 1e-3);
        if (lambda[k] > threshold) sum += lambda[k];
    }
    return sum;
}

}  // namespace entchaos
