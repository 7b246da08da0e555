#pragma once

#include "entchaos/dicke.hpp"
#include "entchaos/kicked_top.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace entchaos {

/// Finite-time Lyapunov estimates lambda_k^(r) at accumulated times r = i*s.
struct LyapunovSeries {
    std::vector<double> r;
    std::vector<std::vector<double>> exponents;  // per r, K values sorted descending
    int K = 0;
    double s = 0.0;
    std::vector<std::string> events;  // rank-deficiency re-randomizations etc.
};

/// Classical Gram-Schmidt. Returns the orthonormalized columns and the
/// pre-normalization residual norms alpha_k. Throws on rank deficiency.
std::pair<Eigen::MatrixXd, std::vector<double>> gram_schmidt(const Eigen::MatrixXd& vectors);

/// A flow or map together with its tangent dynamics: advances the base point
/// and a matrix of tangent columns by a time interval s.
class TangentSystem {
  public:
    virtual ~TangentSystem() = default;
    virtual int tangent_dim() const = 0;
    virtual void advance(double s, Eigen::MatrixXd& W) = 0;
};

/// Kicked-top stroboscopic tangent dynamics; s must be an integer number of
/// kicks.
class KickedTopTangentSystem final : public TangentSystem {
  public:
    KickedTopTangentSystem(const BlochAngles& x0, const KickedTopParams& p) : x_(x0), p_(p) {}
    int tangent_dim() const override { return 2; }
    void advance(double s, Eigen::MatrixXd& W) override;
    const BlochAngles& state() const { return x_; }

  private:
    BlochAngles x_;
    KickedTopParams p_;
};

/// Dicke flow with tangent columns co-integrated at the given tolerance.
class DickeTangentSystem final : public TangentSystem {
  public:
    DickeTangentSystem(const DickeState& x0, const DickeParams& p, double tol = 1e-14)
        : x_(x0), p_(p), tol_(tol) {}
    int tangent_dim() const override { return 4; }
    void advance(double s, Eigen::MatrixXd& W) override;
    const DickeState& state() const { return x_; }

  private:
    DickeState x_;
    DickeParams p_;
    double tol_;
};

/// Benettin-Galgani-Strelcyn spectrum: evolve K random tangent vectors,
/// re-orthonormalize every s, and accumulate the log norms;
/// lambda_k^(n,s) = (1/ns) sum_i ln alpha_i^(k). The seed fixes the initial
/// vectors, drawn uniformly in [-1,1]^dim.
LyapunovSeries benettin_spectrum(TangentSystem& system, int K, double s, int n_steps,
                                 std::uint64_t seed);

struct LyapunovEstimate {
    std::vector<double> lambda;
    std::vector<double> sigma;  // spread over the averaging window
};

/// Mean and standard deviation of lambda_k^(r) over the last two decades of
/// r. Requires the series to span at least three decades.
LyapunovEstimate lyapunov_estimate(const LyapunovSeries& series);

/// Kolmogorov-Sinai rate: sum of exponents above max(sigma_k, 1e-3).
double ks_rate(const std::vector<double>& lambda, const std::vector<double>& sigma);

}  // namespace entchaos
