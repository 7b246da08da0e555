#pragma once

#include "entchaos/dicke.hpp"
#include "entchaos/kicked_top.hpp"
#include "entchaos/symplectic.hpp"

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace entchaos {

/// Linearized evolution over [0, t] in fluctuation coordinates, column
/// convention: w(t) = matrix * w(0). Symplectic up to integration error,
/// det = 1.
struct Propagator {
    Eigen::MatrixXd matrix;
    double t = 0.0;
};

/// Transports a correlation matrix along the tangent flow: G(t) = U G0 U^T.
/// With G0 = I/2 this is half the forward Oseledets product.
CorrelationMatrix correlation_evolve(const CorrelationMatrix& G0, const Propagator& U);

/// Symplecticity defect ||U^T J U - J|| (Frobenius), J in pair-interleaved
/// ordering.
double symplecticity_residual(const Eigen::MatrixXd& U);

/// Central-difference Jacobian of a map R^d -> R^d.
Eigen::MatrixXd jacobian_fd(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& map,
                            const Eigen::VectorXd& point, double epsilon);

/// Kicked-top propagation with the fluctuation matrix and the accumulated
/// tangent map carried along the classical orbit. Quantities are recorded at
/// every kick, converted to double; the run aborts with a diagnostic if the
/// fluctuations outgrow the double range (ln tr G > 700).
struct KickedTopFlucRun {
    std::vector<double> t;
    std::vector<BlochAngles> orbit;
    std::vector<double> n_exc;        // excitation number of the collective mode
    std::vector<double> c_zz;         // squared tangent response of S^z
    std::vector<double> det2G_err;    // |det(2G) - 1|
    std::vector<std::string> det2G_err_str;  // full-precision form (extended runs)
    bool extended = false;
};

template <class Real>
KickedTopFlucRun run_kicked_top_fluctuations(const BlochAngles& x0, const KickedTopParams& p,
                                             int n_kicks);

extern template KickedTopFlucRun run_kicked_top_fluctuations<double>(const BlochAngles&,
                                                                     const KickedTopParams&, int);

/// Dicke trajectory co-integrated with the tangent propagator dU/dt = A(t) U
/// inside the same adaptive steps. U is renormalized by powers of two when
/// it grows large; sample k carries U = 2^scale_exp2 * U_scaled.
struct DickeTangentRun {
    DickeTrajectory traj;
    std::vector<Eigen::Matrix4d> U_scaled;
    std::vector<double> scale_log;  // ln of the factored-out scale, per sample
};

DickeTangentRun propagate_dicke_tangent(const DickeState& x0, const DickeParams& p,
                                        double t_final, double tol, double sample_dt);

}  // namespace entchaos
