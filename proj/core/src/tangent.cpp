#include "entchaos/tangent.hpp"

#include "entchaos/ode.hpp"
#include "entchaos/precision.hpp"
#include "entchaos/quantifiers.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace entchaos {

CorrelationMatrix correlation_evolve(const CorrelationMatrix& G0, const Propagator& U) {
    if (U.matrix.rows() != G0.m.rows())
        throw std::invalid_argument("correlation_evolve: dimension mismatch");
    return CorrelationMatrix(U.matrix * G0.m * U.matrix.transpose());
}

double symplecticity_residual(const Eigen::MatrixXd& U) {
    const int n = static_cast<int>(U.rows()) / 2;
    const Eigen::MatrixXd J = pair_symplectic_unit(n);
    return (U.transpose() * J * U - J).norm();
}

Eigen::MatrixXd jacobian_fd(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& map,
                            const Eigen::VectorXd& point, double epsilon) {
    const Eigen::Index d = point.size();
    Eigen::MatrixXd J(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        Eigen::VectorXd hi = point, lo = point;
        hi(j) += epsilon;
        lo(j) -= epsilon;
        J.col(j) = (map(hi) - map(lo)) / (2.0 * epsilon);
    }
    return J;
}

namespace {

std::string full_precision_string(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::string full_precision_string(const MpReal& x) {
    return x.str(0);  // all digits of the working precision
}

template <class Real>
double as_double(const Real& x) {
    return static_cast<double>(x);
}

}  // namespace

template <class Real>
KickedTopFlucRun run_kicked_top_fluctuations(const BlochAngles& x0, const KickedTopParams& p,
                                             int n_kicks) {
    KickedTopFlucRun run;
    run.extended = !std::is_same_v<Real, double>;

    BlochAnglesT<Real> x{Real(x0.theta), Real(x0.phi)};
    const BlochAnglesT<Real> start = x;
    Corr2<Real> G = Corr2<Real>::vacuum();
    Mat2<Real> U = Mat2<Real>::identity();

    auto record = [&](int t) {
        run.t.push_back(static_cast<double>(t));
        run.orbit.push_back(BlochAngles{as_double(x.theta), as_double(x.phi)});
        run.n_exc.push_back(as_double((G.trace() - 1) / 2));
        run.c_zz.push_back(as_double(square_commutator_frames(U, start, x, 2, 2)));
        using std::fabs;
        const Real err = fabs(4 * G.det() - 1);
        run.det2G_err.push_back(as_double(err));
        if (run.extended) run.det2G_err_str.push_back(full_precision_string(err));
    };

    record(0);
    for (int t = 1; t <= n_kicks; ++t) {
        const auto step = kicked_top_step(x, p);
        G = kicked_top_fluct_step(G, x, step.intermediate, p.beta);
        U = kicked_top_tangent(x, step.intermediate, p.beta) * U;
        x = step.final;
        using std::log;
        if (as_double(log(G.trace())) > 700.0)
            throw std::overflow_error(
                "kicked-top fluctuations exceed the double range; shorten the run");
        record(t);
    }
    return run;
}

template KickedTopFlucRun run_kicked_top_fluctuations<double>(const BlochAngles&,
                                                              const KickedTopParams&, int);
template KickedTopFlucRun run_kicked_top_fluctuations<MpReal>(const BlochAngles&,
                                                              const KickedTopParams&, int);

DickeTangentRun propagate_dicke_tangent(const DickeState& x0, const DickeParams& p,
                                        double t_final, double tol, double sample_dt) {
    DickeTangentRun run;

    Eigen::VectorXd y(20);
    y << x0.Q, x0.P, x0.angles.phi, x0.angles.theta,
        Eigen::Map<const Eigen::VectorXd>(Eigen::Matrix4d::Identity().eval().data(), 16);
    double scale_log = 0.0;

    auto unpack_state = [](const Eigen::VectorXd& y) {
        return DickeState{y(0), y(1), BlochAngles{y(3), y(2)}};
    };
    auto rhs = [&](double, const Eigen::VectorXd& y) {
        const DickeState s = unpack_state(y);
        const auto f = dicke_rhs(s, p);
        const Eigen::Matrix4d A = dicke_stability_matrix(s, p);
        const Eigen::Map<const Eigen::Matrix4d> U(y.data() + 4);
        Eigen::VectorXd dy(20);
        dy(0) = f[0];
        dy(1) = f[1];
        dy(2) = f[2];
        dy(3) = f[3];
        Eigen::Map<Eigen::Matrix4d>(dy.data() + 4) = A * U;
        return dy;
    };

    integrate_adaptive(rhs, y, 0.0, t_final, tol, sample_dt, [&](double t, Eigen::VectorXd& yt) {
        Eigen::Map<Eigen::Matrix4d> U(yt.data() + 4);
        const double m = U.cwiseAbs().maxCoeff();
        if (m > 1e120) {  // factor the scale out before it hits the double ceiling
            U /= m;
            scale_log += std::log(m);
        }
        const DickeState s = unpack_state(yt);
        run.traj.times.push_back(t);
        run.traj.states.push_back(s);
        run.traj.energy.push_back(dicke_energy(s, p));
        run.U_scaled.push_back(U);
        run.scale_log.push_back(scale_log);
    });
    return run;
}

}  // namespace entchaos
