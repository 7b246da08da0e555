#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace entchaos {

struct StepSizeUnderflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Embedded Dormand-Prince 5(4) step. Writes the 5th-order increment into dy
/// and returns the scaled local error estimate (<= 1 means acceptable).
template <class Rhs>
double rk45_step(Rhs&& f, double t, const Eigen::VectorXd& y, double h,
                 double atol, double rtol, Eigen::VectorXd& dy) {
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const Eigen::VectorXd k1 = f(t, y);
    const Eigen::VectorXd k2 = f(t + h / 5.0, y + h * (a21 * k1));
    const Eigen::VectorXd k3 = f(t + 3.0 * h / 10.0, y + h * (a31 * k1 + a32 * k2));
    const Eigen::VectorXd k4 = f(t + 4.0 * h / 5.0, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Eigen::VectorXd k5 =
        f(t + 8.0 * h / 9.0, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Eigen::VectorXd k6 =
        f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));

    dy = h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Eigen::VectorXd k7 = f(t + h, y + dy);
    const Eigen::VectorXd err =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double scaled = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double tol = atol + rtol * std::max(std::abs(y(i)), std::abs(y(i) + dy(i)));
        scaled = std::max(scaled, std::abs(err(i)) / tol);
    }
    return scaled;
}

/// Adaptive integration from t0 to t1 with the observer invoked exactly at
/// t0 + k*sample_dt (steps are clamped to land on sample times). The same
/// absolute and relative tolerance is applied componentwise. State updates
/// use compensated accumulation so the rounding of many small steps does not
/// drift.
template <class Rhs, class Observer>
void integrate_adaptive(Rhs&& f, Eigen::VectorXd& y, double t0, double t1, double tol,
                        double sample_dt, Observer&& observe) {
    if (tol <= 0.0) throw std::invalid_argument("integrate_adaptive: tol must be positive");
    if (sample_dt <= 0.0) throw std::invalid_argument("integrate_adaptive: sample_dt must be positive");

    double t = t0;
    double h = sample_dt / 16.0;
    observe(t, y);
    long next_sample = 1;

    Eigen::VectorXd dy(y.size());
    Eigen::VectorXd comp = Eigen::VectorXd::Zero(y.size());
    while (t < t1 - 1e-12 * std::max(1.0, std::abs(t1))) {
        const double t_target = std::min(t0 + next_sample * sample_dt, t1);
        if (t + h > t_target) h = t_target - t;

        const double err = rk45_step(f, t, y, h, tol, tol, dy);
        if (err <= 1.0) {
            t += h;
            for (Eigen::Index i = 0; i < y.size(); ++i) {  // Kahan update
                const double u = dy(i) - comp(i);
                const double v = y(i) + u;
                comp(i) = (v - y(i)) - u;
                y(i) = v;
            }
            if (t >= t_target - 1e-12 * std::max(1.0, std::abs(t_target))) {
                t = t_target;
                const Eigen::VectorXd before = y;
                observe(t, y);
                if (y != before) comp.setZero();  // observer rescaled the state
                ++next_sample;
            }
            h *= std::min(0.9 * std::pow(std::max(err, 1e-10), -0.2), 5.0);
        } else {
            h *= std::max(0.9 * std::pow(err, -0.25), 0.2);
        }
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            throw StepSizeUnderflow("integrate_adaptive: step size underflow");
    }
}

}  // namespace entchaos
