#include "entchaos/fits.hpp"

#include <cmath>
#include <stdexcept>

namespace entchaos {

namespace {

double slope_impl(const std::vector<double>& x, const std::vector<double>& y,
                  bool log_x, bool log_y, double lo, double hi) {
    if (x.size() != y.size()) throw std::invalid_argument("fit: size mismatch");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long n = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] < lo || x[i] > hi) continue;
        if ((log_x && x[i] <= 0.0) || (log_y && y[i] <= 0.0)) continue;
        const double xi = log_x ? std::log(x[i]) : x[i];
        const double yi = log_y ? std::log(y[i]) : y[i];
        sx += xi;
        sy += yi;
        sxx += xi * xi;
        sxy += xi * yi;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("fit: fewer than two samples in the window");
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit: degenerate abscissa");
    return (n * sxy - sx * sy) / denom;
}

}  // namespace

double fit_slope(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi) {
    return slope_impl(x, y, false, false, lo, hi);
}

double fit_loglog_slope(const std::vector<double>& t, const std::vector<double>& y, double lo,
                        double hi) {
    return slope_impl(t, y, true, true, lo, hi);
}

double fit_exp_rate(const std::vector<double>& t, const std::vector<double>& y, double lo,
                    double hi) {
    return slope_impl(t, y, false, true, lo, hi);
}

double fit_slope_vs_logt(const std::vector<double>& t, const std::vector<double>& y, double lo,
                         double hi) {
    return slope_impl(t, y, true, false, lo, hi);
}

double sup_relative_deviation(const std::vector<double>& t, const std::vector<double>& a,
                              const std::vector<double>& b, double lo, double hi) {
    if (t.size() != a.size() || t.size() != b.size())
        throw std::invalid_argument("sup_relative_deviation: size mismatch");
    double num = 0.0, den = 0.0;
    long n = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < lo || t[i] > hi) continue;
        num = std::max(num, std::abs(a[i] - b[i]));
        den = std::max(den, std::abs(b[i]));
        ++n;
    }
    if (n == 0) throw std::invalid_argument("sup_relative_deviation: empty window");
    if (den == 0.0) return num == 0.0 ? 0.0 : HUGE_VAL;
    return num / den;
}

}  // namespace entchaos
