#pragma once

#include <vector>

namespace entchaos {

/// Least-squares slope of y against x restricted to x in [lo, hi].
double fit_slope(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi);

/// Slope of ln y against ln t (polynomial growth exponent). Nonpositive
/// samples are skipped.
double fit_loglog_slope(const std::vector<double>& t, const std::vector<double>& y, double lo,
                        double hi);

/// Slope of ln y against t (exponential growth rate). Nonpositive samples
/// are skipped.
double fit_exp_rate(const std::vector<double>& t, const std::vector<double>& y, double lo,
                    double hi);

/// Slope of y against ln t (logarithmic growth coefficient).
double fit_slope_vs_logt(const std::vector<double>& t, const std::vector<double>& y, double lo,
                         double hi);

/// Normalized sup deviation between two curves on a common time grid:
/// max|a-b| / max|b| over the window.
double sup_relative_deviation(const std::vector<double>& t, const std::vector<double>& a,
                              const std::vector<double>& b, double lo, double hi);

}  // namespace entchaos
