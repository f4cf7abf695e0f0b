#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace gflab {

/// Least-squares line through (x_i, y_i); residual_rms is in y units.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    std::size_t points = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Slope of log|v| against log(eps). Pairs with v == 0 are skipped.
/// Returns nullopt if fewer than 3 usable points remain.
std::optional<LineFit> fit_loglog(const std::vector<double>& eps,
                                  const std::vector<double>& values);

/// Richardson extrapolation for samples v(eps_k) on a ratio-2 grid
/// (eps sorted descending). Estimates the convergence order from the
/// last three samples and removes the leading error term.
struct RichardsonResult {
    double limit = 0.0;
    double order = 0.0;   // estimated p in v(eps) = L + C eps^p
    bool order_estimated = false;
};

RichardsonResult richardson_limit(const std::vector<double>& values,
                                  double fallback_order = 1.0);

/// Bracketed root: bisection until the interval is small, then secant
/// polish; the stopping test is on |f|. Returns nullopt when [lo, hi]
/// does not bracket a sign change.
std::optional<double> find_root(const std::function<double(double)>& f,
                                double lo, double hi, double tol_f = 1e-10,
                                int max_iter = 200);

}  // namespace gflab
