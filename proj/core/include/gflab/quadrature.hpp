#pragma once

#include <functional>

namespace gflab {

using RealFn = std::function<double(double)>;

/// Single 16-point Gauss-Legendre panel on [a, b]. Exact for
/// polynomials of degree up to 31.
double gauss16_panel(const RealFn& f, double a, double b);

/// Composite 16-point rule with a fixed number of equal panels.
double integrate_composite(const RealFn& f, double a, double b, int panels);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
};

/// Panel-doubling composite integration until the change between
/// successive refinements is below tol. Throws QuadratureFailure if
/// max_panels is reached without convergence.
QuadratureResult integrate_adaptive(const RealFn& f, double a, double b,
                                    double tol, int max_panels = 1 << 20);

/// Composite integration with an upper bound on the panel width.
double integrate_max_width(const RealFn& f, double a, double b,
                           double max_width);

}  // namespace gflab
