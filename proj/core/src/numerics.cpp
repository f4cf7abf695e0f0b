#include "gflab/numerics.hpp"

#include <cmath>

namespace gflab {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    LineFit fit;
    const std::size_t n = x.size();
    fit.points = n;
    if (n < 2) return fit;
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / double(n);
    const double my = sy / double(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) return fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / double(n));
    return fit;
}

std::optional<LineFit> fit_loglog(const std::vector<double>& eps,
                                  const std::vector<double>& values) {
    std::vector<double> lx, ly;
    lx.reserve(eps.size());
    ly.reserve(eps.size());
    for (std::size_t i = 0; i < eps.size() && i < values.size(); ++i) {
        const double v = std::fabs(values[i]);
        if (v > 0.0 && std::isfinite(v) && eps[i] > 0.0) {
            lx.push_back(std::log(eps[i]));
            ly.push_back(std::log(v));
        }
    }
    if (lx.size() < 3) return std::nullopt;
    return fit_line(lx, ly);
}

RichardsonResult richardson_limit(const std::vector<double>& values,
                                  double fallback_order) {
    RichardsonResult res;
    const std::size_t n = values.size();
    if (n == 0) return res;
    if (n == 1) {
        res.limit = values[0];
        return res;
    }
    const double v2 = values[n - 1];   // finest
    const double v1 = values[n - 2];
    double p = fallback_order;
    if (n >= 3) {
        const double d1 = values[n - 2] - values[n - 3];
        const double d2 = v2 - v1;
        if (d2 != 0.0 && d1 / d2 > 1.0) {
            p = std::log2(d1 / d2);
            res.order_estimated = true;
        }
    }
    res.order = p;
    const double f = std::pow(2.0, p);
    res.limit = v2 + (v2 - v1) / (f - 1.0);
    return res;
}

std::optional<double> find_root(const std::function<double(double)>& f,
                                double lo, double hi, double tol_f, int max_iter) {
    double flo = f(lo);
    double fhi = f(hi);
    if (std::fabs(flo) <= tol_f) return lo;
    if (std::fabs(fhi) <= tol_f) return hi;
    if (flo * fhi > 0.0) return std::nullopt;

    int iters = 0;
    while (iters < max_iter && (hi - lo) > 1e-13 * (1.0 + std::fabs(lo))) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        ++iters;
        if (std::fabs(fm) <= tol_f) return mid;
        if (flo * fm <= 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
        // Switch to secant once the bracket is tight.
        if (hi - lo < 1e-6 * (1.0 + std::fabs(lo))) break;
    }
    double x0 = lo, x1 = hi, f0 = flo, f1 = fhi;
    for (; iters < max_iter; ++iters) {
        if (f1 == f0) break;
        const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        const double f2 = f(x2);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        if (std::fabs(f1) <= tol_f) return x1;
    }
    return std::fabs(f1) <= 1e3 * tol_f ? std::optional<double>(x1) : std::nullopt;
}

}  // namespace gflab
