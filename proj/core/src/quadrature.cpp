#include "gflab/quadrature.hpp"

#include <cmath>

#include "gflab/errors.hpp"

namespace gflab {

namespace {

constexpr int kGaussN = 16;

constexpr double kNodes[kGaussN] = {
    -9.89400934991649939e-01, -9.44575023073232600e-01,
    -8.65631202387831755e-01, -7.55404408355002999e-01,
    -6.17876244402643771e-01, -4.58016777657227370e-01,
    -2.81603550779258915e-01, -9.50125098376374544e-02,
    9.50125098376374544e-02,  2.81603550779258915e-01,
    4.58016777657227370e-01,  6.17876244402643771e-01,
    7.55404408355002999e-01,  8.65631202387831755e-01,
    9.44575023073232600e-01,  9.89400934991649939e-01,
};

constexpr double kWeights[kGaussN] = {
    2.71524594117540374e-02, 6.22535239386477063e-02,
    9.51585116824925914e-02, 1.24628971255534030e-01,
    1.49595988816576764e-01, 1.69156519395002619e-01,
    1.82603415044923612e-01, 1.89450610455068585e-01,
    1.89450610455068585e-01, 1.82603415044923612e-01,
    1.69156519395002619e-01, 1.49595988816576764e-01,
    1.24628971255534030e-01, 9.51585116824925914e-02,
    6.22535239386477063e-02, 2.71524594117540374e-02,
};

}  // namespace

double gauss16_panel(const RealFn& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < kGaussN; ++i) {
        sum += kWeights[i] * f(mid + half * kNodes[i]);
    }
    return half * sum;
}

double integrate_composite(const RealFn& f, double a, double b, int panels) {
    if (panels < 1) panels = 1;
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        sum += gauss16_panel(f, a + p * h, a + (p + 1) * h);
    }
    return sum;
}

QuadratureResult integrate_adaptive(const RealFn& f, double a, double b,
                                    double tol, int max_panels) {
    if (!(b > a)) return {0.0, 0.0, 0};
    int panels = 1;
    double prev = integrate_composite(f, a, b, panels);
    while (panels < max_panels) {
        panels *= 2;
        const double cur = integrate_composite(f, a, b, panels);
        const double diff = std::fabs(cur - prev);
        if (diff <= tol) return {cur, diff, panels};
        prev = cur;
    }
    throw QuadratureFailure("adaptive quadrature did not reach tolerance");
}

double integrate_max_width(const RealFn& f, double a, double b,
                           double max_width) {
    if (!(b > a)) return 0.0;
    if (max_width <= 0.0) throw QuadratureFailure("non-positive panel width");
    const int panels = int(std::ceil((b - a) / max_width));
    return integrate_composite(f, a, b, panels);
}

}  // namespace gflab
