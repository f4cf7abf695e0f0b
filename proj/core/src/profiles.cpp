#include "gflab/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "gflab/errors.hpp"
#include "gflab/quadrature.hpp"

namespace gflab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 1 / integral of exp(-1/(1-y^2)) over (-1, 1)
constexpr double kBumpNorm = 2.2522836210435810105;

double smoothstep_base(double s) { return s * s * (3.0 - 2.0 * s); }

}  // namespace

HeavisideProfile preset_heaviside(const std::string& tag) {
    HeavisideProfile p;
    p.tag = tag;
    p.base_tag = tag;
    if (tag == "tanh") {
        p.cutoff = 20.0;
        p.value = [](double y) { return 0.5 * (1.0 + std::tanh(y)); };
        p.deriv = [](double y) {
            const double c = std::cosh(y);
            return 0.5 / (c * c);
        };
    } else if (tag == "erf") {
        p.cutoff = 20.0;
        p.value = [](double y) { return 0.5 * (1.0 + std::erf(y)); };
        p.deriv = [](double y) { return std::exp(-y * y) / std::sqrt(kPi); };
    } else if (tag == "smoothstep") {
        p.cutoff = 1.0;
        p.value = [](double y) { return smoothstep_base(0.5 * (y + 1.0)); };
        p.deriv = [](double y) {
            const double s = 0.5 * (y + 1.0);
            return 3.0 * s * (1.0 - s);
        };
    } else if (tag == "skewed") {
        // Gumbel shape: genuinely asymmetric, value(0) = 1/e.
        p.cutoff = 25.0;
        p.value = [](double y) { return std::exp(-std::exp(-y)); };
        p.deriv = [](double y) { return std::exp(-y - std::exp(-y)); };
    } else if (tag == "overshoot") {
        // Non-monotone; dips below 0 near the left edge and exceeds 1
        // near the right edge.
        p.cutoff = 1.0;
        p.monotone = false;
        p.range_in_unit_interval = false;
        const double amp = 10.0;
        p.value = [amp](double y) {
            const double s = 0.5 * (y + 1.0);
            const double w = s * (1.0 - s);
            return smoothstep_base(s) + amp * w * w * std::sin(3.0 * kPi * s);
        };
        p.deriv = [amp](double y) {
            const double s = 0.5 * (y + 1.0);
            const double w = s * (1.0 - s);
            const double dw = 1.0 - 2.0 * s;
            const double ds = 6.0 * s * (1.0 - s) +
                              amp * (2.0 * w * dw * std::sin(3.0 * kPi * s) +
                                     w * w * 3.0 * kPi * std::cos(3.0 * kPi * s));
            return 0.5 * ds;
        };
    } else {
        throw UnknownTag("unknown Heaviside preset: " + tag);
    }
    return p;
}

const std::vector<std::string>& heaviside_preset_tags() {
    static const std::vector<std::string> tags = {"tanh", "erf", "smoothstep",
                                                  "skewed", "overshoot"};
    return tags;
}

DiracProfile preset_dirac(const std::string& tag) {
    DiracProfile p;
    p.tag = tag;
    p.cutoff = 1.0;
    if (tag == "bump") {
        p.value = [](double y) {
            const double d = 1.0 - y * y;
            if (d <= 0.0) return 0.0;
            return kBumpNorm * std::exp(-1.0 / d);
        };
        p.deriv = [](double y) {
            const double d = 1.0 - y * y;
            if (d <= 0.0) return 0.0;
            return kBumpNorm * std::exp(-1.0 / d) * (-2.0 * y / (d * d));
        };
    } else if (tag == "parabolic") {
        p.value = [](double y) { return 0.75 * (1.0 - y * y); };
        p.deriv = [](double y) { return -1.5 * y; };
    } else if (tag == "skewed") {
        // Unit mass: the odd part integrates to zero. Nonnegative on
        // [-1, 1] since 1 + y/2 >= 1/2 there.
        p.value = [](double y) { return 0.75 * (1.0 - y * y) * (1.0 + 0.5 * y); };
        p.deriv = [](double y) {
            return 0.75 * (-2.0 * y * (1.0 + 0.5 * y) + 0.5 * (1.0 - y * y));
        };
    } else {
        throw UnknownTag("unknown Dirac preset: " + tag);
    }
    return p;
}

const std::vector<std::string>& dirac_preset_tags() {
    static const std::vector<std::string> tags = {"bump", "parabolic", "skewed"};
    return tags;
}

HeavisideProfile shifted(const HeavisideProfile& k, double shift) {
    HeavisideProfile p = k;
    p.tag = k.tag + "@" + std::to_string(shift);
    p.cutoff = k.cutoff + std::fabs(shift);
    p.preset_shift = k.preset_shift + shift;
    auto base = std::make_shared<HeavisideProfile>(k);
    p.value = [base, shift](double y) { return base->value_at(y - shift); };
    p.deriv = [base, shift](double y) { return base->deriv_at(y - shift); };
    return p;
}

HeavisideProfile widened(const HeavisideProfile& k, double width) {
    if (!(width > 0.0)) throw DomainError("profile width must be positive");
    HeavisideProfile p = k;
    p.tag = k.tag + "*" + std::to_string(width);
    p.cutoff = k.cutoff * width;
    if (k.preset_shift != 0.0) p.base_tag.clear();  // order no longer expressible
    p.preset_width = k.preset_width * width;
    auto base = std::make_shared<HeavisideProfile>(k);
    p.value = [base, width](double y) { return base->value_at(y / width); };
    p.deriv = [base, width](double y) { return base->deriv_at(y / width) / width; };
    return p;
}

namespace {

struct Table {
    std::vector<double> y, v, m;  // nodes, values, Hermite slopes
};

double hermite_eval(const Table& t, double x, bool want_deriv) {
    const auto it = std::upper_bound(t.y.begin(), t.y.end(), x);
    std::size_t i = std::size_t(std::max<std::ptrdiff_t>(
        0, std::min<std::ptrdiff_t>(it - t.y.begin() - 1,
                                    std::ptrdiff_t(t.y.size()) - 2)));
    const double h = t.y[i + 1] - t.y[i];
    const double s = (x - t.y[i]) / h;
    const double v0 = t.v[i], v1 = t.v[i + 1];
    const double m0 = t.m[i] * h, m1 = t.m[i + 1] * h;
    if (!want_deriv) {
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * v0 + (s3 - 2 * s2 + s) * m0 +
               (-2 * s3 + 3 * s2) * v1 + (s3 - s2) * m1;
    }
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * v0 + (3 * s2 - 4 * s + 1) * m0 +
            (-6 * s2 + 6 * s) * v1 + (3 * s2 - 2 * s) * m1) /
           h;
}

}  // namespace

HeavisideProfile tabulated_heaviside(std::vector<double> y,
                                     std::vector<double> value,
                                     const std::string& tag,
                                     std::vector<double> slopes) {
    if (y.size() != value.size() || y.size() < 4)
        throw DomainError("tabulated profile needs >= 4 samples");
    if (!slopes.empty() && slopes.size() != y.size())
        throw DomainError("slope table size mismatch");
    auto t = std::make_shared<Table>();
    t->y = std::move(y);
    t->v = std::move(value);
    const std::size_t n = t->y.size();
    if (!slopes.empty()) {
        t->m = std::move(slopes);
    } else {
        t->m.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == 0)
                t->m[i] = (t->v[1] - t->v[0]) / (t->y[1] - t->y[0]);
            else if (i == n - 1)
                t->m[i] = (t->v[n - 1] - t->v[n - 2]) / (t->y[n - 1] - t->y[n - 2]);
            else
                t->m[i] = (t->v[i + 1] - t->v[i - 1]) / (t->y[i + 1] - t->y[i - 1]);
        }
    }
    HeavisideProfile p;
    p.tag = tag;
    p.cutoff = std::max(std::fabs(t->y.front()), std::fabs(t->y.back()));
    bool mono = true;
    bool in_unit = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (i + 1 < n && t->v[i + 1] < t->v[i] - 1e-12) mono = false;
        if (t->v[i] < -1e-12 || t->v[i] > 1.0 + 1e-12) in_unit = false;
    }
    p.monotone = mono;
    p.range_in_unit_interval = in_unit;
    p.value = [t](double x) { return hermite_eval(*t, x, false); };
    p.deriv = [t](double x) { return hermite_eval(*t, x, true); };
    return p;
}

double moment(const HeavisideProfile& k, int n) {
    if (n < 0 || n > 16)
        throw DomainError("moment order must be in [0, 16]");
    auto f = [&k, n](double y) {
        double kp = k.deriv_at(y);
        if (kp == 0.0) return 0.0;
        return std::pow(k.value_at(y), double(n)) * kp;
    };
    return integrate_adaptive(f, -k.cutoff, k.cutoff, 1e-10, 1 << 18).value;
}

double mixed_moment(const HeavisideProfile& a, const HeavisideProfile& b) {
    auto f = [&a, &b](double y) {
        double bp = b.deriv_at(y);
        if (bp == 0.0) return 0.0;
        return a.value_at(y) * bp;
    };
    // shifted compact profiles put C^1 kinks far inside the interval;
    // the tolerance leaves room for the cubic convergence across them
    return integrate_adaptive(f, -b.cutoff, b.cutoff, 1e-10, 1 << 18).value;
}

}  // namespace gflab
