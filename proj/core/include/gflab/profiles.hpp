#pragma once

#include <functional>
#include <string>
#include <vector>

namespace gflab {

/// Smooth Heaviside microstructure: value runs from 0 to 1, derivative
/// is the analytic derivative of value. Outside [-cutoff, cutoff] the
/// value is clamped to the limit values and the derivative to 0.
struct HeavisideProfile {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
    double cutoff = 1.0;
    std::string tag;
    bool monotone = true;
    bool range_in_unit_interval = true;  // certificate for Sqrt nodes

    // Serialization breadcrumbs: set while the profile is expressible
    // as preset(base_tag) widened then shifted; empty base_tag means
    // not serializable.
    std::string base_tag;
    double preset_shift = 0.0;
    double preset_width = 1.0;

    double value_at(double y) const {
        if (y <= -cutoff) return 0.0;
        if (y >= cutoff) return 1.0;
        return value(y);
    }
    double deriv_at(double y) const {
        if (y <= -cutoff || y >= cutoff) return 0.0;
        return deriv(y);
    }
};

/// Dirac microstructure: unit-mass shape on [-cutoff, cutoff].
struct DiracProfile {
    std::function<double(double)> value;
    std::function<double(double)> deriv;  // analytic derivative of value
    double cutoff = 1.0;
    std::string tag;
    bool nonnegative = true;  // certificate for Sqrt nodes

    double value_at(double y) const {
        if (y <= -cutoff || y >= cutoff) return 0.0;
        return value(y);
    }
    double deriv_at(double y) const {
        if (y <= -cutoff || y >= cutoff) return 0.0;
        return deriv(y);
    }
};

/// tags: tanh, erf, smoothstep, skewed, overshoot
HeavisideProfile preset_heaviside(const std::string& tag);
const std::vector<std::string>& heaviside_preset_tags();

/// tags: bump, parabolic, skewed
DiracProfile preset_dirac(const std::string& tag);
const std::vector<std::string>& dirac_preset_tags();

/// K((y - shift)); limits unchanged.
HeavisideProfile shifted(const HeavisideProfile& k, double shift);
/// K(y / width), width > 0.
HeavisideProfile widened(const HeavisideProfile& k, double width);

/// Profile from tabulated (y, value) samples, monotone-in-y grid.
/// Piecewise cubic Hermite interpolation; the derivative map is the
/// interpolant's analytic derivative. Nodal slopes are taken from
/// `slopes` when given, otherwise from central differences.
HeavisideProfile tabulated_heaviside(std::vector<double> y,
                                     std::vector<double> value,
                                     const std::string& tag,
                                     std::vector<double> slopes = {});

/// integral of K^n * K' over [-L, L]; 1/(n+1) for every profile with
/// limits 0 and 1. n is capped at 16 to keep the quadrature honest.
double moment(const HeavisideProfile& k, int n);

/// Microstructure parameter A = integral of K_a * K_b' dy.
double mixed_moment(const HeavisideProfile& a, const HeavisideProfile& b);

}  // namespace gflab
