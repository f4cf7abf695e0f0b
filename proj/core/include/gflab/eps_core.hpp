#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gflab/closed_form.hpp"

namespace gflab {

enum class Tristate { True, False, Indeterminate };

/// Geometric sampling grid eps_k = eps0 * 2^-k, k = 0..k_max.
struct DyadicGrid {
    double eps0 = 0.5;
    int k_max = 40;

    std::vector<double> samples() const;
    DyadicGrid refined(int extra_levels) const;

    static DyadicGrid classification_default() { return {0.5, 40}; }
    /// Coarser grid for pairing sweeps, where each sample costs a
    /// quadrature rather than a function call.
    static DyadicGrid pairing_default() { return {0.1, 9}; }
};

enum class Confidence { Exact, Numeric };

struct AsymptoticClass {
    bool moderate = false;
    bool negligible = false;
    bool associated_to_zero = false;
    std::optional<double> leading_order;
    Confidence confidence = Confidence::Numeric;
    bool indeterminate = false;   // set when no stable verdict exists
    bool overflow = false;        // some grid sample exceeded double range
};

struct ClassifyOptions {
    int fit_window = 12;          // tail samples used for the slope fit
    int q_max = 12;               // negligibility test |f| <= eps^q_max
    int q_tail = 2;               // deepest samples the power test runs on
    double slope_tol = 0.15;      // decision band around fitted exponents
    double fit_residual_tol = 0.4; // rms log-residual before envelope fallback
    double flat_floor = 1e-6;     // |slope|<tol values above this => not associated
    double abs_floor = 0.0;       // >0: all samples below => negligible grade
};

/// One representative of a generalized number: a map eps -> value on
/// (0, eta), optionally carrying its closed form.
class EpsRepresentative {
public:
    EpsRepresentative() = default;

    static EpsRepresentative from_function(std::function<double(double)> f,
                                           double eta = 1.0,
                                           std::string label = "opaque");
    static EpsRepresentative from_closed_form(ClosedForm form, double eta = 1.0);
    static EpsRepresentative constant(double c);
    /// coeff * eps^power
    static EpsRepresentative power(double coeff, double p);
    /// exp(-rate/eps), rate > 0
    static EpsRepresentative exp_small(double rate);

    double operator()(double eps) const;
    double eta() const { return eta_; }
    const std::optional<ClosedForm>& form() const { return form_; }
    const std::string& label() const { return label_; }

private:
    std::function<double(double)> eval_;
    std::optional<ClosedForm> form_;
    double eta_ = 1.0;
    std::string label_;
};

EpsRepresentative add(const EpsRepresentative& f, const EpsRepresentative& g);
EpsRepresentative mul(const EpsRepresentative& f, const EpsRepresentative& g);
EpsRepresentative sub(const EpsRepresentative& f, const EpsRepresentative& g);

/// Moderateness / negligibility / association verdicts. Exact when the
/// closed form is available, otherwise a slope fit on the grid tail.
AsymptoticClass classify(const EpsRepresentative& f,
                         const DyadicGrid& grid = DyadicGrid::classification_default(),
                         const ClassifyOptions& opts = {});

/// Classify a raw sample vector (used by pairing sweeps that already
/// evaluated their quantity on the grid).
AsymptoticClass classify_samples(const std::vector<double>& eps,
                                 const std::vector<double>& values,
                                 const ClassifyOptions& opts = {});

/// Equality in the quotient algebra: difference negligible.
Tristate eq_in_en(const EpsRepresentative& f, const EpsRepresentative& g,
                  const DyadicGrid& grid = DyadicGrid::classification_default(),
                  const ClassifyOptions& opts = {});

Tristate associated_to_zero(const EpsRepresentative& f,
                            const DyadicGrid& grid = DyadicGrid::classification_default(),
                            const ClassifyOptions& opts = {});

const char* to_string(Tristate t);

}  // namespace gflab
