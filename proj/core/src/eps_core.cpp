#include "gflab/eps_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gflab/errors.hpp"
#include "gflab/numerics.hpp"

namespace gflab {

std::vector<double> DyadicGrid::samples() const {
    std::vector<double> s;
    s.reserve(std::size_t(k_max) + 1);
    double e = eps0;
    for (int k = 0; k <= k_max; ++k) {
        s.push_back(e);
        e *= 0.5;
    }
    return s;
}

DyadicGrid DyadicGrid::refined(int extra_levels) const {
    return {eps0, k_max + extra_levels};
}

EpsRepresentative EpsRepresentative::from_function(std::function<double(double)> f,
                                                   double eta, std::string label) {
    EpsRepresentative r;
    r.eval_ = std::move(f);
    r.eta_ = eta;
    r.label_ = std::move(label);
    return r;
}

EpsRepresentative EpsRepresentative::from_closed_form(ClosedForm form, double eta) {
    EpsRepresentative r;
    ClosedForm norm = normalize(form);
    r.eval_ = [norm](double eps) { return norm.eval(eps); };
    r.label_ = norm.str();
    r.form_ = std::move(norm);
    r.eta_ = eta;
    return r;
}

EpsRepresentative EpsRepresentative::constant(double c) {
    return from_closed_form(ClosedForm::constant(c));
}

EpsRepresentative EpsRepresentative::power(double coeff, double p) {
    return from_closed_form(ClosedForm::monomial(coeff, p));
}

EpsRepresentative EpsRepresentative::exp_small(double rate) {
    return from_closed_form(ClosedForm::exp_small(1.0, rate));
}

double EpsRepresentative::operator()(double eps) const {
    if (!(eps > 0.0)) throw DomainError("eps must be strictly positive");
    if (!eval_) throw DomainError("empty representative");
    return eval_(eps);
}

namespace {

EpsRepresentative combine(const EpsRepresentative& f, const EpsRepresentative& g,
                          bool product) {
    const double eta = std::min(f.eta(), g.eta());
    if (f.form() && g.form()) {
        ClosedForm cf = product ? mul(*f.form(), *g.form())
                                : add(*f.form(), *g.form());
        return EpsRepresentative::from_closed_form(std::move(cf), eta);
    }
    auto fe = f;
    auto ge = g;
    auto fn = [fe, ge, product](double eps) {
        return product ? fe(eps) * ge(eps) : fe(eps) + ge(eps);
    };
    return EpsRepresentative::from_function(fn, eta,
                                            f.label() + (product ? " * " : " + ") + g.label());
}

}  // namespace

EpsRepresentative add(const EpsRepresentative& f, const EpsRepresentative& g) {
    return combine(f, g, false);
}

EpsRepresentative mul(const EpsRepresentative& f, const EpsRepresentative& g) {
    return combine(f, g, true);
}

EpsRepresentative sub(const EpsRepresentative& f, const EpsRepresentative& g) {
    if (f.form() && g.form()) {
        return EpsRepresentative::from_closed_form(add(*f.form(), negate(*g.form())),
                                                   std::min(f.eta(), g.eta()));
    }
    auto fe = f;
    auto ge = g;
    return EpsRepresentative::from_function(
        [fe, ge](double eps) { return fe(eps) - ge(eps); },
        std::min(f.eta(), g.eta()), f.label() + " - " + g.label());
}

AsymptoticClass classify_samples(const std::vector<double>& eps_in,
                                 const std::vector<double>& values_in,
                                 const ClassifyOptions& opts) {
    AsymptoticClass out;
    out.confidence = Confidence::Numeric;

    // Truncate at the first non-finite sample; 1/eps-type growth must
    // still be classifiable from the finite head.
    std::vector<double> eps, vals;
    for (std::size_t i = 0; i < eps_in.size() && i < values_in.size(); ++i) {
        if (!std::isfinite(values_in[i])) {
            out.overflow = true;
            break;
        }
        eps.push_back(eps_in[i]);
        vals.push_back(values_in[i]);
    }
    if (eps.size() < 4) {
        out.indeterminate = true;
        return out;
    }

    const std::size_t n = eps.size();
    const std::size_t tail_len = std::min<std::size_t>(std::size_t(opts.fit_window), n);
    const std::size_t tail_begin = n - tail_len;

    // Absolute-floor grade: everything at solver-noise level counts as
    // negligible. Off by default; enabled by residual-grade callers.
    if (opts.abs_floor > 0.0) {
        bool below = true;
        for (double v : vals) below = below && std::fabs(v) <= opts.abs_floor;
        if (below) {
            out.moderate = true;
            out.negligible = true;
            out.associated_to_zero = true;
            return out;
        }
    }

    bool all_tail_zero = true;
    for (std::size_t i = tail_begin; i < n; ++i) {
        if (std::fabs(vals[i]) != 0.0) all_tail_zero = false;
    }
    // Power test on the deepest samples: eps^q_max there is far below
    // any finite-order decay, so this also admits super-polynomial
    // (exponential-type) pairings that defeat the slope fit.
    bool tail_negligible = true;
    const std::size_t q_begin =
        n - std::min<std::size_t>(std::size_t(std::max(opts.q_tail, 1)), n);
    for (std::size_t i = q_begin; i < n; ++i) {
        if (std::fabs(vals[i]) > std::pow(eps[i], double(opts.q_max)))
            tail_negligible = false;
    }
    if (all_tail_zero || tail_negligible) {
        out.moderate = !out.overflow;
        out.negligible = true;
        out.associated_to_zero = true;
        return out;
    }

    std::vector<double> te(eps.begin() + tail_begin, eps.end());
    std::vector<double> tv(vals.begin() + tail_begin, vals.end());

    auto direct = fit_loglog(te, tv);
    bool converged = direct && direct->residual_rms <= opts.fit_residual_tol;
    double slope = converged ? direct->slope : 0.0;

    if (!converged) {
        // Oscillation-tolerant envelope: running max from the small-eps end.
        std::vector<double> env(tv.size());
        double m = 0.0;
        for (std::size_t i = tv.size(); i-- > 0;) {
            m = std::max(m, std::fabs(tv[i]));
            env[i] = m;
        }
        auto envfit = fit_loglog(te, env);
        if (envfit && envfit->residual_rms <= opts.fit_residual_tol) {
            converged = true;
            slope = envfit->slope;
        }
    }

    if (!converged) {
        out.indeterminate = true;
        return out;
    }

    out.moderate = !out.overflow;
    out.negligible = false;
    if (slope >= opts.slope_tol) {
        out.associated_to_zero = true;
        out.leading_order = slope;
    } else if (slope <= -opts.slope_tol) {
        out.associated_to_zero = false;
        out.leading_order = slope;
    } else {
        double min_abs = std::fabs(tv[0]);
        for (double v : tv) min_abs = std::min(min_abs, std::fabs(v));
        if (min_abs >= opts.flat_floor) {
            out.associated_to_zero = false;
            out.leading_order = slope;
        } else {
            out.indeterminate = true;
            out.moderate = false;
        }
    }
    return out;
}

AsymptoticClass classify(const EpsRepresentative& f, const DyadicGrid& grid,
                         const ClassifyOptions& opts) {
    if (f.form()) {
        const ClosedClass cc = classify_closed(*f.form());
        AsymptoticClass out;
        out.confidence = Confidence::Exact;
        out.moderate = true;  // the grammar admits at most power-law growth
        out.negligible = cc.negligible;
        out.associated_to_zero = cc.associated_to_zero;
        out.leading_order = cc.leading_order;
        return out;
    }
    std::vector<double> eps = grid.samples();
    std::vector<double> vals;
    vals.reserve(eps.size());
    for (double e : eps) {
        double v;
        try {
            v = f(e);
        } catch (const Error&) {
            v = std::numeric_limits<double>::quiet_NaN();
        }
        vals.push_back(v);
    }
    return classify_samples(eps, vals, opts);
}

Tristate eq_in_en(const EpsRepresentative& f, const EpsRepresentative& g,
                  const DyadicGrid& grid, const ClassifyOptions& opts) {
    const AsymptoticClass c = classify(sub(f, g), grid, opts);
    if (c.indeterminate) return Tristate::Indeterminate;
    return c.negligible ? Tristate::True : Tristate::False;
}

Tristate associated_to_zero(const EpsRepresentative& f, const DyadicGrid& grid,
                            const ClassifyOptions& opts) {
    const AsymptoticClass c = classify(f, grid, opts);
    if (c.indeterminate) return Tristate::Indeterminate;
    return c.associated_to_zero ? Tristate::True : Tristate::False;
}

const char* to_string(Tristate t) {
    switch (t) {
        case Tristate::True: return "true";
        case Tristate::False: return "false";
        default: return "indeterminate";
    }
}

}  // namespace gflab
