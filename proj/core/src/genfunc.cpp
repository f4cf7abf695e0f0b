#include "gflab/genfunc.hpp"

#include <algorithm>
#include <cmath>

#include "gflab/errors.hpp"
#include "gflab/numerics.hpp"
#include "gflab/quadrature.hpp"
#include "genfunc_node.hpp"

namespace gflab {

SmoothFn SmoothFn::constant(double c) {
    SmoothFn s;
    s.f = [c](double) { return c; };
    s.df = [](double) { return 0.0; };
    s.label = "const(" + std::to_string(c) + ")";
    s.spec = Spec::Const;
    s.params = {c};
    s.nonneg = c >= 0.0;
    return s;
}

SmoothFn SmoothFn::poly(std::vector<double> coeffs) {
    SmoothFn s;
    auto c = coeffs;
    s.f = [c](double x) {
        double v = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
        return v;
    };
    s.df = [c](double x) {
        double v = 0.0;
        for (std::size_t i = c.size(); i-- > 1;) v = v * x + double(i) * c[i];
        return v;
    };
    s.label = "poly";
    s.spec = Spec::Poly;
    s.params = std::move(coeffs);
    return s;
}

SmoothFn SmoothFn::sine(double amp, double freq, double phase) {
    SmoothFn s;
    s.f = [=](double x) { return amp * std::sin(freq * x + phase); };
    s.df = [=](double x) { return amp * freq * std::cos(freq * x + phase); };
    s.label = "sin";
    s.spec = Spec::Sin;
    s.params = {amp, freq, phase};
    return s;
}

namespace {

using Node = GenFunction::Node;
using NodePtr = std::shared_ptr<const Node>;

double ipow(double v, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= v;
    return r;
}

bool nonneg_certified(const NodePtr& n) {
    switch (n->kind) {
        case NodeKind::Smooth: return n->smooth.nonneg;
        case NodeKind::Heaviside: return n->hprof.range_in_unit_interval;
        case NodeKind::Dirac: return n->dprof.nonnegative;
        case NodeKind::Sum: return nonneg_certified(n->a) && nonneg_certified(n->b);
        case NodeKind::Product: return nonneg_certified(n->a) && nonneg_certified(n->b);
        case NodeKind::Scale: return n->factor >= 0.0 && nonneg_certified(n->a);
        case NodeKind::Power:
            return n->exponent % 2 == 0 || nonneg_certified(n->a);
        case NodeKind::Sqrt: return true;
        case NodeKind::Derivative: return false;
    }
    return false;
}

double eval_node(const NodePtr& n, double x, double eps);

double eval_deriv(const NodePtr& n, double x, double eps) {
    switch (n->kind) {
        case NodeKind::Smooth: {
            if (n->smooth.df) return n->smooth.df(x);
            const double h = eps * 1e-4;
            return (n->smooth.f(x + h) - n->smooth.f(x - h)) / (2.0 * h);
        }
        case NodeKind::Heaviside:
            return n->hprof.deriv_at((x - n->x0) / eps) / eps;
        case NodeKind::Dirac:
            if (!n->dprof.deriv)
                throw NonDifferentiableNode("Dirac profile lacks a derivative");
            return n->dprof.deriv_at((x - n->x0) / eps) / (eps * eps);
        case NodeKind::Sum:
            return eval_deriv(n->a, x, eps) + eval_deriv(n->b, x, eps);
        case NodeKind::Product:
            return eval_deriv(n->a, x, eps) * eval_node(n->b, x, eps) +
                   eval_node(n->a, x, eps) * eval_deriv(n->b, x, eps);
        case NodeKind::Scale:
            return n->factor * eval_deriv(n->a, x, eps);
        case NodeKind::Power: {
            const double base = eval_node(n->a, x, eps);
            return double(n->exponent) * ipow(base, n->exponent - 1) *
                   eval_deriv(n->a, x, eps);
        }
        case NodeKind::Sqrt: {
            const double v = eval_node(n->a, x, eps);
            if (v <= 0.0)
                throw NonDifferentiableNode("sqrt derivative at a zero of the operand");
            return eval_deriv(n->a, x, eps) / (2.0 * std::sqrt(v));
        }
        case NodeKind::Derivative:
            throw NonDifferentiableNode("second derivatives are not supported");
    }
    return 0.0;
}

double eval_node(const NodePtr& n, double x, double eps) {
    switch (n->kind) {
        case NodeKind::Smooth: return n->smooth.f(x);
        case NodeKind::Heaviside: return n->hprof.value_at((x - n->x0) / eps);
        case NodeKind::Dirac: return n->dprof.value_at((x - n->x0) / eps) / eps;
        case NodeKind::Sum: return eval_node(n->a, x, eps) + eval_node(n->b, x, eps);
        case NodeKind::Product:
            return eval_node(n->a, x, eps) * eval_node(n->b, x, eps);
        case NodeKind::Scale: return n->factor * eval_node(n->a, x, eps);
        case NodeKind::Power: return ipow(eval_node(n->a, x, eps), n->exponent);
        case NodeKind::Sqrt: {
            const double v = eval_node(n->a, x, eps);
            if (v < 0.0) {
                if (v > -1e-12) return 0.0;  // roundoff at a certified zero
                throw SqrtOfNegative("sqrt of negative value at x=" + std::to_string(x));
            }
            return std::sqrt(v);
        }
        case NodeKind::Derivative: return eval_deriv(n->a, x, eps);
    }
    return 0.0;
}

void collect_features(const NodePtr& n, double eps,
                      std::vector<std::pair<double, double>>& out) {
    switch (n->kind) {
        case NodeKind::Heaviside:
            out.emplace_back(n->x0 - n->hprof.cutoff * eps,
                             n->x0 + n->hprof.cutoff * eps);
            break;
        case NodeKind::Dirac:
            out.emplace_back(n->x0 - n->dprof.cutoff * eps,
                             n->x0 + n->dprof.cutoff * eps);
            break;
        default:
            if (n->a) collect_features(n->a, eps, out);
            if (n->b) collect_features(n->b, eps, out);
    }
}

}  // namespace

GenFunction GenFunction::smooth(SmoothFn fn) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Smooth;
    n->smooth = std::move(fn);
    return GenFunction(n, {});
}

GenFunction GenFunction::constant(double c) { return smooth(SmoothFn::constant(c)); }

GenFunction GenFunction::heaviside_at(double x0, HeavisideProfile profile) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Heaviside;
    n->x0 = x0;
    n->hprof = std::move(profile);
    return GenFunction(n, {});
}

GenFunction GenFunction::dirac_at(double x0, DiracProfile profile) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Dirac;
    n->x0 = x0;
    n->dprof = std::move(profile);
    return GenFunction(n, {});
}

namespace {
Interval intersect(Interval a, Interval b) {
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}
}  // namespace

GenFunction GenFunction::sum(const GenFunction& a, const GenFunction& b) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Sum;
    n->a = a.node();
    n->b = b.node();
    return GenFunction(n, intersect(a.domain(), b.domain()));
}

GenFunction GenFunction::product(const GenFunction& a, const GenFunction& b) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Product;
    n->a = a.node();
    n->b = b.node();
    return GenFunction(n, intersect(a.domain(), b.domain()));
}

GenFunction GenFunction::scale(double factor, const GenFunction& a) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Scale;
    n->factor = factor;
    n->a = a.node();
    return GenFunction(n, a.domain());
}

GenFunction GenFunction::power(const GenFunction& a, int p) {
    if (p < 1) throw DomainError("power exponent must be >= 1");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Power;
    n->exponent = p;
    n->a = a.node();
    return GenFunction(n, a.domain());
}

GenFunction GenFunction::sqrt(const GenFunction& a) {
    if (!nonneg_certified(a.node()))
        throw CertificateViolation("sqrt operand lacks a nonnegativity certificate");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Sqrt;
    n->a = a.node();
    return GenFunction(n, a.domain());
}

GenFunction GenFunction::derivative(const GenFunction& a) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Derivative;
    n->a = a.node();
    return GenFunction(n, a.domain());
}

GenFunction GenFunction::with_domain(Interval d) const {
    return GenFunction(node_, d);
}

double GenFunction::evaluate(double x, double eps) const {
    if (!node_) throw DomainError("empty generalized function");
    if (!(eps > 0.0)) throw DomainError("eps must be strictly positive");
    if (!domain_.contains(x)) throw DomainError("x outside the domain");
    return eval_node(node_, x, eps);
}

std::vector<std::pair<double, double>> GenFunction::feature_intervals(double eps) const {
    std::vector<std::pair<double, double>> raw;
    if (node_) collect_features(node_, eps, raw);
    std::sort(raw.begin(), raw.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& iv : raw) {
        if (!merged.empty() && iv.first <= merged.back().second) {
            merged.back().second = std::max(merged.back().second, iv.second);
        } else {
            merged.push_back(iv);
        }
    }
    return merged;
}

GenFunction operator+(const GenFunction& a, const GenFunction& b) {
    return GenFunction::sum(a, b);
}

GenFunction operator-(const GenFunction& a, const GenFunction& b) {
    return GenFunction::sum(a, GenFunction::scale(-1.0, b));
}

GenFunction operator*(const GenFunction& a, const GenFunction& b) {
    return GenFunction::product(a, b);
}

double TestFunction::operator()(double x) const {
    const double s = (x - center) / width;
    const double d = 1.0 - s * s;
    if (d <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / d);
}

std::vector<TestFunction> make_battery(Interval domain, int count,
                                       std::vector<double> widths) {
    std::vector<TestFunction> battery;
    if (count < 1) return battery;
    const double wmax = *std::max_element(widths.begin(), widths.end());
    const double lo = domain.lo + wmax;
    const double hi = domain.hi - wmax;
    const double mid = 0.5 * (domain.lo + domain.hi);
    for (int i = 0; i < count; ++i) {
        double c = (count == 1) ? mid : lo + (hi - lo) * double(i) / double(count - 1);
        if (count % 2 == 1 && i == count / 2) c = mid;
        TestFunction phi;
        phi.center = c;
        phi.width = widths[std::size_t(i) % widths.size()];
        phi.id = "phi" + std::to_string(i);
        battery.push_back(phi);
    }
    return battery;
}

double pair(const GenFunction& u, const TestFunction& phi, double eps) {
    if (!(phi.lo() >= u.domain().lo && phi.hi() <= u.domain().hi))
        throw DomainError("test function support outside the domain");
    const double coarse = phi.width / 64.0;
    const double fine = std::min(eps / 4.0, coarse);
    auto integrand = [&u, &phi, eps](double x) {
        const double p = phi(x);
        if (p == 0.0) return 0.0;
        return u.evaluate(x, eps) * p;
    };
    // Split supp(phi) into feature segments (eps-resolution) and the
    // smooth remainder (phi-resolution).
    auto features = u.feature_intervals(eps);
    double total = 0.0;
    double cursor = phi.lo();
    const double end = phi.hi();
    for (const auto& f : features) {
        const double a = std::max(cursor, f.first);
        const double b = std::min(end, f.second);
        if (b <= cursor || a >= end) continue;
        if (a > cursor) total += integrate_max_width(integrand, cursor, a, coarse);
        total += integrate_max_width(integrand, a, b, fine);
        cursor = b;
        if (cursor >= end) break;
    }
    if (cursor < end) total += integrate_max_width(integrand, cursor, end, coarse);
    return total;
}

std::vector<double> pairing_sweep(const GenFunction& u, const TestFunction& phi,
                                  const DyadicGrid& grid) {
    std::vector<double> out;
    for (double e : grid.samples()) out.push_back(pair(u, phi, e));
    return out;
}

ClassifyOptions pairing_classify_options() {
    ClassifyOptions o;
    o.fit_window = 6;
    return o;
}

const char* to_string(AssociationKind k) {
    switch (k) {
        case AssociationKind::EqualInG: return "equal_in_G";
        case AssociationKind::AssociatedNotEqual: return "associated_not_equal";
        case AssociationKind::NotAssociated: return "not_associated";
        default: return "indeterminate";
    }
}

AssociationVerdict association(const GenFunction& u, const GenFunction& v,
                               const std::vector<TestFunction>& battery,
                               const DyadicGrid& grid, const ClassifyOptions& opts) {
    if (battery.empty()) throw DomainError("association needs a nonempty battery");
    AssociationVerdict verdict;
    verdict.eps = grid.samples();
    const GenFunction diff = u - v;
    bool all_negligible = true;
    bool all_associated = true;
    bool any_failed = false;
    bool any_indeterminate = false;
    for (const auto& phi : battery) {
        std::vector<double> vals = pairing_sweep(diff, phi, grid);
        AsymptoticClass cls = classify_samples(verdict.eps, vals, opts);
        if (cls.indeterminate) {
            any_indeterminate = true;
        } else {
            all_negligible = all_negligible && cls.negligible;
            all_associated = all_associated && cls.associated_to_zero;
            if (!cls.associated_to_zero) any_failed = true;
        }
        verdict.per_phi.push_back(cls);
        verdict.pairings.push_back(std::move(vals));
    }
    if (any_failed)
        verdict.aggregate = AssociationKind::NotAssociated;
    else if (any_indeterminate)
        verdict.aggregate = AssociationKind::Indeterminate;
    else if (all_negligible)
        verdict.aggregate = AssociationKind::EqualInG;
    else if (all_associated)
        verdict.aggregate = AssociationKind::AssociatedNotEqual;
    else
        verdict.aggregate = AssociationKind::Indeterminate;
    return verdict;
}

double integral_I(const HeavisideProfile& k, const DyadicGrid& grid) {
    std::vector<double> values;
    for (double eps : grid.samples()) {
        auto f = [&k, eps](double x) {
            const double y = x / eps;
            const double kp = k.deriv_at(y);
            if (kp == 0.0) return 0.0;
            const double kv = k.value_at(y);
            return (kv * kv - kv) * kp / eps;
        };
        const double L = k.cutoff * eps;
        values.push_back(integrate_adaptive(f, -L, L, 1e-11, 1 << 16).value);
    }
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi - lo > 1e-8)
        throw QuadratureFailure("integral_I samples disagree across eps");
    double mean = 0.0;
    for (double v : values) mean += v;
    return mean / double(values.size());
}

SqrtDeltaReport sqrt_delta_demo(const DiracProfile& psi, const TestFunction& phi,
                                const DyadicGrid& grid) {
    if (!psi.nonnegative)
        throw CertificateViolation("sqrt-delta needs a nonnegative Dirac profile");
    SqrtDeltaReport rep;
    rep.eps = grid.samples();
    rep.phi_at_center = phi(0.0);

    const GenFunction field = GenFunction::sqrt(GenFunction::dirac_at(0.0, psi));
    const GenFunction energy = GenFunction::power(field, 2);

    rep.field_pairings = pairing_sweep(field, phi, grid);
    rep.energy_pairings = pairing_sweep(energy, phi, grid);

    const ClassifyOptions opts = pairing_classify_options();
    rep.field_class = classify_samples(rep.eps, rep.field_pairings, opts);
    rep.energy_class = classify_samples(rep.eps, rep.energy_pairings, opts);
    if (auto fit = fit_loglog(rep.eps, rep.field_pairings)) rep.field_slope = fit->slope;
    rep.energy_limit = richardson_limit(rep.energy_pairings, 2.0).limit;
    return rep;
}

}  // namespace gflab
