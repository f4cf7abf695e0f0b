#include "gflab/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gflab {

double ClosedForm::eval(double eps) const {
    double sum = 0.0;
    const double log_inv = std::log(1.0 / eps);
    for (const auto& t : terms) {
        double v = t.coeff * std::pow(eps, t.power);
        if (t.log_power > 0) v *= std::pow(log_inv, t.log_power);
        if (t.exp_rate > 0.0) v *= std::exp(-t.exp_rate / eps);
        sum += v;
    }
    return sum;
}

std::string ClosedForm::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        if (!first) os << " + ";
        first = false;
        os << t.coeff;
        if (t.power != 0.0) os << "*eps^" << t.power;
        if (t.log_power > 0) os << "*log(1/eps)^" << t.log_power;
        if (t.exp_rate > 0.0) os << "*exp(-" << t.exp_rate << "/eps)";
    }
    return os.str();
}

ClosedForm ClosedForm::constant(double c) {
    return monomial(c, 0.0);
}

ClosedForm ClosedForm::monomial(double coeff, double power, int log_power) {
    ClosedForm f;
    f.terms.push_back({coeff, power, log_power, 0.0});
    return f;
}

ClosedForm ClosedForm::exp_small(double coeff, double rate) {
    ClosedForm f;
    f.terms.push_back({coeff, 0.0, 0, rate});
    return f;
}

ClosedForm add(const ClosedForm& a, const ClosedForm& b) {
    ClosedForm r = a;
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    return normalize(r);
}

ClosedForm mul(const ClosedForm& a, const ClosedForm& b) {
    ClosedForm r;
    for (const auto& ta : a.terms) {
        for (const auto& tb : b.terms) {
            r.terms.push_back({ta.coeff * tb.coeff, ta.power + tb.power,
                               ta.log_power + tb.log_power,
                               ta.exp_rate + tb.exp_rate});
        }
    }
    return normalize(r);
}

ClosedForm negate(const ClosedForm& a) {
    ClosedForm r = a;
    for (auto& t : r.terms) t.coeff = -t.coeff;
    return r;
}

ClosedForm normalize(const ClosedForm& a) {
    ClosedForm r = a;
    auto key_less = [](const ClosedTerm& x, const ClosedTerm& y) {
        if (x.power != y.power) return x.power < y.power;
        if (x.log_power != y.log_power) return x.log_power < y.log_power;
        return x.exp_rate < y.exp_rate;
    };
    std::sort(r.terms.begin(), r.terms.end(), key_less);
    std::vector<ClosedTerm> merged;
    for (const auto& t : r.terms) {
        if (!merged.empty() && merged.back().power == t.power &&
            merged.back().log_power == t.log_power &&
            merged.back().exp_rate == t.exp_rate) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(t);
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const ClosedTerm& t) { return t.coeff == 0.0; }),
                 merged.end());
    r.terms = std::move(merged);
    return r;
}

ClosedClass classify_closed(const ClosedForm& a) {
    const ClosedForm f = normalize(a);
    ClosedClass c;
    // Algebraic terms (no exponential factor) dominate any exp(-rate/eps).
    const ClosedTerm* lead = nullptr;
    for (const auto& t : f.terms) {
        if (t.exp_rate > 0.0) continue;
        if (!lead || t.power < lead->power ||
            (t.power == lead->power && t.log_power > lead->log_power)) {
            lead = &t;
        }
    }
    if (!lead) {
        // Zero or a pure sum of exponentially small terms.
        c.negligible = true;
        c.associated_to_zero = true;
        return c;
    }
    c.negligible = false;
    c.leading_order = lead->power;
    if (lead->power > 0.0) {
        c.associated_to_zero = true;  // eps^p log^m -> 0 for p > 0
    } else {
        c.associated_to_zero = false;  // constant, log divergence, or blow-up
    }
    return c;
}

}  // namespace gflab
