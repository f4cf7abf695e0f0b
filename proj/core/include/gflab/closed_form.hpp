#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gflab {

/// One term of the closed-form grammar:
///   coeff * eps^power * (log 1/eps)^log_power * exp(-exp_rate/eps)
/// with log_power >= 0 and exp_rate >= 0 (0 means no exponential factor).
struct ClosedTerm {
    double coeff = 0.0;
    double power = 0.0;
    int log_power = 0;
    double exp_rate = 0.0;
};

/// Finite sum of closed terms. Sums and products of grammar elements
/// stay inside the grammar, so add/mul below are total.
struct ClosedForm {
    std::vector<ClosedTerm> terms;

    double eval(double eps) const;
    std::string str() const;

    static ClosedForm zero() { return {}; }
    static ClosedForm constant(double c);
    static ClosedForm monomial(double coeff, double power, int log_power = 0);
    static ClosedForm exp_small(double coeff, double rate);
};

ClosedForm add(const ClosedForm& a, const ClosedForm& b);
ClosedForm mul(const ClosedForm& a, const ClosedForm& b);
ClosedForm negate(const ClosedForm& a);

/// Merge terms with identical (power, log_power, exp_rate) keys and
/// drop zero coefficients.
ClosedForm normalize(const ClosedForm& a);

/// Exact asymptotic classification of a closed form.
struct ClosedClass {
    bool negligible = false;
    bool associated_to_zero = false;
    std::optional<double> leading_order;  // unset for negligible forms
};

ClosedClass classify_closed(const ClosedForm& a);

}  // namespace gflab
