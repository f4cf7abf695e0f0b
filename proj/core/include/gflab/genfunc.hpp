#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gflab/eps_core.hpp"
#include "gflab/profiles.hpp"

namespace gflab {

/// Smooth ingredient of an expression tree. Const/Poly/Sin carry a
/// serializable spec; Opaque ones only live in-process.
struct SmoothFn {
    enum class Spec { Opaque, Const, Poly, Sin };

    std::function<double(double)> f;
    std::function<double(double)> df;  // empty: finite-difference fallback
    std::string label = "smooth";
    Spec spec = Spec::Opaque;
    std::vector<double> params;  // Const {c}; Poly coeffs; Sin {amp, freq, phase}
    bool nonneg = false;

    static SmoothFn constant(double c);
    static SmoothFn poly(std::vector<double> coeffs);
    static SmoothFn sine(double amp, double freq, double phase = 0.0);
};

struct Interval {
    double lo = -8.0;
    double hi = 8.0;
    bool contains(double x) const { return x > lo && x < hi; }
};

/// Element of the simplified algebra on a 1-D domain: an expression
/// tree evaluable at (x, eps). Immutable; cheap to copy.
class GenFunction {
public:
    GenFunction() = default;

    static GenFunction smooth(SmoothFn fn);
    static GenFunction constant(double c);
    static GenFunction heaviside_at(double x0, HeavisideProfile profile);
    static GenFunction dirac_at(double x0, DiracProfile profile);
    static GenFunction sum(const GenFunction& a, const GenFunction& b);
    static GenFunction product(const GenFunction& a, const GenFunction& b);
    static GenFunction scale(double factor, const GenFunction& a);
    static GenFunction power(const GenFunction& a, int n);   // n >= 1
    /// Requires a nonnegativity certificate on the operand; throws
    /// CertificateViolation otherwise.
    static GenFunction sqrt(const GenFunction& a);
    static GenFunction derivative(const GenFunction& a);

    GenFunction with_domain(Interval d) const;
    Interval domain() const { return domain_; }
    bool valid() const { return node_ != nullptr; }

    /// Representative evaluation. HeavisideAt reads K((x-x0)/eps),
    /// DiracAt reads psi((x-x0)/eps)/eps.
    double evaluate(double x, double eps) const;

    /// eps-scaled intervals around Heaviside/Dirac nodes where the
    /// integrand needs eps-resolution.
    std::vector<std::pair<double, double>> feature_intervals(double eps) const;

    struct Node;
    std::shared_ptr<const Node> node() const { return node_; }

private:
    GenFunction(std::shared_ptr<const Node> n, Interval d)
        : node_(std::move(n)), domain_(d) {}

    std::shared_ptr<const Node> node_;
    Interval domain_;
};

GenFunction operator+(const GenFunction& a, const GenFunction& b);
GenFunction operator-(const GenFunction& a, const GenFunction& b);
GenFunction operator*(const GenFunction& a, const GenFunction& b);

/// Compactly supported smooth bump, max value 1 at the center.
struct TestFunction {
    double center = 0.0;
    double width = 1.0;
    std::string id;

    double operator()(double x) const;
    double lo() const { return center - width; }
    double hi() const { return center + width; }
};

/// Bumps with centers spanning the domain interior, widths cycling
/// through the given list. Always includes a member centered at the
/// domain midpoint.
std::vector<TestFunction> make_battery(Interval domain, int count = 7,
                                       std::vector<double> widths = {0.5, 1.0, 2.0});

/// Quadrature of evaluate(u,.,eps) * phi over supp phi. Panels are at
/// most width/64 wide, and at most eps/4 inside feature intervals.
double pair(const GenFunction& u, const TestFunction& phi, double eps);

std::vector<double> pairing_sweep(const GenFunction& u, const TestFunction& phi,
                                  const DyadicGrid& grid);

enum class AssociationKind {
    EqualInG,
    AssociatedNotEqual,
    NotAssociated,
    Indeterminate,
};

const char* to_string(AssociationKind k);

struct AssociationVerdict {
    AssociationKind aggregate = AssociationKind::Indeterminate;
    std::vector<AsymptoticClass> per_phi;
    std::vector<double> eps;
    std::vector<std::vector<double>> pairings;  // [phi][eps]
};

/// Default classification options for pairing sweeps (shorter tail
/// window than raw eps-representative classification).
ClassifyOptions pairing_classify_options();

AssociationVerdict association(const GenFunction& u, const GenFunction& v,
                               const std::vector<TestFunction>& battery,
                               const DyadicGrid& grid = DyadicGrid::pairing_default(),
                               const ClassifyOptions& opts = pairing_classify_options());

/// integral of (H^2 - H) H' dx at each grid eps; the samples agree up
/// to quadrature error. Equals -1/6 for every profile with limits 0, 1.
double integral_I(const HeavisideProfile& k,
                  const DyadicGrid& grid = DyadicGrid::pairing_default());

struct SqrtDeltaReport {
    std::vector<double> eps;
    std::vector<double> field_pairings;
    std::vector<double> energy_pairings;
    AsymptoticClass field_class;
    AsymptoticClass energy_class;
    double field_slope = 0.0;
    double energy_limit = 0.0;
    double phi_at_center = 0.0;
};

/// Field sqrt(delta): pairings vanish with slope 1/2; its square pairs
/// to phi(0) in the limit.
SqrtDeltaReport sqrt_delta_demo(const DiracProfile& psi, const TestFunction& phi,
                                const DyadicGrid& grid = DyadicGrid::pairing_default());

}  // namespace gflab
