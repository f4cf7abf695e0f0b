#include <doctest.h>

#include <cmath>

#include "gflab/eps_core.hpp"
#include "gflab/errors.hpp"

using namespace gflab;

namespace {

EpsRepresentative opaque(std::function<double(double)> f) {
    return EpsRepresentative::from_function(std::move(f));
}

}  // namespace

TEST_SUITE("eps_core") {

TEST_CASE("dyadic grid is strictly decreasing and below eta") {
    const auto s = DyadicGrid::classification_default().samples();
    REQUIRE(s.size() == 41);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) CHECK(s[i + 1] < s[i]);
    CHECK(s.front() < 1.0);
}

TEST_CASE("closed-form eval matches the stored form at every sample") {
    ClosedForm f = add(ClosedForm::monomial(2.0, -1.0, 1), ClosedForm::exp_small(3.0, 0.5));
    const auto rep = EpsRepresentative::from_closed_form(f);
    for (double e : DyadicGrid{0.5, 20}.samples()) {
        CHECK(rep(e) == doctest::Approx(rep.form()->eval(e)).epsilon(1e-15));
    }
}

TEST_CASE("classification of the named quantities is exact") {
    const auto inf = EpsRepresentative::power(1.0, -1.0);
    auto c = classify(inf);
    CHECK(c.moderate);
    CHECK_FALSE(c.negligible);
    CHECK_FALSE(c.associated_to_zero);
    CHECK(*c.leading_order == doctest::Approx(-1.0));
    CHECK(c.confidence == Confidence::Exact);

    c = classify(EpsRepresentative::constant(0.0));
    CHECK(c.negligible);
    CHECK(c.moderate);
    CHECK(c.associated_to_zero);

    c = classify(EpsRepresentative::power(1.0, 2.0));
    CHECK(c.moderate);
    CHECK(c.associated_to_zero);
    CHECK_FALSE(c.negligible);  // fails |f| <= C eps^3
    CHECK(*c.leading_order == doctest::Approx(2.0));

    c = classify(EpsRepresentative::exp_small(1.0));
    CHECK(c.negligible);
    CHECK(c.confidence == Confidence::Exact);
}

TEST_CASE("numeric path classifies an opaque exponential tail as negligible") {
    const auto c = classify(opaque([](double e) { return std::exp(-1.0 / e); }));
    CHECK(c.negligible);
    CHECK(c.associated_to_zero);
    CHECK(c.confidence == Confidence::Numeric);
}

TEST_CASE("products collapse to the expected closed forms") {
    const auto inf = EpsRepresentative::power(1.0, -1.0);
    const auto one = mul(EpsRepresentative::power(1.0, 1.0), inf);
    CHECK(one(0.25) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_FALSE(classify(one).associated_to_zero);

    const auto two = mul(EpsRepresentative::power(2.0, 1.0), inf);
    CHECK(two(0.125) == doctest::Approx(2.0).epsilon(1e-15));

    const auto eps_again = mul(EpsRepresentative::power(1.0, 2.0), inf);
    CHECK(classify(eps_again).associated_to_zero);
    CHECK(*classify(eps_again).leading_order == doctest::Approx(1.0));
}

TEST_CASE("opaque product of sqrt(eps) and 1/eps fits slope -1/2") {
    const auto p = mul(opaque([](double e) { return std::sqrt(e); }),
                       opaque([](double e) { return 1.0 / e; }));
    const auto c = classify(p);
    CHECK_FALSE(c.indeterminate);
    CHECK(c.moderate);
    CHECK_FALSE(c.associated_to_zero);
    CHECK(*c.leading_order == doctest::Approx(-0.5).epsilon(0.15));
    CHECK(c.confidence == Confidence::Numeric);
}

TEST_CASE("equality in the quotient") {
    const auto e1 = EpsRepresentative::power(1.0, 1.0);
    const auto e2 = EpsRepresentative::power(2.0, 1.0);
    CHECK(eq_in_en(e1, e2) == Tristate::False);
    CHECK(classify(e1).associated_to_zero);
    CHECK(classify(e2).associated_to_zero);

    const auto f = opaque([](double e) { return std::cos(e) + 1.0 / e; });
    CHECK(eq_in_en(f, f) == Tristate::True);

    const auto g = opaque([](double e) { return std::cos(e) + 1.0 / e + std::exp(-1.0 / e); });
    CHECK(eq_in_en(f, g) == Tristate::True);
}

TEST_CASE("association verdicts") {
    CHECK(associated_to_zero(EpsRepresentative::power(1.0, 0.5)) == Tristate::True);
    CHECK(associated_to_zero(EpsRepresentative::power(1.0, -1.0)) == Tristate::False);
    // bounded oscillation times a vanishing factor
    CHECK(associated_to_zero(opaque([](double e) { return std::sin(1.0 / e) * e; })) ==
          Tristate::True);
}

TEST_CASE("ideal property over a closed-form catalogue") {
    const std::vector<ClosedForm> moderates = {
        ClosedForm::monomial(1.0, -1.0), ClosedForm::monomial(3.0, -2.0, 1),
        ClosedForm::monomial(-0.5, 0.0), ClosedForm::monomial(2.0, 1.5)};
    const std::vector<ClosedForm> negligibles = {
        ClosedForm::zero(), ClosedForm::exp_small(1.0, 1.0),
        mul(ClosedForm::monomial(5.0, -3.0), ClosedForm::exp_small(1.0, 0.25))};
    for (const auto& m : moderates) {
        for (const auto& n : negligibles) {
            const auto prod = EpsRepresentative::from_closed_form(mul(m, n));
            CHECK(classify(prod).negligible);
        }
    }
    // numeric spot check of the same property
    const auto prod = mul(opaque([](double e) { return 1.0 / (e * e); }),
                          opaque([](double e) { return std::exp(-0.5 / e); }));
    CHECK(classify(prod).negligible);
}

TEST_CASE("leading orders add under multiplication") {
    for (double p : {-1.5, -1.0, 0.5, 2.0}) {
        for (double q : {-0.5, 1.0, 3.0}) {
            const auto prod = mul(EpsRepresentative::power(2.0, p),
                                  EpsRepresentative::power(0.5, q));
            CHECK(*classify(prod).leading_order == doctest::Approx(p + q));
        }
    }
}

TEST_CASE("the four sample quantities are pairwise distinct yet all vanish") {
    const std::vector<EpsRepresentative> zs = {
        EpsRepresentative::power(1.0, 1.0), EpsRepresentative::power(2.0, 1.0),
        EpsRepresentative::power(1.0, 0.5), EpsRepresentative::power(1.0, 2.0)};
    for (const auto& z : zs) CHECK(associated_to_zero(z) == Tristate::True);
    for (std::size_t i = 0; i < zs.size(); ++i) {
        for (std::size_t j = i + 1; j < zs.size(); ++j) {
            CHECK(eq_in_en(zs[i], zs[j]) == Tristate::False);
        }
    }
    const auto inf = EpsRepresentative::power(1.0, -1.0);
    int associated_count = 0;
    std::vector<EpsRepresentative> products;
    for (const auto& z : zs) products.push_back(mul(z, inf));
    for (std::size_t i = 0; i < products.size(); ++i) {
        if (classify(products[i]).associated_to_zero) ++associated_count;
        for (std::size_t j = i + 1; j < products.size(); ++j) {
            CHECK(eq_in_en(products[i], products[j]) == Tristate::False);
        }
    }
    CHECK(associated_count == 1);  // only eps^2 * 1/eps survives
}

TEST_CASE("classification is stable under grid refinement") {
    const DyadicGrid base = DyadicGrid::classification_default();
    const DyadicGrid finer = base.refined(4);
    const auto f = opaque([](double e) { return std::sqrt(e) * std::log(1.0 / e); });
    const auto a = classify(f, base);
    const auto b = classify(f, finer);
    CHECK(a.associated_to_zero == b.associated_to_zero);
    CHECK(a.negligible == b.negligible);
    CHECK(a.moderate == b.moderate);
    CHECK(std::fabs(*a.leading_order - *b.leading_order) < 0.1);
}

TEST_CASE("overflow during sampling reports a not-moderate candidate") {
    const auto c = classify(opaque([](double e) { return std::exp(1.0 / e); }));
    CHECK(c.overflow);
    CHECK_FALSE(c.moderate);
    CHECK_FALSE(c.negligible);
    CHECK(c.confidence == Confidence::Numeric);
}

TEST_CASE("unstable samples come back indeterminate") {
    // alternates between 1 and eps^3 along the dyadic grid
    const auto f = opaque([](double e) {
        const int k = int(std::lround(std::log2(1.0 / e)));
        return (k % 2 == 0) ? 1.0 : e * e * e;
    });
    const auto c = classify(f);
    CHECK(c.indeterminate);
    CHECK_FALSE(c.negligible);
    CHECK_FALSE(c.associated_to_zero);
    CHECK(associated_to_zero(f) == Tristate::Indeterminate);
}

TEST_CASE("absolute floor turns solver noise into negligible grade") {
    const auto f = opaque([](double e) { return 3e-10 * std::cos(40.0 / e); });
    ClassifyOptions opts;
    CHECK_FALSE(classify(f, DyadicGrid::pairing_default(), opts).negligible);
    opts.abs_floor = 1e-6;
    CHECK(classify(f, DyadicGrid::pairing_default(), opts).negligible);
}

TEST_CASE("eps must be positive") {
    CHECK_THROWS_AS(EpsRepresentative::power(1.0, 1.0)(0.0), DomainError);
    CHECK_THROWS_AS(EpsRepresentative::power(1.0, 1.0)(-0.5), DomainError);
}

}  // TEST_SUITE
