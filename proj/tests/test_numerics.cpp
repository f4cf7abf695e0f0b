#include <doctest.h>

#include <cmath>

#include "gflab/numerics.hpp"

using namespace gflab;

TEST_SUITE("numerics") {

TEST_CASE("fit_line recovers slope and intercept") {
    std::vector<double> x, y;
    for (int i = 0; i < 20; ++i) {
        x.push_back(0.1 * i);
        y.push_back(3.0 - 2.5 * 0.1 * i);
    }
    const LineFit fit = fit_line(x, y);
    CHECK(fit.slope == doctest::Approx(-2.5).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.residual_rms < 1e-12);
}

TEST_CASE("fit_loglog estimates a power-law exponent") {
    std::vector<double> eps, v;
    double e = 0.5;
    for (int k = 0; k < 12; ++k) {
        eps.push_back(e);
        v.push_back(4.0 * std::pow(e, 1.5));
        e *= 0.5;
    }
    auto fit = fit_loglog(eps, v);
    REQUIRE(fit.has_value());
    CHECK(fit->slope == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("fit_loglog skips zero samples") {
    std::vector<double> eps = {0.5, 0.25, 0.125, 0.0625, 0.03125};
    std::vector<double> v = {0.5, 0.0, 0.125, 0.0625, 0.03125};
    auto fit = fit_loglog(eps, v);
    REQUIRE(fit.has_value());
    CHECK(fit->slope == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("richardson removes the leading error term") {
    std::vector<double> v;
    for (double e : {0.4, 0.2, 0.1, 0.05}) v.push_back(7.0 + 3.0 * e * e);
    const RichardsonResult r = richardson_limit(v);
    CHECK(r.limit == doctest::Approx(7.0).epsilon(1e-10));
    CHECK(r.order == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(r.order_estimated);
}

TEST_CASE("find_root brackets and polishes") {
    auto f = [](double x) { return x * x * x - 2.0; };
    auto root = find_root(f, 0.0, 2.0, 1e-13);
    REQUIRE(root.has_value());
    CHECK(*root == doctest::Approx(std::cbrt(2.0)).epsilon(1e-10));
    CHECK_FALSE(find_root(f, 3.0, 4.0).has_value());
}

}  // TEST_SUITE
