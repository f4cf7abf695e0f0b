#include <doctest.h>

#include <cmath>

#include "gflab/errors.hpp"
#include "gflab/profiles.hpp"
#include "gflab/quadrature.hpp"

using namespace gflab;

TEST_SUITE("profiles") {

TEST_CASE("heaviside presets satisfy the limit and mass invariants") {
    for (const auto& tag : heaviside_preset_tags()) {
        CAPTURE(tag);
        const HeavisideProfile k = preset_heaviside(tag);
        CHECK(std::fabs(k.value_at(-k.cutoff)) < 1e-10);
        CHECK(std::fabs(k.value_at(k.cutoff) - 1.0) < 1e-10);
        const double mass =
            integrate_adaptive([&k](double y) { return k.deriv_at(y); }, -k.cutoff,
                               k.cutoff, 1e-11).value;
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("profile derivatives are the analytic derivatives of the values") {
    for (const auto& tag : heaviside_preset_tags()) {
        CAPTURE(tag);
        const HeavisideProfile k = preset_heaviside(tag);
        const double h = 1e-6;
        for (double y : {-0.9, -0.3, 0.0, 0.4, 0.8}) {
            const double fd = (k.value_at(y + h) - k.value_at(y - h)) / (2.0 * h);
            CHECK(k.deriv_at(y) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("midpoint values") {
    CHECK(preset_heaviside("smoothstep").value_at(0.0) == doctest::Approx(0.5));
    CHECK(preset_heaviside("tanh").value_at(0.0) == doctest::Approx(0.5));
    CHECK(std::fabs(preset_heaviside("skewed").value_at(0.0) - 0.5) > 0.05);
}

TEST_CASE("overshoot preset leaves the unit interval and is not monotone") {
    const HeavisideProfile k = preset_heaviside("overshoot");
    CHECK_FALSE(k.monotone);
    CHECK_FALSE(k.range_in_unit_interval);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double v = k.value_at(-1.0 + 2.0 * i / 400.0);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo < -0.01);
    CHECK(hi > 1.01);
}

TEST_CASE("dirac presets integrate to one") {
    for (const auto& tag : dirac_preset_tags()) {
        CAPTURE(tag);
        const DiracProfile psi = preset_dirac(tag);
        const double mass =
            integrate_adaptive([&psi](double y) { return psi.value_at(y); },
                               -psi.cutoff, psi.cutoff, 1e-12).value;
        CHECK(std::fabs(mass - 1.0) < 1e-10);
        CHECK(psi.nonnegative);
        const double h = 1e-6;
        for (double y : {-0.7, -0.2, 0.3, 0.6}) {
            const double fd = (psi.value_at(y + h) - psi.value_at(y - h)) / (2.0 * h);
            CHECK(psi.deriv_at(y) == doctest::Approx(fd).epsilon(1e-5));
        }
    }
}

TEST_CASE("parabolic second moment and skewed asymmetry") {
    const DiracProfile par = preset_dirac("parabolic");
    const double sq = integrate_adaptive(
        [&par](double y) { const double v = par.value_at(y); return v * v; }, -1.0,
        1.0, 1e-12).value;
    CHECK(sq == doctest::Approx(0.6).epsilon(1e-10));

    const DiracProfile sk = preset_dirac("skewed");
    const double first = integrate_adaptive(
        [&sk](double y) { return y * sk.value_at(y); }, -1.0, 1.0, 1e-12).value;
    CHECK(std::fabs(first) > 1e-3);
}

TEST_CASE("moments equal 1/(n+1) for every preset") {
    for (const auto& tag : heaviside_preset_tags()) {
        CAPTURE(tag);
        const HeavisideProfile k = preset_heaviside(tag);
        for (int n = 0; n <= 8; ++n) {
            CHECK(std::fabs(moment(k, n) - 1.0 / double(n + 1)) < 1e-8);
        }
    }
}

TEST_CASE("the moment difference reproduces -1/6") {
    for (const auto& tag : {"tanh", "overshoot"}) {
        const HeavisideProfile k = preset_heaviside(tag);
        CHECK(moment(k, 2) - moment(k, 1) == doctest::Approx(-1.0 / 6.0).epsilon(1e-8));
    }
    CHECK(moment(preset_heaviside("overshoot"), 5) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-8));
}

TEST_CASE("moment guards") {
    CHECK_THROWS_AS(moment(preset_heaviside("tanh"), 17), DomainError);
    CHECK_THROWS_AS(moment(preset_heaviside("tanh"), -1), DomainError);
    CHECK_THROWS_AS(preset_heaviside("no-such-tag"), UnknownTag);
    CHECK_THROWS_AS(preset_dirac("no-such-tag"), UnknownTag);
}

TEST_CASE("identical-pair mixed moments equal 1/2") {
    for (const auto& tag : heaviside_preset_tags()) {
        CAPTURE(tag);
        const HeavisideProfile k = preset_heaviside(tag);
        CHECK(mixed_moment(k, k) == doctest::Approx(0.5).epsilon(1e-8));
    }
}

TEST_CASE("shifted pairs decrease monotonically") {
    const HeavisideProfile base = preset_heaviside("tanh");
    double prev = mixed_moment(base, base);
    CHECK(prev == doctest::Approx(0.5).epsilon(1e-8));
    for (double s : {0.5, 1.0, 1.5, 2.0}) {
        const double a = mixed_moment(shifted(base, s), base);
        CHECK(a < prev);
        CHECK(a > 0.0);
        prev = a;
    }
    const double a1 = mixed_moment(shifted(base, 1.0), base);
    CHECK(a1 > 0.0);
    CHECK(a1 < 0.5);
}

TEST_CASE("disjoint supports give the degenerate value 1") {
    const HeavisideProfile a = preset_heaviside("smoothstep");
    const HeavisideProfile b = shifted(preset_heaviside("smoothstep"), 3.0);
    CHECK(mixed_moment(a, b) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("mixed moments of monotone pairs stay in [0,1]; overshoot stays below 2") {
    const std::vector<std::string> monotone = {"tanh", "erf", "smoothstep", "skewed"};
    for (const auto& ta : monotone) {
        for (const auto& tb : monotone) {
            const double a = mixed_moment(preset_heaviside(ta), preset_heaviside(tb));
            CHECK(a > -1e-9);
            CHECK(a < 1.0 + 1e-9);
        }
    }
    for (const auto& other : heaviside_preset_tags()) {
        CHECK(std::fabs(mixed_moment(preset_heaviside("overshoot"),
                                     preset_heaviside(other))) < 2.0);
        CHECK(std::fabs(mixed_moment(preset_heaviside(other),
                                     preset_heaviside("overshoot"))) < 2.0);
    }
}

TEST_CASE("transform guards") {
    CHECK_THROWS_AS(widened(preset_heaviside("tanh"), 0.0), DomainError);
    CHECK_THROWS_AS(widened(preset_heaviside("tanh"), -2.0), DomainError);
    CHECK_THROWS_AS(tabulated_heaviside({0.0, 1.0}, {0.0, 1.0}, "short"), DomainError);
    CHECK_THROWS_AS(tabulated_heaviside({0.0, 0.5, 1.0, 1.5}, {0.0, 0.2, 0.8, 1.0},
                                        "bad", {1.0, 1.0}),
                    DomainError);
}

TEST_CASE("widened profiles rescale the microstructure") {
    const HeavisideProfile base = preset_heaviside("smoothstep");
    const HeavisideProfile wide = widened(base, 2.0);
    CHECK(wide.value_at(1.0) == doctest::Approx(base.value_at(0.5)));
    CHECK(mixed_moment(wide, wide) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("quadrature is exact on polynomials up to degree 31") {
    const double v = gauss16_panel([](double x) { return std::pow(x, 31.0); }, 0.0, 1.0);
    CHECK(v == doctest::Approx(1.0 / 32.0).epsilon(1e-14));
}

TEST_CASE("quadrature self-consistency under panel halving") {
    const HeavisideProfile k = preset_heaviside("erf");
    auto f = [&k](double y) { return k.value_at(y) * k.deriv_at(y); };
    const double a = integrate_composite(f, -k.cutoff, k.cutoff, 64);
    const double b = integrate_composite(f, -k.cutoff, k.cutoff, 128);
    CHECK(std::fabs(a - b) < 1e-11);
}

TEST_CASE("adaptive quadrature reports failure honestly") {
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::sin(500.0 * x); },
                                       0.0, 10.0, 1e-14, 4),
                    QuadratureFailure);
}

TEST_CASE("tabulated profiles interpolate value and derivative") {
    const HeavisideProfile ref = preset_heaviside("tanh");
    std::vector<double> y, v, m;
    for (int i = 0; i <= 2000; ++i) {
        const double yy = -20.0 + 40.0 * i / 2000.0;
        y.push_back(yy);
        v.push_back(ref.value_at(yy));
        m.push_back(ref.deriv_at(yy));
    }
    const HeavisideProfile tab = tabulated_heaviside(y, v, "tab", m);
    for (double yy : {-3.0, -0.37, 0.0, 0.41, 2.2}) {
        CHECK(tab.value_at(yy) == doctest::Approx(ref.value_at(yy)).epsilon(1e-7));
        CHECK(tab.deriv_at(yy) == doctest::Approx(ref.deriv_at(yy)).epsilon(1e-5));
    }
    CHECK(tab.value_at(-25.0) == 0.0);
    CHECK(tab.value_at(25.0) == 1.0);
}

}  // TEST_SUITE
