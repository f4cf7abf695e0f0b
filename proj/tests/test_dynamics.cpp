#include <doctest.h>

#include <cmath>

#include "gflab/dynamics.hpp"
#include "gflab/errors.hpp"
#include "gflab/numerics.hpp"

using namespace gflab;

namespace {

constexpr double kPi = 3.14159265358979323846;

PreyPredatorProblem collision(double a1, double a2, double eps) {
    PreyPredatorProblem prob;
    prob.alpha1 = a1;
    prob.alpha2 = a2;
    prob.psi1 = preset_dirac("parabolic");
    prob.psi2 = preset_dirac("parabolic");
    prob.eps = eps;
    return prob;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("prey transport is exact without predators") {
    auto prob = collision(0.0, 2.0, 0.1);
    const auto res = simulate_prey_predator(prob);
    CHECK(res.prey_mass == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(res.predator_mass == doctest::Approx(0.0));
    // the packet moved left by T at speed -1
    double peak_x = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < res.x.size(); ++i) {
        if (res.u2[i] > peak) {
            peak = res.u2[i];
            peak_x = res.x[i];
        }
    }
    CHECK(peak_x == doctest::Approx(1.0 - prob.T).epsilon(0.05));
}

TEST_CASE("predator transport is exact without prey") {
    const auto res = simulate_prey_predator(collision(1.5, 0.0, 0.1));
    CHECK(res.predator_mass == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(res.prey_mass == doctest::Approx(0.0));
}

TEST_CASE("total mass is conserved and fields stay nonnegative") {
    const auto res = simulate_prey_predator(collision(2.0, 2.0, 0.05));
    REQUIRE(!res.total_mass.empty());
    for (double m : res.total_mass) {
        CHECK(m == doctest::Approx(4.0).epsilon(1e-6));
    }
    for (double v : res.u1) CHECK(v >= 0.0);
    for (double v : res.u2) CHECK(v >= 0.0);
    // complementarity, independent of the closed formula
    CHECK(res.prey_mass + res.predator_mass == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("prey mass converges to the closed formula") {
    const auto sweep = prey_mass_after(2.0, 2.0, preset_dirac("parabolic"),
                                       preset_dirac("parabolic"),
                                       {0.2, 0.1, 0.05, 0.025});
    CHECK(sweep.beta_formula == doctest::Approx(0.5293486718889615).epsilon(1e-12));
    CHECK(sweep.prey_rel_error < 0.01);
    CHECK(sweep.predator_rel_error < 0.01);
}

TEST_CASE("formula limits in the decoupled directions") {
    CHECK(prey_predator_beta(1e-12, 3.0) == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(prey_predator_beta(2.0, 1e-12) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("collision outcome ignores the microscopic shapes") {
    const std::vector<double> eps = {0.1, 0.05, 0.025};
    const auto a = prey_mass_after(2.0, 2.0, preset_dirac("parabolic"),
                                   preset_dirac("parabolic"), eps);
    const auto b = prey_mass_after(2.0, 2.0, preset_dirac("bump"),
                                   preset_dirac("skewed"), eps);
    CHECK(std::fabs(a.prey_extrapolated - b.prey_extrapolated) /
              a.prey_extrapolated < 0.01);
}

TEST_CASE("blowup guard reports instead of overflowing") {
    auto prob = collision(2.0, 2.0, 0.1);
    prob.blowup_bound = 1.0;
    CHECK_THROWS_AS(simulate_prey_predator(prob), BlowupDetected);
}

TEST_CASE("prey-predator needs separation time") {
    CHECK_THROWS_AS(prey_mass_after(1.0, 1.0, preset_dirac("parabolic"),
                                    preset_dirac("parabolic"), {0.1}, 1.5),
                    DomainError);
}

TEST_CASE("zero heat data stays zero") {
    HeatProblem prob;
    prob.cubic_absorption = true;
    prob.cells = 64;
    prob.T = 0.05;
    const auto res = simulate_heat(prob);
    for (double v : res.u) CHECK(v == 0.0);
}

TEST_CASE("linear solver matches the sine-series oracle") {
    HeatProblem prob;
    prob.cubic_absorption = false;
    SmoothFn f;
    f.f = [](double x) { return std::sin(x) + 0.3 * std::sin(3.0 * x); };
    f.df = [](double x) { return std::cos(x) + 0.9 * std::cos(3.0 * x); };
    prob.initial = GenFunction::smooth(f);
    prob.cells = 600;
    prob.dt = 5e-4;
    prob.T = 0.1;
    const auto res = simulate_heat(prob);
    const auto oracle = heat_series_solution(res.x, {1.0, 0.0, 0.3}, 1.0, 0.1);
    double err = 0.0;
    for (std::size_t i = 0; i < res.x.size(); ++i)
        err = std::max(err, std::fabs(res.u[i] - oracle[i]));
    CHECK(err < 1e-4);
}

TEST_CASE("absorption keeps the solution below the linear run") {
    HeatProblem prob;
    SmoothFn f;
    f.f = [](double x) { return 2.0 * std::sin(x); };
    f.df = [](double x) { return 2.0 * std::cos(x); };
    prob.initial = GenFunction::smooth(f);
    prob.cells = 200;
    prob.T = 0.1;
    prob.cubic_absorption = true;
    const auto nl = simulate_heat(prob);
    prob.cubic_absorption = false;
    const auto lin = simulate_heat(prob);
    for (std::size_t i = 0; i < nl.u.size(); ++i) {
        CHECK(nl.u[i] <= lin.u[i] + 1e-8);
        CHECK(nl.u[i] >= -1e-12);
    }
}

TEST_CASE("heat stability guard") {
    HeatProblem prob;
    prob.cells = 100;
    prob.dt = 1.0;  // far above dx
    CHECK_THROWS_AS(simulate_heat(prob), StabilityViolation);
}

TEST_CASE("backward marching is refused") {
    HeatProblem prob;
    prob.direction = HeatDirection::Backward;
    CHECK_THROWS_AS(simulate_heat(prob), DomainError);
}

TEST_CASE("delta data vanishes under absorption but not in the linear run") {
    TestFunction phi;
    phi.center = kPi / 2.0;
    phi.width = 1.0;
    phi.id = "phi";
    const auto rep = delta_vanishing_check(kPi / 2.0, 0.1, phi,
                                           {0.2, 0.1, 0.05, 0.025},
                                           preset_dirac("parabolic"));
    CHECK(rep.strictly_decreasing);
    // linear contrast converges to the nonzero kernel pairing
    CHECK(rep.kernel_pairing > 0.05);
    CHECK(std::fabs(rep.linear_pairings.back() - rep.kernel_pairing) /
              rep.kernel_pairing < 0.02);
    CHECK(rep.nonlinear_pairings.back() < rep.linear_pairings.back());
}

TEST_CASE("delta data far from the test function pairs to almost nothing") {
    TestFunction phi;
    phi.center = 2.8;
    phi.width = 0.3;
    phi.id = "phi";
    const auto rep = delta_vanishing_check(kPi / 2.0, 0.005, phi, {0.1, 0.05}, 
                                           preset_dirac("parabolic"));
    CHECK(std::fabs(rep.nonlinear_pairings.back()) < 1e-3);
    CHECK(std::fabs(rep.linear_pairings.back()) < 1e-3);
}

TEST_CASE("the classical family solves the heat equation exactly") {
    CHECK(illposed_family_value(3, kPi / 6.0, 0.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    const auto rows = illposed_family_report(64, 0.5);
    REQUIRE(rows.size() == 7);  // n = 1, 2, 4, ..., 64
    double prev_log = -1e300;
    for (const auto& row : rows) {
        CAPTURE(row.n);
        CHECK(row.residual < 1e-10);
        CHECK(row.sup_t0 == doctest::Approx(1.0 / row.n).epsilon(1e-12));
        CHECK(row.log_sup_neg > prev_log);  // backward blow-up grows with n
        prev_log = row.log_sup_neg;
    }
    // n = 5, t0 = 0.5: sup-norm exceeds 5e4
    CHECK(25.0 * 0.5 - std::log(5.0) > std::log(5e4));
}

TEST_CASE("backward series reproduces data at t = 0 and grows one mode exactly") {
    const auto at0 = backward_heat_series({0.7, 0.0, -0.2}, 1.0, 0.0);
    for (std::size_t i = 0; i < at0.x.size(); ++i) {
        const double f = 0.7 * std::sin(at0.x[i]) - 0.2 * std::sin(3.0 * at0.x[i]);
        CHECK(at0.u[i] == doctest::Approx(f).epsilon(1e-13));
    }
    const auto at1 = backward_heat_series({1.0}, 1.0, 1.0);
    double umax = 0.0;
    for (double v : at1.u) umax = std::max(umax, v);
    CHECK(umax == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
}

TEST_CASE("backward series residual vanishes analytically") {
    const std::vector<double> coeffs = {0.5, 0.25};
    const double k = 1.0, t = 0.7;
    const auto res = backward_heat_series(coeffs, k, t, 64);
    for (std::size_t i = 1; i + 1 < res.x.size(); ++i) {
        double ut = 0.0, uxx = 0.0;
        for (std::size_t m = 0; m < coeffs.size(); ++m) {
            const double mm = double(m + 1);
            const double g = coeffs[m] * std::exp(k * mm * mm * t);
            ut += k * mm * mm * g * std::sin(mm * res.x[i]);
            uxx += -mm * mm * g * std::sin(mm * res.x[i]);
        }
        CHECK(std::fabs(ut + k * uxx) < 1e-10);
    }
}

TEST_CASE("backward series reports overflow honestly") {
    std::vector<double> coeffs(40, 0.0);
    coeffs.back() = 1.0;
    CHECK_THROWS_AS(backward_heat_series(coeffs, 1.0, 1.0), OverflowForLargeMode);
}

TEST_CASE("scalar scheme locates the shock within one cell") {
    const int cells = 200;
    std::vector<double> init(cells);
    const double dx = 3.0 / cells;
    for (int i = 0; i < cells; ++i) init[i] = (-1.0 + (i + 0.5) * dx) < 0.0 ? 1.0 : 0.0;
    const auto res = godunov_scalar(init, -1.0, 2.0, 0.9, 1.0);
    REQUIRE(res.shock_position.has_value());
    CHECK(std::fabs(*res.shock_position - 0.5) <= dx);
    CHECK(std::fabs(res.mass_final - res.mass_initial + res.boundary_flux_integral) <
          1e-12);
}

TEST_CASE("constant data is a fixed point of the scalar scheme") {
    std::vector<double> init(64, 0.7);
    const auto res = godunov_scalar(init, 0.0, 1.0, 0.9, 0.5);
    for (double v : res.u) CHECK(v == 0.7);
}

TEST_CASE("scalar scheme converges at first order in L1") {
    auto l1_error = [](int cells) {
        std::vector<double> init(cells);
        const double dx = 3.0 / cells;
        for (int i = 0; i < cells; ++i)
            init[i] = (-1.0 + (i + 0.5) * dx) < 0.0 ? 1.0 : 0.0;
        const auto res = godunov_scalar(init, -1.0, 2.0, 0.9, 1.0);
        double err = 0.0;
        for (int i = 0; i < cells; ++i) {
            const double exact = res.x[std::size_t(i)] < 0.5 ? 1.0 : 0.0;
            err += std::fabs(res.u[std::size_t(i)] - exact) * dx;
        }
        return err;
    };
    const double e1 = l1_error(100);
    const double e2 = l1_error(200);
    const double e3 = l1_error(400);
    const double order12 = std::log2(e1 / e2);
    const double order23 = std::log2(e2 / e3);
    CHECK(0.5 * (order12 + order23) >= 0.8);
}

TEST_CASE("CFL guards") {
    std::vector<double> init(64, 0.0);
    CHECK_THROWS_AS(godunov_scalar(init, 0.0, 1.0, 1.2, 0.1), CFLViolation);
    CHECK_THROWS_AS(godunov_system(init, init, init, 0.0, 1.0, 0.8, 0.1,
                                   parse_ledger("(=,=,~)"), 0.5),
                    CFLViolation);
    std::vector<double> rho(64, 1.0);
    CHECK_THROWS_AS(godunov_system(rho, init, init, 0.0, 1.0, 0.4, 0.1,
                                   parse_ledger("(~,~,~)"), 0.5),
                    DomainError);
}

TEST_CASE("system scheme propagates the coupled jump at the verdict speed") {
    const SystemRiemannData d = forward_construct_datum({1.0, 0.0, 0.0}, 0.8);
    SolveOptions opts;
    opts.certify_residuals = false;
    const JumpVerdict v = solve_system(parse_ledger("(=,=,~)"), d, opts);
    REQUIRE(v.is_unique());
    const int cells = 400;
    const double dx = 4.0 / cells;
    std::vector<double> r0(cells), u0(cells), t0(cells);
    for (int i = 0; i < cells; ++i) {
        const bool left = (-2.0 + (i + 0.5) * dx) < 0.0;
        r0[i] = left ? d.left.rho : d.right.rho;
        u0[i] = left ? d.left.u : d.right.u;
        t0[i] = left ? d.left.tau : d.right.tau;
    }
    const auto res = godunov_system(r0, u0, t0, -2.0, 2.0, 0.4, 1.0,
                                    parse_ledger("(=,=,~)"), v.unique().A);
    REQUIRE(res.front_position.has_value());
    CHECK(std::fabs(*res.front_position - v.unique().c * 1.0) <= dx);
    CHECK(std::fabs(res.mass_final - res.mass_initial + res.boundary_flux_integral) <
          1e-10);
}

TEST_CASE("uniform states are fixed points of the system scheme") {
    std::vector<double> rho(64, 1.3), u(64, -0.4), tau(64, 0.2);
    const auto res = godunov_system(rho, u, tau, 0.0, 1.0, 0.4, 0.3,
                                    parse_ledger("(=,=,~)"), 0.5);
    for (int i = 0; i < 64; ++i) {
        CHECK(res.rho[std::size_t(i)] == doctest::Approx(1.3).epsilon(1e-14));
        CHECK(res.u[std::size_t(i)] == doctest::Approx(-0.4).epsilon(1e-14));
        CHECK(res.tau[std::size_t(i)] == doctest::Approx(0.2).epsilon(1e-14));
    }
}

}  // TEST_SUITE
