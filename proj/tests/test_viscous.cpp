#include <doctest.h>

#include <cmath>

#include "gflab/errors.hpp"
#include "gflab/viscous.hpp"

using namespace gflab;

namespace {

SystemRiemannData canonical_datum() {
    return forward_construct_datum({1.0, 0.0, 0.0}, 0.8);
}

}  // namespace

TEST_SUITE("viscous") {

TEST_CASE("scalar viscous profile selects the average speed") {
    for (auto [ul, ur, nu] : {std::tuple{1.0, 0.0, 0.1}, {2.0, -1.0, 0.05},
                              {1.0, 0.0, 0.3}}) {
        CAPTURE(ul);
        CAPTURE(nu);
        const BurgersProfile prof = burgers_viscous_profile(ul, ur, nu);
        CHECK(prof.c == doctest::Approx(0.5 * (ul + ur)).epsilon(1e-8));
    }
}

TEST_CASE("scalar profile matches the closed form after alignment") {
    const double ul = 1.0, ur = 0.0, nu = 0.1;
    const BurgersProfile prof = burgers_viscous_profile(ul, ur, nu);
    // locate the mid-value crossing to remove the translation
    const double mid = 0.5 * (ul + ur);
    double xi0 = 0.0;
    for (std::size_t i = 0; i + 1 < prof.u.size(); ++i) {
        if ((prof.u[i] - mid) * (prof.u[i + 1] - mid) <= 0.0) {
            const double t = (mid - prof.u[i]) / (prof.u[i + 1] - prof.u[i]);
            xi0 = prof.xi[i] + t * (prof.xi[i + 1] - prof.xi[i]);
            break;
        }
    }
    double sup = 0.0;
    for (std::size_t i = 0; i < prof.u.size(); ++i) {
        const double xi = prof.xi[i] - xi0;
        if (std::fabs(xi) > 3.0) continue;
        sup = std::max(sup, std::fabs(prof.u[i] - burgers_profile_exact(ul, ur, nu, xi)));
    }
    CHECK(sup < 1e-6);
}

TEST_CASE("scalar profile guards") {
    CHECK_THROWS_AS(burgers_viscous_profile(0.0, 1.0, 0.1), DomainError);
    CHECK_THROWS_AS(burgers_viscous_profile(1.0, 0.0, -0.1), DomainError);
}

TEST_CASE("stress-dominant profile matches the strong-coupling verdict") {
    ViscousProfileProblem prob;
    prob.data = canonical_datum();
    prob.eps1 = prob.eps2 = 1e-3;
    prob.eps3 = 1.0;
    const ViscousProfileResult res = solve_viscous_profile(prob);
    CHECK(std::fabs(res.c - 0.8) / 0.8 < 0.01);
    CHECK(std::fabs(res.A - 0.5) / 0.5 < 0.02);
    CHECK(res.profile_coupling_gap < 0.05);  // K_tau hugs K_u in this regime
    CHECK(res.farfield_residual < 1e-3);
}

TEST_CASE("collocation result is stable under grid refinement") {
    ViscousProfileProblem prob;
    prob.data = canonical_datum();
    prob.eps1 = prob.eps2 = 1e-2;
    prob.eps3 = 1.0;
    prob.nodes = 2001;
    const auto coarse = solve_viscous_profile(prob);
    prob.nodes = 4001;
    const auto fine = solve_viscous_profile(prob);
    CHECK(std::fabs(coarse.c - fine.c) < 1e-4);
    CHECK(std::fabs(coarse.A - fine.A) < 1e-3);
}

TEST_CASE("equal viscosities realize an association-family member") {
    ViscousProfileProblem prob;
    prob.data = canonical_datum();
    prob.eps1 = prob.eps2 = prob.eps3 = 1.0;
    prob.require_connection = false;  // the singular-limit datum is not on
                                      // the equal-viscosity locus
    const ViscousProfileResult res = solve_viscous_profile(prob);
    CHECK(res.profile_coupling_gap > 0.01);  // profiles visibly decouple

    // For the datum the wave actually connects, (c, A) obeys the third
    // equation's jump relation, i.e. it lies on the family curve.
    SystemRiemannData datum = prob.data;
    datum.right = res.arrival_right;
    const double du = datum.right.u - datum.left.u;
    const double dtau = datum.right.tau - datum.left.tau;
    const double e3 = dtau * (datum.left.u - res.c) + dtau * du * res.A - du;
    CHECK(std::fabs(e3) < 5e-3);

    const JumpVerdict fam = solve_system(parse_ledger("(~,~,~)"), datum,
                                         [] {
                                             SolveOptions o;
                                             o.certify_residuals = false;
                                             return o;
                                         }());
    REQUIRE(fam.is_family());
    CHECK(res.c > fam.family().c_min - 1e-3);
    CHECK(res.c < fam.family().c_max + 1e-3);
}

TEST_CASE("strict mode refuses data the wave cannot connect") {
    ViscousProfileProblem prob;
    prob.data = canonical_datum();
    prob.eps1 = prob.eps2 = prob.eps3 = 1.0;  // miss is O(1e-2) here
    CHECK_THROWS_AS(solve_viscous_profile(prob), NoConnection);
}

TEST_CASE("input validation") {
    ViscousProfileProblem prob;
    prob.data = canonical_datum();
    prob.eps1 = -1.0;
    CHECK_THROWS_AS(solve_viscous_profile(prob), DomainError);
    prob.eps1 = 1e-3;
    prob.data.left.rho = 0.0;
    CHECK_THROWS_AS(solve_viscous_profile(prob), DomainError);
}

}  // TEST_SUITE
