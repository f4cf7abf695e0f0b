#pragma once

#include <vector>

#include "gflab/riemann.hpp"

namespace gflab {

/// Traveling-wave boundary-value problem for the viscous system. The
/// profile is resolved in the stress-viscosity scale z = (x - ct)/eps3,
/// so eps1/eps3 and eps2/eps3 are the stiffness ratios.
struct ViscousProfileProblem {
    double eps1 = 1e-3;
    double eps2 = 1e-3;
    double eps3 = 1.0;
    SystemRiemannData data;
    double z_half_width = 25.0;
    int nodes = 4001;
    double newton_tol = 1e-11;
    int max_newton_iters = 250;
    /// The profile connects the given states only up to O(eps1/eps3 +
    /// eps2/eps3); outside the stress-dominant regime request the
    /// relaxed solve and read the arrival state from the result.
    bool require_connection = true;
};

struct ViscousProfileResult {
    double c = 0.0;
    double A = 0.0;
    std::vector<double> z;
    std::vector<double> rho, u, tau;
    std::vector<double> k_u, k_tau;  // normalized profiles
    double farfield_residual = 0.0;
    SystemState arrival_right;   // state the profile actually settles to
    int newton_iterations = 0;
    /// sup |K_tau - K_u|: small when the stress viscosity dominates.
    double profile_coupling_gap = 0.0;
};

/// Collocation (box scheme) + damped Newton on the once-integrated
/// traveling-wave system, with the speed as an unknown. Throws
/// NoConnection when Newton cannot connect the states and
/// StiffnessFailure when the linear algebra breaks down.
ViscousProfileResult solve_viscous_profile(const ViscousProfileProblem& problem);

/// Scalar analogue: viscous traveling profile of the quadratic-flux
/// law by shooting + secant on the speed. Requires ul > ur.
struct BurgersProfile {
    double c = 0.0;
    std::vector<double> xi, u;
};

BurgersProfile burgers_viscous_profile(double ul, double ur, double nu);

/// Closed-form profile value for the same problem (oracle for tests).
double burgers_profile_exact(double ul, double ur, double nu, double xi);

}  // namespace gflab
