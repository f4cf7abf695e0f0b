#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gflab/eps_core.hpp"
#include "gflab/genfunc.hpp"
#include "gflab/profiles.hpp"
#include "gflab/riemann.hpp"

namespace gflab {

// -- prey-predator delta collision ------------------------------------

struct PreyPredatorProblem {
    double alpha1 = 2.0;  // total predator mass, starts at x = -1
    double alpha2 = 2.0;  // total prey mass, starts at x = +1
    DiracProfile psi1, psi2;
    double eps = 0.1;
    double T = 4.0;
    double xmin = -8.0, xmax = 8.0;
    double cells_per_eps = 12.0;  // dx = eps / cells_per_eps
    double blowup_bound = 1e12;
    std::vector<double> snapshot_times;
};

struct PreyPredatorResult {
    std::vector<double> x;
    std::vector<double> u1, u2;  // final fields
    std::vector<std::pair<double, std::vector<double>>> snapshots_u1, snapshots_u2;
    std::vector<double> times, total_mass;  // conservation ledger
    double predator_mass = 0.0;
    double prey_mass = 0.0;
    double dx = 0.0;
    int steps = 0;
};

/// Characteristics transport (speeds +1/-1, exact shift on the grid)
/// with Strang splitting around the pointwise-exact quadratic reaction.
PreyPredatorResult simulate_prey_predator(const PreyPredatorProblem& problem);

/// Closed-form limit of the prey mass after the collision.
double prey_predator_beta(double alpha1, double alpha2);

struct PreyMassSweep {
    std::vector<double> eps;
    std::vector<double> prey_mass, predator_mass;
    double prey_extrapolated = 0.0;
    double predator_extrapolated = 0.0;
    double beta_formula = 0.0;
    double prey_rel_error = 0.0;
    double predator_rel_error = 0.0;
};

PreyMassSweep prey_mass_after(double alpha1, double alpha2, const DiracProfile& psi1,
                              const DiracProfile& psi2,
                              const std::vector<double>& eps_list,
                              double T = 4.0);

// -- semilinear heat ---------------------------------------------------

enum class HeatDirection { Forward, Backward };

struct HeatProblem {
    double k = 1.0;
    bool cubic_absorption = true;
    HeatDirection direction = HeatDirection::Forward;
    GenFunction initial;      // evaluated at init_eps on the grid
    double init_eps = 0.1;
    double xmin = 0.0, xmax = 3.14159265358979323846;
    int cells = 400;
    double dt = 0.0;          // 0: use dx
    double T = 0.1;
    std::vector<double> snapshot_times;
};

struct HeatResult {
    std::vector<double> x;
    std::vector<double> u;    // final field
    std::vector<std::pair<double, std::vector<double>>> snapshots;
    int steps = 0;
};

/// Crank-Nicolson diffusion with an explicit pointwise-exact cubic
/// absorption map in a Strang split. Zero boundary values. Backward
/// problems are rejected: they are treated analytically by
/// backward_heat_series, never by time marching.
HeatResult simulate_heat(const HeatProblem& problem);

/// Truncated sine-series solution of the linear problem (oracle).
std::vector<double> heat_series_solution(const std::vector<double>& x,
                                         const std::vector<double>& coeffs, double k,
                                         double t);

/// Sine coefficients of a sampled field on (0, pi).
std::vector<double> sine_coefficients(const std::vector<double>& x,
                                      const std::vector<double>& u, int modes);

struct DeltaVanishingReport {
    std::vector<double> eps;
    std::vector<double> nonlinear_pairings;
    std::vector<double> linear_pairings;
    double kernel_pairing = 0.0;  // eigenfunction-series oracle
    bool strictly_decreasing = false;
    AsymptoticClass nonlinear_class;
};

/// Delta initial data at omega: with absorption on, the pairing at t0
/// vanishes as eps -> 0; the linear contrast converges to the kernel
/// pairing.
DeltaVanishingReport delta_vanishing_check(double omega, double t0,
                                           const TestFunction& phi,
                                           const std::vector<double>& eps_list,
                                           const DiracProfile& psi, double k = 1.0);

// -- the classical ill-posedness family --------------------------------

double illposed_family_value(int n, double x, double t);

struct IllposedFamilyRow {
    int n = 0;
    double residual = 0.0;        // |u_t - u_xx| sampled max
    double sup_t0 = 0.0;          // sup-norm at t = 0 (equals 1/n)
    double log_sup_neg = 0.0;     // log of sup-norm at t = -t0
};

std::vector<IllposedFamilyRow> illposed_family_report(int n_max, double t0);

/// Explicit separation-of-variables solution of the backward problem
/// for finite sine data: u(x,t) = sum b_m exp(+k m^2 t) sin(m x).
struct BackwardSeriesResult {
    std::vector<double> x;
    std::vector<double> u;
    std::vector<double> mode_growth;  // exp(k m^2 t) per mode
};

BackwardSeriesResult backward_heat_series(const std::vector<double>& coeffs, double k,
                                          double t, int cells = 400);

// -- Godunov schemes ----------------------------------------------------

struct GodunovScalarResult {
    std::vector<double> x;
    std::vector<double> u;
    double mass_initial = 0.0;
    double mass_final = 0.0;
    double boundary_flux_integral = 0.0;
    std::optional<double> shock_position;  // mid-level crossing
    int steps = 0;
};

/// First-order Godunov for the quadratic-flux law with the exact
/// interface Riemann solution (shock speed from scalar_speed).
GodunovScalarResult godunov_scalar(const std::vector<double>& init, double xmin,
                                   double xmax, double cfl, double T);

struct GodunovSystemResult {
    std::vector<double> x;
    std::vector<double> rho, u, tau;
    double mass_initial = 0.0;
    double mass_final = 0.0;
    double boundary_flux_integral = 0.0;
    std::optional<double> front_position;
    int steps = 0;
};

/// Path-conservative first-order scheme for the 3x3 system under the
/// strong-strong-assoc ledger: conservative transport of mass and
/// momentum, nonconservative stress update with the pinned
/// microstructure parameter A weighting the interface product.
GodunovSystemResult godunov_system(const std::vector<double>& rho0,
                                   const std::vector<double>& u0,
                                   const std::vector<double>& tau0, double xmin,
                                   double xmax, double cfl, double T,
                                   const StatementLedger& ledger, double A);

}  // namespace gflab
