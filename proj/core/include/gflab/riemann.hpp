#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gflab/genfunc.hpp"
#include "gflab/profiles.hpp"

namespace gflab {

/// Per-equation choice between equality in the algebra and association.
enum class Statement { StrongEq, Assoc };
using StatementLedger = std::vector<Statement>;

/// Accepts "strong"/"assoc" lists and the compact "(=,=,~)" form.
StatementLedger parse_ledger(const std::string& text);
std::string ledger_to_string(const StatementLedger& ledger);

struct ScalarRiemannData {
    double ul = 0.0;
    double ur = 0.0;
};

struct SystemState {
    double rho = 1.0;
    double u = 0.0;
    double tau = 0.0;
};

struct SystemRiemannData {
    SystemState left, right;
};

struct SystemProfiles {
    HeavisideProfile k_rho, k_u, k_tau;
};

/// Profiles of a strongly-coupled traveling jump, tabulated on a
/// similarity grid.
struct CoupledProfiles {
    std::vector<double> y;
    std::vector<double> rho, u, tau;
    HeavisideProfile k_rho, k_u, k_tau;
};

enum class ResidualGrade { Negligible, AssociatedToZero, NotAssociated, Indeterminate };
const char* to_string(ResidualGrade g);

struct EquationResidualReport {
    int equation = 0;
    Statement statement = Statement::Assoc;
    ResidualGrade grade = ResidualGrade::Indeterminate;
    bool satisfies_contract = false;
    double max_abs_pairing = 0.0;
    double worst_limit = 0.0;            // extrapolated limit, worst member
    std::optional<double> worst_slope;
    std::string worst_phi;
};

struct UniqueVerdict {
    double c = 0.0;
    double A = 0.0;
    CoupledProfiles profiles;
};

struct FamilyMember {
    double A = 0.0;
    double c = 0.0;
    std::string profile_pair;
};

struct FamilyVerdict {
    std::vector<FamilyMember> members;
    double c_min = 0.0, c_max = 0.0;
};

struct NoSolutionWitness {
    double c = 0.0;
    int equation = 0;
    std::string phi_id;
    std::string mode;   // "nonzero-limit", "finite-order-decay", "unrealizable"
    double limit = 0.0;
    std::optional<double> slope;
};

struct NoSolutionVerdict {
    std::string search_space;
    std::vector<NoSolutionWitness> witnesses;
};

struct DegenerateVerdict {};

struct JumpVerdict {
    std::variant<DegenerateVerdict, UniqueVerdict, FamilyVerdict, NoSolutionVerdict> kind;
    std::vector<EquationResidualReport> diagnostics;

    bool is_unique() const { return std::holds_alternative<UniqueVerdict>(kind); }
    bool is_family() const { return std::holds_alternative<FamilyVerdict>(kind); }
    bool is_no_solution() const { return std::holds_alternative<NoSolutionVerdict>(kind); }
    bool is_degenerate() const { return std::holds_alternative<DegenerateVerdict>(kind); }
    const UniqueVerdict& unique() const { return std::get<UniqueVerdict>(kind); }
    const FamilyVerdict& family() const { return std::get<FamilyVerdict>(kind); }
    const NoSolutionVerdict& no_solution() const { return std::get<NoSolutionVerdict>(kind); }
};

struct SolveOptions {
    std::string base_profile = "tanh";   // K_u microstructure for coupling
    int coupling_points = 4001;
    double c_margin = 2.0;               // bracket beyond characteristic speeds
    int c_candidates = 41;               // all-strong witness grid
    double state_tol = 1e-7;             // |r1|,|r2| consistency
    double residual_floor = 1e-6;        // negligible-grade pairing floor
    DyadicGrid pairing_grid{0.1, 8};
    Interval domain{-8.0, 8.0};
    int battery_count = 7;
    std::vector<std::string> family_presets = {"tanh", "erf", "smoothstep", "skewed"};
    std::vector<double> family_shifts = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
    std::vector<double> family_widths = {1.0, 0.5, 2.0};
    bool certify_residuals = true;       // fill diagnostics via pairing sweeps
};

// -- scalar law ------------------------------------------------------

/// c = (ul + ur) / 2, any profile.
JumpVerdict scalar_speed(const ScalarRiemannData& data);

/// Speed selected by the u-multiplied statement of the law; differs
/// from scalar_speed. Confirmed against the weak-form oracle in tests.
JumpVerdict scalar_speed_variant(const ScalarRiemannData& data);

/// Pairing of the traveling-ansatz residual of u_t + u u_x at scale eps.
double scalar_weak_residual(const ScalarRiemannData& data, double c,
                            const HeavisideProfile& k, const TestFunction& phi,
                            double eps);

/// Same for u u_t + u^2 u_x.
double scalar_variant_weak_residual(const ScalarRiemannData& data, double c,
                                    const HeavisideProfile& k, const TestFunction& phi,
                                    double eps);

/// Root of the extrapolated weak-form residual in c (bisection then
/// secant). Oracle used to confirm the closed speeds.
double scalar_weakform_speed(const ScalarRiemannData& data, const HeavisideProfile& k,
                             bool variant_equation,
                             const DyadicGrid& grid = DyadicGrid::pairing_default());

// -- system ----------------------------------------------------------

/// Bumps supported around the discontinuity (several off-center, so
/// parity cannot hide finite-order decay). Used for residual grading.
std::vector<TestFunction> residual_battery();

/// Per-equation pairing of the traveling-ansatz residuals of the 3x3
/// system. Products are formed inside genfunc trees.
std::array<double, 3> weak_form_residual(const SystemRiemannData& data, double c,
                                         const SystemProfiles& profiles,
                                         const TestFunction& phi, double eps);

std::array<GenFunction, 3> system_residual_trees(const SystemRiemannData& data, double c,
                                                 const SystemProfiles& profiles);

JumpVerdict solve_system(const StatementLedger& ledger, const SystemRiemannData& data,
                         const SolveOptions& opts = {});

/// Consistent single-jump datum for the strong-strong-assoc ledger:
/// from a left state and a speed, generate the right state the two
/// strong equations admit. Used by tests and experiment defaults.
SystemRiemannData forward_construct_datum(const SystemState& left, double c);

/// Residual grade of u_t + u u_x - tau_x / rho under a traveling
/// ansatz. Negligible-grade for strongly coupled profiles.
EquationResidualReport derived_identity_check(const SystemRiemannData& data, double c,
                                              const CoupledProfiles& profiles,
                                              const SolveOptions& opts = {});

/// Contrast variant with independent (uncoupled) profiles.
EquationResidualReport derived_identity_check_uncoupled(const SystemRiemannData& data,
                                                        double c,
                                                        const SystemProfiles& profiles,
                                                        const SolveOptions& opts = {});

}  // namespace gflab
