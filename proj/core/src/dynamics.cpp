#include "gflab/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "gflab/errors.hpp"
#include "gflab/numerics.hpp"
#include "gflab/quadrature.hpp"

namespace gflab {

namespace {

constexpr double kPi = 3.14159265358979323846;

double grid_mass(const std::vector<double>& u, double dx) {
    double m = 0.0;
    for (double v : u) m += v;
    return m * dx;
}

// Exact solution of the pointwise reaction u1' = u1 u2, u2' = -u1 u2
// over a time h (u1 + u2 is invariant).
void react(double& u1, double& u2, double h) {
    const double s = u1 + u2;
    if (s <= 0.0) return;
    const double denom = u2 + u1 * std::exp(s * h);
    const double u2_new = s * u2 / denom;
    u1 = s - u2_new;
    u2 = u2_new;
}

}  // namespace

PreyPredatorResult simulate_prey_predator(const PreyPredatorProblem& prob) {
    if (!(prob.alpha1 >= 0.0 && prob.alpha2 >= 0.0))
        throw DomainError("masses must be nonnegative");
    if (!(prob.eps > 0.0)) throw DomainError("eps must be positive");

    const double dx = prob.eps / prob.cells_per_eps;
    const double dt = dx;  // speeds are +-1: exact shift transport
    if (dt > dx * (1.0 + 1e-12)) throw CFLViolation("dt exceeds dx");
    const int n = int(std::lround((prob.xmax - prob.xmin) / dx));
    const int steps = int(std::lround(prob.T / dt));

    PreyPredatorResult res;
    res.dx = dx;
    res.steps = steps;
    res.x.resize(n);
    res.u1.assign(n, 0.0);
    res.u2.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        res.x[i] = prob.xmin + (i + 0.5) * dx;
        res.u1[i] = prob.alpha1 * prob.psi1.value_at((res.x[i] + 1.0) / prob.eps) / prob.eps;
        res.u2[i] = prob.alpha2 * prob.psi2.value_at((res.x[i] - 1.0) / prob.eps) / prob.eps;
    }
    // Remove the midpoint-rule mass bias so the initial integrals are
    // the prescribed masses.
    for (auto [field, alpha] : {std::pair{&res.u1, prob.alpha1},
                                std::pair{&res.u2, prob.alpha2}}) {
        const double m = grid_mass(*field, dx);
        if (m > 0.0) {
            const double s = alpha / m;
            for (double& v : *field) v *= s;
        }
    }

    auto record_mass = [&](double t) {
        res.times.push_back(t);
        res.total_mass.push_back(grid_mass(res.u1, dx) + grid_mass(res.u2, dx));
    };
    record_mass(0.0);

    std::vector<double> tmp(n);
    auto maybe_snapshot = [&](int step) {
        const double t = step * dt;
        for (double ts : prob.snapshot_times) {
            if (std::fabs(t - ts) < 0.5 * dt) {
                res.snapshots_u1.emplace_back(t, res.u1);
                res.snapshots_u2.emplace_back(t, res.u2);
            }
        }
    };

    for (int s = 0; s < steps; ++s) {
        for (int i = 0; i < n; ++i) react(res.u1[i], res.u2[i], 0.5 * dt);
        // shift u1 right by one cell, u2 left by one cell
        tmp.assign(n, 0.0);
        for (int i = n - 1; i >= 1; --i) tmp[i] = res.u1[i - 1];
        res.u1 = tmp;
        tmp.assign(n, 0.0);
        for (int i = 0; i + 1 < n; ++i) tmp[i] = res.u2[i + 1];
        res.u2 = tmp;
        for (int i = 0; i < n; ++i) react(res.u1[i], res.u2[i], 0.5 * dt);

        double peak = 0.0;
        for (int i = 0; i < n; ++i)
            peak = std::max(peak, std::max(res.u1[i], res.u2[i]));
        if (peak > prob.blowup_bound)
            throw BlowupDetected("field exceeded " + std::to_string(prob.blowup_bound));
        record_mass((s + 1) * dt);
        maybe_snapshot(s + 1);
    }

    res.predator_mass = grid_mass(res.u1, dx);
    res.prey_mass = grid_mass(res.u2, dx);
    return res;
}

double prey_predator_beta(double alpha1, double alpha2) {
    return -2.0 * std::log(1.0 - std::exp(-alpha1 / 2.0) +
                           std::exp(-(alpha1 + alpha2) / 2.0));
}

PreyMassSweep prey_mass_after(double alpha1, double alpha2, const DiracProfile& psi1,
                              const DiracProfile& psi2,
                              const std::vector<double>& eps_list, double T) {
    if (!(T > 2.0)) throw DomainError("populations separate only after T > 2");
    PreyMassSweep sweep;
    sweep.eps = eps_list;
    for (double eps : eps_list) {
        PreyPredatorProblem prob;
        prob.alpha1 = alpha1;
        prob.alpha2 = alpha2;
        prob.psi1 = psi1;
        prob.psi2 = psi2;
        prob.eps = eps;
        prob.T = T;
        const auto res = simulate_prey_predator(prob);
        sweep.prey_mass.push_back(res.prey_mass);
        sweep.predator_mass.push_back(res.predator_mass);
    }
    sweep.prey_extrapolated = richardson_limit(sweep.prey_mass).limit;
    sweep.predator_extrapolated = richardson_limit(sweep.predator_mass).limit;
    sweep.beta_formula = prey_predator_beta(alpha1, alpha2);
    const double total = alpha1 + alpha2;
    sweep.prey_rel_error =
        std::fabs(sweep.prey_extrapolated - sweep.beta_formula) /
        std::max(1e-12, sweep.beta_formula);
    sweep.predator_rel_error =
        std::fabs(sweep.predator_extrapolated - (total - sweep.beta_formula)) /
        std::max(1e-12, total - sweep.beta_formula);
    return sweep;
}

HeatResult simulate_heat(const HeatProblem& prob) {
    if (prob.direction == HeatDirection::Backward)
        throw DomainError("backward marching is refused; use backward_heat_series");
    if (!(prob.k > 0.0)) throw DomainError("diffusivity must be positive");
    const int n = prob.cells;
    if (n < 16) throw DomainError("need at least 16 cells");
    const double dx = (prob.xmax - prob.xmin) / n;
    double dt = prob.dt > 0.0 ? prob.dt : dx;
    if (dt > dx * (1.0 + 1e-12))
        throw StabilityViolation("dt must not exceed dx");
    const int steps = std::max(1, int(std::ceil(prob.T / dt)));
    dt = prob.T / steps;

    HeatResult res;
    res.steps = steps;
    res.x.resize(n + 1);
    res.u.assign(n + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        res.x[i] = prob.xmin + i * dx;
        if (i > 0 && i < n && prob.initial.valid())
            res.u[i] = prob.initial.evaluate(res.x[i], prob.init_eps);
    }

    // Crank-Nicolson coefficients for the interior nodes.
    const double r = prob.k * dt / (2.0 * dx * dx);
    const int m = n - 1;  // interior count
    std::vector<double> a(m, -r), b(m, 1.0 + 2.0 * r), c(m, -r);
    std::vector<double> cp(m), rhsv(m), interior(m);

    auto absorb = [&](double h) {
        if (!prob.cubic_absorption) return;
        for (int i = 1; i < n; ++i) {
            const double v = res.u[i];
            res.u[i] = v / std::sqrt(1.0 + 2.0 * h * v * v);
        }
    };

    auto maybe_snapshot = [&](int step) {
        const double t = step * dt;
        for (double ts : prob.snapshot_times) {
            if (std::fabs(t - ts) < 0.5 * dt)
                res.snapshots.emplace_back(t, res.u);
        }
    };

    for (int s = 0; s < steps; ++s) {
        absorb(0.5 * dt);
        for (int i = 0; i < m; ++i) {
            const double um = res.u[i];       // u[i-1+1-1] = u[i]
            const double uc = res.u[i + 1];
            const double up = res.u[i + 2];
            rhsv[i] = uc + r * (um - 2.0 * uc + up);
        }
        // Thomas algorithm
        cp[0] = c[0] / b[0];
        rhsv[0] /= b[0];
        for (int i = 1; i < m; ++i) {
            const double denom = b[i] - a[i] * cp[i - 1];
            if (std::fabs(denom) < 1e-300)
                throw NonlinearSolveFailure("tridiagonal solve broke down");
            cp[i] = c[i] / denom;
            rhsv[i] = (rhsv[i] - a[i] * rhsv[i - 1]) / denom;
        }
        interior[m - 1] = rhsv[m - 1];
        for (int i = m - 2; i >= 0; --i) interior[i] = rhsv[i] - cp[i] * interior[i + 1];
        for (int i = 0; i < m; ++i) res.u[i + 1] = interior[i];
        absorb(0.5 * dt);
        maybe_snapshot(s + 1);
    }
    return res;
}

std::vector<double> heat_series_solution(const std::vector<double>& x,
                                         const std::vector<double>& coeffs, double k,
                                         double t) {
    std::vector<double> u(x.size(), 0.0);
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
        const double mm = double(m + 1);
        const double decay = std::exp(-k * mm * mm * t) * coeffs[m];
        for (std::size_t i = 0; i < x.size(); ++i) u[i] += decay * std::sin(mm * x[i]);
    }
    return u;
}

std::vector<double> sine_coefficients(const std::vector<double>& x,
                                      const std::vector<double>& u, int modes) {
    std::vector<double> coeffs(std::size_t(modes), 0.0);
    for (int m = 1; m <= modes; ++m) {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            const double h = x[i + 1] - x[i];
            acc += 0.5 * h * (u[i] * std::sin(m * x[i]) + u[i + 1] * std::sin(m * x[i + 1]));
        }
        coeffs[std::size_t(m - 1)] = 2.0 / kPi * acc;
    }
    return coeffs;
}

DeltaVanishingReport delta_vanishing_check(double omega, double t0,
                                           const TestFunction& phi,
                                           const std::vector<double>& eps_list,
                                           const DiracProfile& psi, double k) {
    if (!(omega > 0.0 && omega < kPi)) throw DomainError("omega must be interior");
    if (!(t0 > 0.0)) throw DomainError("t0 must be positive");

    DeltaVanishingReport rep;
    rep.eps = eps_list;

    auto run = [&](double eps, bool nonlinear) {
        HeatProblem prob;
        prob.k = k;
        prob.cubic_absorption = nonlinear;
        prob.initial = GenFunction::dirac_at(omega, psi);
        prob.init_eps = eps;
        prob.T = t0;
        const double target_dx = eps / 12.0;
        prob.cells = std::max(200, int(std::ceil(kPi / target_dx)));
        prob.dt = std::min(kPi / prob.cells, 1e-3);
        const HeatResult res = simulate_heat(prob);
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < res.x.size(); ++i) {
            const double h = res.x[i + 1] - res.x[i];
            acc += 0.5 * h * (res.u[i] * phi(res.x[i]) + res.u[i + 1] * phi(res.x[i + 1]));
        }
        return acc;
    };

    for (double eps : eps_list) {
        rep.nonlinear_pairings.push_back(run(eps, true));
        rep.linear_pairings.push_back(run(eps, false));
    }

    // Eigenfunction-series kernel oracle for the linear contrast.
    const int modes = 64;
    auto kernel_phi = [&](double x) {
        double g = 0.0;
        for (int m = 1; m <= modes; ++m)
            g += std::exp(-k * m * m * t0) * std::sin(m * omega) * std::sin(m * x);
        return 2.0 / kPi * g * phi(x);
    };
    rep.kernel_pairing =
        integrate_adaptive(kernel_phi, std::max(0.0, phi.lo()),
                           std::min(kPi, phi.hi()), 1e-10).value;

    rep.strictly_decreasing = true;
    const std::size_t n = rep.nonlinear_pairings.size();
    const std::size_t from = n > 4 ? n - 4 : 0;
    for (std::size_t i = from; i + 1 < n; ++i) {
        if (!(rep.nonlinear_pairings[i + 1] < rep.nonlinear_pairings[i]))
            rep.strictly_decreasing = false;
    }
    rep.nonlinear_class = classify_samples(rep.eps, rep.nonlinear_pairings,
                                           pairing_classify_options());
    return rep;
}

double illposed_family_value(int n, double x, double t) {
    if (n < 1) throw DomainError("mode index must be >= 1");
    return std::exp(-double(n) * double(n) * t) * std::sin(n * x) / double(n);
}

std::vector<IllposedFamilyRow> illposed_family_report(int n_max, double t0) {
    std::vector<IllposedFamilyRow> rows;
    for (int n = 1; n <= n_max; n *= 2) {
        IllposedFamilyRow row;
        row.n = n;
        // residual of u_t = u_xx via two analytic evaluation paths
        double worst = 0.0;
        for (double t : {0.0, 0.1, 0.5}) {
            for (int i = 1; i < 16; ++i) {
                const double x = kPi * i / 16.0;
                const double decay = std::exp(-double(n) * double(n) * t);
                const double ut = -double(n) * decay * std::sin(n * x);
                const double uxx = -double(n) * double(n) * illposed_family_value(n, x, t);
                worst = std::max(worst, std::fabs(ut - uxx));
            }
        }
        row.residual = worst;
        // sup at t = 0: include the maximizing abscissa pi/(2n)
        double sup = 0.0;
        for (int i = 0; i <= 256; ++i) {
            const double x = kPi * i / 256.0;
            sup = std::max(sup, std::fabs(illposed_family_value(n, x, 0.0)));
        }
        sup = std::max(sup, std::fabs(illposed_family_value(n, kPi / (2.0 * n), 0.0)));
        row.sup_t0 = sup;
        row.log_sup_neg = double(n) * double(n) * t0 - std::log(double(n));
        rows.push_back(row);
    }
    return rows;
}

BackwardSeriesResult backward_heat_series(const std::vector<double>& coeffs, double k,
                                          double t, int cells) {
    BackwardSeriesResult res;
    res.mode_growth.resize(coeffs.size());
    for (std::size_t m = 0; m < coeffs.size(); ++m) {
        const double mm = double(m + 1);
        const double exponent = k * mm * mm * t;
        if (exponent > 700.0)
            throw OverflowForLargeMode("mode " + std::to_string(m + 1) +
                                       " growth exceeds double range");
        res.mode_growth[m] = std::exp(exponent);
    }
    res.x.resize(std::size_t(cells) + 1);
    res.u.assign(res.x.size(), 0.0);
    for (std::size_t i = 0; i < res.x.size(); ++i) {
        res.x[i] = kPi * double(i) / double(cells);
        for (std::size_t m = 0; m < coeffs.size(); ++m) {
            res.u[i] += coeffs[m] * res.mode_growth[m] * std::sin(double(m + 1) * res.x[i]);
        }
    }
    return res;
}

namespace {

double burgers_flux(double u) { return 0.5 * u * u; }

double godunov_flux_scalar(double ul, double ur) {
    if (ul > ur) {
        const JumpVerdict v = scalar_speed({ul, ur});
        // degenerate verdicts happen for jumps at roundoff size
        const double c = v.is_unique() ? v.unique().c : 0.5 * (ul + ur);
        return c > 0.0 ? burgers_flux(ul) : (c < 0.0 ? burgers_flux(ur) : burgers_flux(ul));
    }
    if (ul >= 0.0) return burgers_flux(ul);
    if (ur <= 0.0) return burgers_flux(ur);
    return 0.0;  // transonic rarefaction
}

std::optional<double> mid_level_crossing(const std::vector<double>& x,
                                         const std::vector<double>& v) {
    double lo = v[0], hi = v[0];
    for (double w : v) {
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    if (hi - lo < 1e-12) return std::nullopt;
    const double mid = 0.5 * (lo + hi);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if ((v[i] - mid) * (v[i + 1] - mid) <= 0.0 && v[i] != v[i + 1]) {
            const double t = (mid - v[i]) / (v[i + 1] - v[i]);
            return x[i] + t * (x[i + 1] - x[i]);
        }
    }
    return std::nullopt;
}

}  // namespace

GodunovScalarResult godunov_scalar(const std::vector<double>& init, double xmin,
                                   double xmax, double cfl, double T) {
    if (cfl > 0.9 || cfl <= 0.0) throw CFLViolation("scalar scheme needs CFL in (0, 0.9]");
    const int n = int(init.size());
    if (n < 16) throw DomainError("need at least 16 cells");
    const double dx = (xmax - xmin) / n;

    GodunovScalarResult res;
    res.u = init;
    res.x.resize(n);
    for (int i = 0; i < n; ++i) res.x[i] = xmin + (i + 0.5) * dx;
    res.mass_initial = grid_mass(res.u, dx);

    double t = 0.0;
    std::vector<double> flux(std::size_t(n) + 1);
    while (t < T - 1e-14) {
        double smax = 1e-12;
        for (double v : res.u) smax = std::max(smax, std::fabs(v));
        double dt = cfl * dx / smax;
        dt = std::min(dt, T - t);
        for (int i = 0; i <= n; ++i) {
            const double ul = res.u[std::size_t(std::max(0, i - 1))];
            const double ur = res.u[std::size_t(std::min(n - 1, i))];
            flux[std::size_t(i)] = godunov_flux_scalar(ul, ur);
        }
        for (int i = 0; i < n; ++i) {
            res.u[std::size_t(i)] -=
                dt / dx * (flux[std::size_t(i) + 1] - flux[std::size_t(i)]);
        }
        res.boundary_flux_integral += dt * (flux[std::size_t(n)] - flux[0]);
        t += dt;
        ++res.steps;
    }
    res.mass_final = grid_mass(res.u, dx);
    res.shock_position = mid_level_crossing(res.x, res.u);
    return res;
}

GodunovSystemResult godunov_system(const std::vector<double>& rho0,
                                   const std::vector<double>& u0,
                                   const std::vector<double>& tau0, double xmin,
                                   double xmax, double cfl, double T,
                                   const StatementLedger& ledger, double A) {
    if (ledger.size() != 3 || ledger[0] != Statement::StrongEq ||
        ledger[1] != Statement::StrongEq || ledger[2] != Statement::Assoc)
        throw DomainError("system scheme requires the (=,=,~) ledger");
    if (cfl > 0.5 || cfl <= 0.0) throw CFLViolation("system scheme needs CFL in (0, 0.5]");
    const int n = int(rho0.size());
    if (n < 16 || u0.size() != rho0.size() || tau0.size() != rho0.size())
        throw DomainError("inconsistent initial fields");
    const double dx = (xmax - xmin) / n;

    GodunovSystemResult res;
    res.x.resize(n);
    for (int i = 0; i < n; ++i) res.x[i] = xmin + (i + 0.5) * dx;
    res.rho = rho0;
    res.tau = tau0;
    std::vector<double> mu(std::size_t(n), 0.0);
    for (int i = 0; i < n; ++i) {
        if (!(rho0[std::size_t(i)] > 0.0)) throw DomainError("density must be positive");
        mu[std::size_t(i)] = rho0[std::size_t(i)] * u0[std::size_t(i)];
    }
    res.mass_initial = grid_mass(res.rho, dx);

    auto wavespeed = [](double rho, double mu_) {
        return std::fabs(mu_ / rho) + 1.0 / std::sqrt(rho);
    };

    std::vector<std::array<double, 3>> dminus(std::size_t(n) + 1),
        dplus(std::size_t(n) + 1);
    double t = 0.0;
    while (t < T - 1e-14) {
        double smax = 1e-12;
        for (int i = 0; i < n; ++i)
            smax = std::max(smax, wavespeed(res.rho[std::size_t(i)], mu[std::size_t(i)]));
        double dt = cfl * dx / smax;
        dt = std::min(dt, T - t);
        // mass leaves only through the physical boundaries
        res.boundary_flux_integral += dt * (mu[std::size_t(n - 1)] - mu[0]);

        for (int f = 0; f <= n; ++f) {
            const std::size_t L = std::size_t(std::max(0, f - 1));
            const std::size_t R = std::size_t(std::min(n - 1, f));
            const double rl = res.rho[L], rr = res.rho[R];
            const double ml = mu[L], mr = mu[R];
            const double tl = res.tau[L], tr = res.tau[R];
            const double uL = ml / rl, uR = mr / rr;
            const double s = std::max(wavespeed(rl, ml), wavespeed(rr, mr));
            // conservative flux differences
            const double dF0 = mr - ml;
            const double dF1 = (mr * uR - tr) - (ml * uL - tl);
            const double dF2 = -(uR - uL);
            // nonconservative interface product u tau_x, weighted by
            // the microstructure parameter
            const double ubar = uL + A * (uR - uL);
            const double nc2 = ubar * (tr - tl);
            const double phi0 = dF0, phi1 = dF1, phi2 = dF2 + nc2;
            const double j0 = rr - rl, j1 = mr - ml, j2 = tr - tl;
            dminus[std::size_t(f)] = {0.5 * (phi0 - s * j0), 0.5 * (phi1 - s * j1),
                                      0.5 * (phi2 - s * j2)};
            dplus[std::size_t(f)] = {0.5 * (phi0 + s * j0), 0.5 * (phi1 + s * j1),
                                     0.5 * (phi2 + s * j2)};
        }
        for (int i = 0; i < n; ++i) {
            const double lam = dt / dx;
            res.rho[std::size_t(i)] -=
                lam * (dminus[std::size_t(i) + 1][0] + dplus[std::size_t(i)][0]);
            mu[std::size_t(i)] -=
                lam * (dminus[std::size_t(i) + 1][1] + dplus[std::size_t(i)][1]);
            res.tau[std::size_t(i)] -=
                lam * (dminus[std::size_t(i) + 1][2] + dplus[std::size_t(i)][2]);
            if (!(res.rho[std::size_t(i)] > 0.0))
                throw SolverFailure("density lost positivity at cell " + std::to_string(i));
        }
        t += dt;
        ++res.steps;
    }
    res.u.assign(std::size_t(n), 0.0);
    for (int i = 0; i < n; ++i) res.u[std::size_t(i)] = mu[std::size_t(i)] / res.rho[std::size_t(i)];
    res.mass_final = grid_mass(res.rho, dx);
    res.front_position = mid_level_crossing(res.x, res.rho);
    return res;
}

}  // namespace gflab
