#include "gflab/viscous.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>

#include "gflab/errors.hpp"
#include "gflab/numerics.hpp"

namespace gflab {

namespace {

struct Params {
    double r1, r2;         // eps1/eps3, eps2/eps3
    double rho_l, u_l, tau_l;
};

// Right-hand side of the once-integrated traveling-wave system in the
// z = xi/eps3 variable, with the mass-flux and momentum constants
// folded in (both depend on c).
void rhs(const Params& p, const double w[4], double c, double f[4]) {
    const double rho = w[0], mu = w[1], tau = w[2], sig = w[3];
    const double m = p.rho_l * (p.u_l - c);
    const double C2 = p.rho_l * p.u_l * (p.u_l - c) - p.tau_l;
    const double u = mu / rho;
    f[0] = (mu - c * rho - m) / p.r1;
    f[1] = (mu * u - c * mu - tau - C2) / p.r2;
    f[2] = sig;
    const double uz = f[1] / rho - mu * f[0] / (rho * rho);
    f[3] = (u - c) * sig - uz;
}

// Jacobian of the RHS with respect to (rho, mu, tau, sig) and c.
void rhs_jac(const Params& p, const double w[4], double c, double Jw[4][4],
             double Jc[4]) {
    const double rho = w[0], mu = w[1], tau = w[2], sig = w[3];
    (void)tau;
    const double u = mu / rho;
    const double m = p.rho_l * (p.u_l - c);
    const double C2 = p.rho_l * p.u_l * (p.u_l - c) - p.tau_l;

    const double f0 = (mu - c * rho - m) / p.r1;
    const double f1 = (mu * u - c * mu - w[2] - C2) / p.r2;

    // f0
    Jw[0][0] = -c / p.r1;
    Jw[0][1] = 1.0 / p.r1;
    Jw[0][2] = 0.0;
    Jw[0][3] = 0.0;
    Jc[0] = (-rho + p.rho_l) / p.r1;
    // f1
    Jw[1][0] = -(u * u) / p.r2;
    Jw[1][1] = (2.0 * u - c) / p.r2;
    Jw[1][2] = -1.0 / p.r2;
    Jw[1][3] = 0.0;
    Jc[1] = (-mu + p.rho_l * p.u_l) / p.r2;
    // f2
    Jw[2][0] = 0.0;
    Jw[2][1] = 0.0;
    Jw[2][2] = 0.0;
    Jw[2][3] = 1.0;
    Jc[2] = 0.0;
    // f3 = (u - c) sig - uz, uz = f1/rho - mu f0/rho^2
    const double uz_rho = Jw[1][0] / rho - f1 / (rho * rho) -
                          mu * Jw[0][0] / (rho * rho) +
                          2.0 * mu * f0 / (rho * rho * rho);
    const double uz_mu = Jw[1][1] / rho - f0 / (rho * rho) -
                         mu * Jw[0][1] / (rho * rho);
    const double uz_tau = Jw[1][2] / rho;
    Jw[3][0] = sig * (-u / rho) - uz_rho;
    Jw[3][1] = sig / rho - uz_mu;
    Jw[3][2] = -uz_tau;
    Jw[3][3] = u - c;
    const double uz_c = Jc[1] / rho - mu * Jc[0] / (rho * rho);
    Jc[3] = -sig - uz_c;
}

}  // namespace

ViscousProfileResult solve_viscous_profile(const ViscousProfileProblem& prob) {
    if (!(prob.eps1 > 0.0 && prob.eps2 > 0.0 && prob.eps3 > 0.0))
        throw DomainError("viscosities must be positive");
    const auto& d = prob.data;
    if (!(d.left.rho > 0.0 && d.right.rho > 0.0))
        throw DomainError("density must be positive");

    const int N = std::max(prob.nodes, 201);
    const int M = 4 * N + 1;  // unknowns: states + c
    const double Z = prob.z_half_width;
    const double h = 2.0 * Z / double(N - 1);

    Params p{prob.eps1 / prob.eps3, prob.eps2 / prob.eps3, d.left.rho, d.left.u,
             d.left.tau};

    const double drho = d.right.rho - d.left.rho;
    const double dmu = d.right.rho * d.right.u - d.left.rho * d.left.u;
    const double dtau = d.right.tau - d.left.tau;
    if (std::fabs(drho) < 1e-12)
        throw NoConnection("no density jump: speed not determined by conservation");

    // Initial guess: tanh ramp in tau, with rho and mu seeded on the
    // slow manifold of the fast equations (their residuals would start
    // at O(eps3/eps1) otherwise and stall the damped Newton).
    const double c0 = dmu / drho;  // conservation guess for the speed
    const double m0 = d.left.rho * (d.left.u - c0);
    const double C20 = d.left.rho * d.left.u * (d.left.u - c0) - d.left.tau;
    Eigen::VectorXd X(M);
    for (int j = 0; j < N; ++j) {
        const double z = -Z + j * h;
        const double ramp = 0.5 * (1.0 + std::tanh(0.5 * z));
        const double dramp = 0.25 / (std::cosh(0.5 * z) * std::cosh(0.5 * z));
        const double tau = d.left.tau + dtau * ramp;
        double rho_slow = d.left.rho + drho * ramp;
        const double denom = tau + C20 - c0 * m0;
        if (std::fabs(denom) > 1e-8 && m0 * m0 / denom > 1e-8)
            rho_slow = m0 * m0 / denom;
        X[4 * j + 0] = rho_slow;
        X[4 * j + 1] = c0 * rho_slow + m0;
        X[4 * j + 2] = tau;
        X[4 * j + 3] = dtau * dramp;
    }
    X[M - 1] = c0;

    const int mid = N / 2;
    double scale = 1.0;
    for (double v : {d.left.rho, d.left.u, d.left.tau, d.right.rho, d.right.u,
                     d.right.tau})
        scale = std::max(scale, std::fabs(v));

    auto states_ok = [&](const Eigen::VectorXd& v) {
        for (int j = 0; j < N; ++j) {
            if (!(v[4 * j] > 1e-8)) return false;
        }
        return std::isfinite(v[M - 1]);
    };

    auto eval_F = [&](const Eigen::VectorXd& v, Eigen::VectorXd& F) {
        const double c = v[M - 1];
        int row = 0;
        double wmid[4], f[4];
        for (int j = 0; j + 1 < N; ++j) {
            for (int k = 0; k < 4; ++k)
                wmid[k] = 0.5 * (v[4 * j + k] + v[4 * (j + 1) + k]);
            rhs(p, wmid, c, f);
            for (int k = 0; k < 4; ++k)
                F[row++] = (v[4 * (j + 1) + k] - v[4 * j + k]) / h - f[k];
        }
        F[row++] = v[0] - d.left.rho;
        F[row++] = v[1] - d.left.rho * d.left.u;
        F[row++] = v[2] - d.left.tau;
        F[row++] = v[4 * (N - 1) + 2] - d.right.tau;
        F[row++] = v[4 * mid + 2] - 0.5 * (d.left.tau + d.right.tau);
    };

    Eigen::VectorXd F(M), Fnew(M);
    Eigen::SparseMatrix<double> J(M, M);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(std::size_t(M) * 10);

    ViscousProfileResult res;
    eval_F(X, F);
    double fnorm = F.lpNorm<Eigen::Infinity>();

    int it = 0;
    for (; it < prob.max_newton_iters; ++it) {
        if (fnorm < prob.newton_tol * scale) break;
        trip.clear();
        const double c = X[M - 1];
        double wmid[4], Jw[4][4], Jc[4];
        int row = 0;
        for (int j = 0; j + 1 < N; ++j) {
            for (int k = 0; k < 4; ++k)
                wmid[k] = 0.5 * (X[4 * j + k] + X[4 * (j + 1) + k]);
            rhs_jac(p, wmid, c, Jw, Jc);
            for (int k = 0; k < 4; ++k) {
                for (int l = 0; l < 4; ++l) {
                    const double dmidl = -0.5 * Jw[k][l];
                    double dj = dmidl, djp = dmidl;
                    if (k == l) {
                        dj += -1.0 / h;
                        djp += 1.0 / h;
                    }
                    trip.emplace_back(row + k, 4 * j + l, dj);
                    trip.emplace_back(row + k, 4 * (j + 1) + l, djp);
                }
                trip.emplace_back(row + k, M - 1, -Jc[k]);
            }
            row += 4;
        }
        trip.emplace_back(row + 0, 0, 1.0);
        trip.emplace_back(row + 1, 1, 1.0);
        trip.emplace_back(row + 2, 2, 1.0);
        trip.emplace_back(row + 3, 4 * (N - 1) + 2, 1.0);
        trip.emplace_back(row + 4, 4 * mid + 2, 1.0);

        J.setFromTriplets(trip.begin(), trip.end());
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(J);
        if (lu.info() != Eigen::Success)
            throw StiffnessFailure("collocation Jacobian factorization failed");
        Eigen::VectorXd dx = lu.solve(-F);
        if (lu.info() != Eigen::Success)
            throw StiffnessFailure("collocation linear solve failed");

        double t = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 12; ++ls) {
            Eigen::VectorXd Xt = X + t * dx;
            if (states_ok(Xt)) {
                eval_F(Xt, Fnew);
                const double fn = Fnew.lpNorm<Eigen::Infinity>();
                if (fn < fnorm || fn < prob.newton_tol * scale) {
                    X = std::move(Xt);
                    F = Fnew;
                    fnorm = fn;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if (!accepted)
            throw NoConnection("Newton stalled: no traveling profile connects the states");
    }
    if (fnorm >= prob.newton_tol * scale * 10.0)
        throw NoConnection("Newton did not converge to a traveling profile");

    res.newton_iterations = it;
    res.c = X[M - 1];
    res.z.resize(N);
    res.rho.resize(N);
    res.u.resize(N);
    res.tau.resize(N);
    res.k_u.resize(N);
    res.k_tau.resize(N);
    for (int j = 0; j < N; ++j) {
        res.z[j] = -Z + j * h;
        res.rho[j] = X[4 * j + 0];
        res.u[j] = X[4 * j + 1] / X[4 * j + 0];
        res.tau[j] = X[4 * j + 2];
    }
    const double du = d.right.u - d.left.u;
    double gap = 0.0;
    for (int j = 0; j < N; ++j) {
        res.k_u[j] = (res.u[j] - d.left.u) / du;
        res.k_tau[j] = (res.tau[j] - d.left.tau) / dtau;
        gap = std::max(gap, std::fabs(res.k_tau[j] - res.k_u[j]));
    }
    res.profile_coupling_gap = gap;

    double A = 0.0;
    for (int j = 0; j + 1 < N; ++j) {
        A += 0.5 * (res.k_u[j] + res.k_u[j + 1]) * (res.k_tau[j + 1] - res.k_tau[j]);
    }
    res.A = A;

    res.arrival_right = {res.rho.back(), res.u.back(), res.tau.back()};
    res.farfield_residual =
        std::max({std::fabs(res.rho.back() - d.right.rho),
                  std::fabs(res.u.back() - d.right.u),
                  std::fabs(X[3]), std::fabs(X[4 * (N - 1) + 3])}) /
        (1.0 + scale);
    if (prob.require_connection && res.farfield_residual > 5e-3)
        throw NoConnection("profile does not connect the given states (miss " +
                           std::to_string(res.farfield_residual) + ")");
    return res;
}

BurgersProfile burgers_viscous_profile(double ul, double ur, double nu) {
    if (!(ul > ur)) throw DomainError("viscous profile needs ul > ur");
    if (!(nu > 0.0)) throw DomainError("viscosity must be positive");

    const double L = 40.0 * nu / (ul - ur) + 10.0 * nu;
    const int n = 4001;
    const double h = 2.0 * L / double(n - 1);

    auto integrate = [&](double c, std::vector<double>* store) {
        // nu u' = u^2/2 - c u - K with K fixed by the left state.
        const double K = 0.5 * ul * ul - c * ul;
        auto f = [&](double u) { return (0.5 * u * u - c * u - K) / nu; };
        double u = ul - 1e-9 * (ul - ur);
        if (store) store->assign(1, u);
        for (int i = 0; i + 1 < n; ++i) {
            const double k1 = f(u);
            const double k2 = f(u + 0.5 * h * k1);
            const double k3 = f(u + 0.5 * h * k2);
            const double k4 = f(u + h * k3);
            u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (store) store->push_back(u);
        }
        return u;
    };

    auto objective = [&](double c) { return integrate(c, nullptr) - ur; };
    auto root = find_root(objective, 0.5 * (ul + ur) - 0.6 * (ul - ur),
                          0.5 * (ul + ur) + 0.6 * (ul - ur), 1e-12);
    if (!root) throw NoConnection("no viscous profile speed found");

    BurgersProfile prof;
    prof.c = *root;
    integrate(prof.c, &prof.u);
    prof.xi.resize(prof.u.size());
    for (std::size_t i = 0; i < prof.u.size(); ++i) prof.xi[i] = -L + double(i) * h;
    return prof;
}

double burgers_profile_exact(double ul, double ur, double nu, double xi) {
    const double c = 0.5 * (ul + ur);
    const double a = 0.5 * (ul - ur);
    return c - a * std::tanh(a * xi / (2.0 * nu));
}

}  // namespace gflab
