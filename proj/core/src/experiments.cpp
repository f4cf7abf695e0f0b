#include "gflab/experiments.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>

#include "gflab/dynamics.hpp"
#include "gflab/errors.hpp"
#include "gflab/eps_core.hpp"
#include "gflab/genfunc.hpp"
#include "gflab/genfunc_io.hpp"
#include "gflab/io.hpp"
#include "gflab/numerics.hpp"
#include "gflab/profiles.hpp"
#include "gflab/riemann.hpp"
#include "gflab/viscous.hpp"

namespace gflab {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

struct Ctx {
    std::string out_dir;
    std::vector<std::string> files;
    ojson summary = ojson::object();

    void write_csv(const std::string& name, const Csv& csv) {
        write_file_atomic(out_dir + "/" + name, csv.str());
        files.push_back(name);
    }
    void write_json(const std::string& name, const ojson& j) {
        write_file_atomic(out_dir + "/" + name, j.dump(2) + "\n");
        files.push_back(name);
    }
};

struct KindDef {
    ExperimentInfo info;
    json defaults;
    std::function<void(const json&, Ctx&)> run;
};

// ---------------------------------------------------------------- helpers

DyadicGrid grid_from(const json& j) {
    DyadicGrid g;
    g.eps0 = j.value("eps0", 0.1);
    g.k_max = j.value("k_max", 9);
    if (!(g.eps0 > 0.0) || g.k_max < 1)
        throw ConfigError("params.grid", "invalid grid");
    return g;
}

Interval domain_from(const json& j) {
    Interval d;
    d.lo = j.value("lo", -8.0);
    d.hi = j.value("hi", 8.0);
    if (!(d.lo < d.hi)) throw ConfigError("params.domain", "lo must be < hi");
    return d;
}

std::vector<TestFunction> battery_from(const json& j, Interval domain) {
    const int count = j.value("count", 7);
    std::vector<double> widths = j.value("widths", std::vector<double>{0.5, 1.0, 2.0});
    return make_battery(domain, count, widths);
}

SystemRiemannData data_from(const json& j) {
    const auto L = j.at("left").get<std::vector<double>>();
    const auto R = j.at("right").get<std::vector<double>>();
    if (L.size() != 3 || R.size() != 3)
        throw ConfigError("params.data", "states must be [rho, u, tau]");
    SystemRiemannData d;
    d.left = {L[0], L[1], L[2]};
    d.right = {R[0], R[1], R[2]};
    return d;
}

json default_system_datum() {
    const SystemRiemannData d = forward_construct_datum({1.0, 0.0, 0.0}, 0.8);
    return json{{"left", {d.left.rho, d.left.u, d.left.tau}},
                {"right", {d.right.rho, d.right.u, d.right.tau}}};
}

std::string cls_cell(const AsymptoticClass& c) {
    if (c.indeterminate) return "indeterminate";
    if (c.negligible) return "negligible";
    if (c.associated_to_zero) return "associated_to_zero";
    return "not_associated";
}

ojson class_json(const AsymptoticClass& c) {
    ojson j;
    j["moderate"] = c.moderate;
    j["negligible"] = c.negligible;
    j["associated_to_zero"] = c.associated_to_zero;
    if (c.leading_order) j["leading_order"] = *c.leading_order;
    j["confidence"] = c.confidence == Confidence::Exact ? "exact" : "numeric";
    j["indeterminate"] = c.indeterminate;
    return j;
}

ojson residual_json(const EquationResidualReport& r) {
    ojson j;
    j["equation"] = r.equation + 1;
    j["statement"] = r.statement == Statement::StrongEq ? "=" : "~";
    j["grade"] = to_string(r.grade);
    j["satisfies_contract"] = r.satisfies_contract;
    j["max_abs_pairing"] = r.max_abs_pairing;
    j["worst_limit"] = r.worst_limit;
    if (r.worst_slope) j["worst_slope"] = *r.worst_slope;
    j["worst_phi"] = r.worst_phi;
    return j;
}

void residual_rows(Csv& csv, const std::vector<EquationResidualReport>& reps) {
    for (const auto& r : reps) {
        csv.add({std::to_string(r.equation + 1),
                 r.statement == Statement::StrongEq ? "=" : "~", to_string(r.grade),
                 r.satisfies_contract ? "yes" : "no", csv_num(r.max_abs_pairing),
                 csv_num(r.worst_limit),
                 r.worst_slope ? csv_num(*r.worst_slope) : "", r.worst_phi});
    }
}

// ---------------------------------------------------------------- handlers

void run_eps_table(const json& params, Ctx& ctx) {
    const DyadicGrid grid = grid_from(params.value("grid", json{{"eps0", 0.5}, {"k_max", 40}}));

    struct Item {
        std::string name;
        EpsRepresentative rep;
    };
    const EpsRepresentative inf = EpsRepresentative::power(1.0, -1.0);
    std::vector<Item> quantities = {
        {"1/eps", inf},
        {"eps", EpsRepresentative::power(1.0, 1.0)},
        {"2eps", EpsRepresentative::power(2.0, 1.0)},
        {"sqrt(eps)", EpsRepresentative::power(1.0, 0.5)},
        {"eps^2", EpsRepresentative::power(1.0, 2.0)},
    };
    // extra closed forms from the config: sums of
    // coeff * eps^power * log(1/eps)^log_power * exp(-exp_rate/eps)
    for (const auto& q : params.value("quantities", json::array())) {
        ClosedForm form;
        for (const auto& t : q.at("terms")) {
            form.terms.push_back({t.value("coeff", 1.0), t.value("power", 0.0),
                                  t.value("log_power", 0), t.value("exp_rate", 0.0)});
        }
        quantities.push_back({q.at("label").get<std::string>(),
                              EpsRepresentative::from_closed_form(form)});
    }

    Csv csv;
    csv.header = {"item", "check", "moderate", "negligible", "associated_to_zero",
                  "leading_order", "confidence", "eq_in_EN"};
    auto add_class_row = [&](const std::string& name, const std::string& check,
                             const AsymptoticClass& c) {
        csv.add({name, check, c.moderate ? "yes" : "no", c.negligible ? "yes" : "no",
                 c.associated_to_zero ? "yes" : "no",
                 c.leading_order ? csv_num(*c.leading_order) : "",
                 c.confidence == Confidence::Exact ? "exact" : "numeric", ""});
    };
    for (const auto& q : quantities)
        add_class_row(q.name, "classify", classify(q.rep, grid));
    for (std::size_t i = 1; i < quantities.size(); ++i) {
        const auto prod = mul(quantities[i].rep, inf);
        add_class_row(quantities[i].name + " * 1/eps", "classify", classify(prod, grid));
    }
    for (std::size_t i = 1; i < quantities.size(); ++i) {
        for (std::size_t j = i + 1; j < quantities.size(); ++j) {
            const Tristate eq = eq_in_en(quantities[i].rep, quantities[j].rep, grid);
            csv.add({quantities[i].name + " vs " + quantities[j].name, "eq_in_EN", "",
                     "", "", "", "", to_string(eq)});
        }
    }
    ctx.write_csv("results.csv", csv);

    Csv plot;
    plot.header = {"eps"};
    for (const auto& q : quantities) plot.header.push_back("abs_" + q.name);
    for (double e : grid.samples()) {
        std::vector<std::string> row = {csv_num(e)};
        for (const auto& q : quantities) row.push_back(csv_num(std::fabs(q.rep(e))));
        plot.add(std::move(row));
    }
    ctx.write_csv("plotdata.csv", plot);
    ctx.summary["quantities"] = quantities.size();
}

void run_moments(const json& params, Ctx& ctx) {
    const auto presets =
        params.value("presets", heaviside_preset_tags());
    const int n_max = params.value("n_max", 8);

    Csv csv;
    csv.header = {"profile", "n", "value", "abs_error"};
    Csv plot;
    plot.header = {"n"};
    for (const auto& t : presets) plot.header.push_back(t);
    double worst = 0.0;
    std::vector<std::vector<double>> table(std::size_t(n_max) + 1,
                                           std::vector<double>(presets.size()));
    for (std::size_t p = 0; p < presets.size(); ++p) {
        const HeavisideProfile k = preset_heaviside(presets[p]);
        for (int n = 0; n <= n_max; ++n) {
            const double v = moment(k, n);
            const double err = std::fabs(v - 1.0 / double(n + 1));
            worst = std::max(worst, err);
            table[std::size_t(n)][p] = v;
            csv.add({presets[p], std::to_string(n), csv_num(v), csv_num(err)});
        }
    }
    for (int n = 0; n <= n_max; ++n) {
        std::vector<std::string> row = {std::to_string(n)};
        for (std::size_t p = 0; p < presets.size(); ++p)
            row.push_back(csv_num(table[std::size_t(n)][p]));
        plot.add(std::move(row));
    }
    ctx.write_csv("results.csv", csv);
    ctx.write_csv("plotdata.csv", plot);
    ctx.summary["max_abs_error"] = worst;
}

void run_association(const json& params, Ctx& ctx) {
    const Interval domain = domain_from(params.value("domain", json::object()));
    GenFunction u = parse_genfunction(params.at("u").dump()).with_domain(domain);
    GenFunction v = parse_genfunction(params.at("v").dump()).with_domain(domain);
    const DyadicGrid grid = grid_from(params.value("grid", json::object()));
    const auto battery = battery_from(params.value("battery", json::object()), domain);

    const AssociationVerdict verdict = association(u, v, battery, grid);

    Csv csv;
    csv.header = {"phi_id", "center", "width", "class", "leading_order"};
    for (std::size_t i = 0; i < battery.size(); ++i) {
        const auto& c = verdict.per_phi[i];
        csv.add({battery[i].id, csv_num(battery[i].center), csv_num(battery[i].width),
                 cls_cell(c), c.leading_order ? csv_num(*c.leading_order) : ""});
    }
    ctx.write_csv("results.csv", csv);

    Csv plot;
    plot.header = {"eps"};
    for (const auto& phi : battery) plot.header.push_back("abs_pair_" + phi.id);
    for (std::size_t e = 0; e < verdict.eps.size(); ++e) {
        std::vector<std::string> row = {csv_num(verdict.eps[e])};
        for (std::size_t i = 0; i < battery.size(); ++i)
            row.push_back(csv_num(std::fabs(verdict.pairings[i][e])));
        plot.add(std::move(row));
    }
    ctx.write_csv("plotdata.csv", plot);

    Csv sweep;
    sweep.header = {"eps", "phi_id", "value"};
    for (std::size_t i = 0; i < battery.size(); ++i) {
        for (std::size_t e = 0; e < verdict.eps.size(); ++e) {
            sweep.add({csv_num(verdict.eps[e]), battery[i].id,
                       csv_num(verdict.pairings[i][e])});
        }
    }
    ctx.write_csv("pairings.csv", sweep);

    ojson vj;
    vj["aggregate"] = to_string(verdict.aggregate);
    vj["per_phi"] = ojson::array();
    for (std::size_t i = 0; i < battery.size(); ++i) {
        ojson pj = class_json(verdict.per_phi[i]);
        pj["phi_id"] = battery[i].id;
        vj["per_phi"].push_back(pj);
    }
    ctx.write_json("verdict.json", vj);
    ctx.summary["verdict"] = to_string(verdict.aggregate);
}

void run_sqrt_delta(const json& params, Ctx& ctx) {
    const DiracProfile psi = preset_dirac(params.value("psi", std::string("parabolic")));
    const json phij = params.value("phi", json::object());
    TestFunction phi;
    phi.center = phij.value("center", 0.0);
    phi.width = phij.value("width", 1.0);
    phi.id = "phi0";
    const DyadicGrid grid = grid_from(params.value("grid", json::object()));

    const SqrtDeltaReport rep = sqrt_delta_demo(psi, phi, grid);

    Csv csv;
    csv.header = {"eps", "field_pairing", "energy_pairing"};
    for (std::size_t i = 0; i < rep.eps.size(); ++i) {
        csv.add({csv_num(rep.eps[i]), csv_num(rep.field_pairings[i]),
                 csv_num(rep.energy_pairings[i])});
    }
    ctx.write_csv("results.csv", csv);
    ctx.write_csv("plotdata.csv", csv);

    ojson vj;
    vj["field_class"] = class_json(rep.field_class);
    vj["energy_class"] = class_json(rep.energy_class);
    vj["field_slope"] = rep.field_slope;
    vj["energy_limit"] = rep.energy_limit;
    vj["phi_at_center"] = rep.phi_at_center;
    vj["energy_abs_error"] = std::fabs(rep.energy_limit - rep.phi_at_center);
    ctx.write_json("verdict.json", vj);
    ctx.summary["field_slope"] = rep.field_slope;
    ctx.summary["energy_abs_error"] = std::fabs(rep.energy_limit - rep.phi_at_center);
}

void run_riemann_scalar(const json& params, Ctx& ctx) {
    ScalarRiemannData data{params.value("ul", 0.0), params.value("ur", 1.0)};
    const HeavisideProfile k = preset_heaviside(params.value("profile", std::string("tanh")));
    const DyadicGrid grid = grid_from(params.value("grid", json{{"eps0", 0.1}, {"k_max", 8}}));

    const JumpVerdict v1 = scalar_speed(data);
    const JumpVerdict v3 = scalar_speed_variant(data);

    ojson vj;
    Csv csv;
    csv.header = {"ul", "ur", "c_formula", "c_weakform", "c3_formula", "c3_weakform"};
    std::vector<std::string> row = {csv_num(data.ul), csv_num(data.ur)};
    if (v1.is_unique()) {
        const double c = v1.unique().c;
        const double cw = scalar_weakform_speed(data, k, false, grid);
        vj["c_formula"] = c;
        vj["c_weakform"] = cw;
        row.push_back(csv_num(c));
        row.push_back(csv_num(cw));
    } else {
        vj["c_formula"] = "degenerate";
        row.push_back("degenerate");
        row.push_back("");
    }
    if (v3.is_unique()) {
        const double c3 = v3.unique().c;
        const double c3w = scalar_weakform_speed(data, k, true, grid);
        vj["c3_formula"] = c3;
        vj["c3_weakform"] = c3w;
        row.push_back(csv_num(c3));
        row.push_back(csv_num(c3w));
    } else if (v3.is_no_solution()) {
        vj["c3_formula"] = "no_solution";
        row.push_back("no_solution");
        row.push_back("");
    } else {
        vj["c3_formula"] = "degenerate";
        row.push_back("degenerate");
        row.push_back("");
    }
    csv.add(row);
    ctx.write_csv("results.csv", csv);
    ctx.write_json("verdict.json", vj);

    if (v1.is_unique()) {
        TestFunction phi;
        phi.center = 0.5;
        phi.width = 1.0;
        phi.id = "phi_off";
        Csv plot;
        plot.header = {"eps", "abs_res_eq1_at_c", "abs_res_eq3_at_c"};
        for (double e : grid.samples()) {
            plot.add({csv_num(e),
                      csv_num(std::fabs(scalar_weak_residual(data, v1.unique().c, k, phi, e))),
                      csv_num(std::fabs(scalar_variant_weak_residual(data, v1.unique().c, k,
                                                                     phi, e)))});
        }
        ctx.write_csv("plotdata.csv", plot);
    }
    ctx.summary = ojson(vj);
}

void run_riemann_system(const json& params, Ctx& ctx) {
    const StatementLedger ledger =
        parse_ledger(params.value("ledger", std::string("(=,=,~)")));
    const SystemRiemannData data = data_from(
        params.contains("data") ? params.at("data") : default_system_datum());
    SolveOptions opts;
    opts.base_profile = params.value("profile", std::string("tanh"));
    opts.certify_residuals = params.value("certify", true);

    const JumpVerdict verdict = solve_system(ledger, data, opts);

    ojson vj;
    vj["ledger"] = ledger_to_string(ledger);
    Csv res;
    res.header = {"equation", "statement", "grade", "contract", "max_abs_pairing",
                  "limit", "slope", "phi"};
    residual_rows(res, verdict.diagnostics);

    if (verdict.is_unique()) {
        const auto& u = verdict.unique();
        vj["kind"] = "unique";
        vj["c"] = u.c;
        vj["A"] = u.A;
        Csv plot;
        plot.header = {"y", "k_rho", "k_u", "k_tau"};
        const std::size_t n = u.profiles.y.size();
        const std::size_t stride = std::max<std::size_t>(1, n / 400);
        for (std::size_t i = 0; i < n; i += stride) {
            plot.add({csv_num(u.profiles.y[i]),
                      csv_num(u.profiles.k_rho.value_at(u.profiles.y[i])),
                      csv_num(u.profiles.k_u.value_at(u.profiles.y[i])),
                      csv_num(u.profiles.k_tau.value_at(u.profiles.y[i]))});
        }
        ctx.write_csv("plotdata.csv", plot);
    } else if (verdict.is_family()) {
        const auto& f = verdict.family();
        vj["kind"] = "family";
        vj["members"] = f.members.size();
        vj["c_min"] = f.c_min;
        vj["c_max"] = f.c_max;
        Csv fam;
        fam.header = {"A", "c", "profile_pair"};
        for (const auto& m : f.members)
            fam.add({csv_num(m.A), csv_num(m.c), m.profile_pair});
        ctx.write_csv("family.csv", fam);
        Csv plot;
        plot.header = {"A", "c"};
        for (const auto& m : f.members) plot.add({csv_num(m.A), csv_num(m.c)});
        ctx.write_csv("plotdata.csv", plot);
    } else if (verdict.is_no_solution()) {
        const auto& ns = verdict.no_solution();
        vj["kind"] = "no_solution";
        vj["search_space"] = ns.search_space;
        Csv wit;
        wit.header = {"c", "equation", "mode", "limit", "slope", "phi"};
        Csv plot;
        plot.header = {"c", "abs_limit"};
        for (const auto& w : ns.witnesses) {
            wit.add({csv_num(w.c), std::to_string(w.equation + 1), w.mode,
                     csv_num(w.limit), w.slope ? csv_num(*w.slope) : "", w.phi_id});
            plot.add({csv_num(w.c), csv_num(std::fabs(w.limit))});
        }
        ctx.write_csv("witnesses.csv", wit);
        ctx.write_csv("plotdata.csv", plot);
    } else {
        vj["kind"] = "degenerate";
    }
    vj["residuals"] = ojson::array();
    for (const auto& r : verdict.diagnostics) vj["residuals"].push_back(residual_json(r));
    ctx.write_csv("results.csv", res);
    ctx.write_json("verdict.json", vj);
    ctx.summary["kind"] = vj["kind"];
    if (vj.contains("c")) ctx.summary["c"] = vj["c"];
    if (vj.contains("A")) ctx.summary["A"] = vj["A"];
}

void run_viscous_oracle(const json& params, Ctx& ctx) {
    ViscousProfileProblem prob;
    prob.eps1 = params.value("eps1", 1e-3);
    prob.eps2 = params.value("eps2", 1e-3);
    prob.eps3 = params.value("eps3", 1.0);
    prob.data = data_from(params.contains("data") ? params.at("data")
                                                  : default_system_datum());
    prob.z_half_width = params.value("z_half_width", 25.0);
    prob.nodes = params.value("nodes", 4001);

    const ViscousProfileResult res = solve_viscous_profile(prob);

    Csv csv;
    csv.header = {"c", "A", "farfield_residual", "newton_iterations",
                  "profile_coupling_gap"};
    csv.add({csv_num(res.c), csv_num(res.A), csv_num(res.farfield_residual),
             std::to_string(res.newton_iterations), csv_num(res.profile_coupling_gap)});
    ctx.write_csv("results.csv", csv);

    Csv plot;
    plot.header = {"z", "rho", "u", "tau", "k_u", "k_tau"};
    const std::size_t stride = std::max<std::size_t>(1, res.z.size() / 800);
    for (std::size_t i = 0; i < res.z.size(); i += stride) {
        plot.add({csv_num(res.z[i]), csv_num(res.rho[i]), csv_num(res.u[i]),
                  csv_num(res.tau[i]), csv_num(res.k_u[i]), csv_num(res.k_tau[i])});
    }
    ctx.write_csv("plotdata.csv", plot);
    ctx.summary["c"] = res.c;
    ctx.summary["A"] = res.A;
    ctx.summary["profile_coupling_gap"] = res.profile_coupling_gap;
}

void run_prey_predator(const json& params, Ctx& ctx) {
    const double a1 = params.value("alpha1", 2.0);
    const double a2 = params.value("alpha2", 2.0);
    const DiracProfile psi1 = preset_dirac(params.value("psi1", std::string("parabolic")));
    const DiracProfile psi2 = preset_dirac(params.value("psi2", std::string("parabolic")));
    const auto eps_list =
        params.value("eps_list", std::vector<double>{0.2, 0.1, 0.05, 0.025});
    const double T = params.value("T", 4.0);

    const PreyMassSweep sweep = prey_mass_after(a1, a2, psi1, psi2, eps_list, T);

    Csv csv;
    csv.header = {"eps", "prey_mass", "predator_mass"};
    for (std::size_t i = 0; i < sweep.eps.size(); ++i) {
        csv.add({csv_num(sweep.eps[i]), csv_num(sweep.prey_mass[i]),
                 csv_num(sweep.predator_mass[i])});
    }
    ctx.write_csv("results.csv", csv);

    PreyPredatorProblem prob;
    prob.alpha1 = a1;
    prob.alpha2 = a2;
    prob.psi1 = psi1;
    prob.psi2 = psi2;
    prob.eps = eps_list.back();
    prob.T = T;
    const PreyPredatorResult fields = simulate_prey_predator(prob);
    Csv plot;
    plot.header = {"x", "u1", "u2"};
    const std::size_t stride = std::max<std::size_t>(1, fields.x.size() / 1000);
    for (std::size_t i = 0; i < fields.x.size(); i += stride) {
        plot.add({csv_num(fields.x[i]), csv_num(fields.u1[i]), csv_num(fields.u2[i])});
    }
    ctx.write_csv("plotdata.csv", plot);

    ctx.summary["beta_formula"] = sweep.beta_formula;
    ctx.summary["prey_extrapolated"] = sweep.prey_extrapolated;
    ctx.summary["predator_extrapolated"] = sweep.predator_extrapolated;
    ctx.summary["prey_rel_error"] = sweep.prey_rel_error;
    ctx.summary["predator_rel_error"] = sweep.predator_rel_error;
}

GenFunction heat_initial_from(const json& j, double& init_eps) {
    const std::string kind = j.value("kind", std::string("sine"));
    if (kind == "sine") {
        const auto coeffs = j.value("coeffs", std::vector<double>{1.0});
        SmoothFn fn;
        fn.label = "sine_series";
        fn.f = [coeffs](double x) {
            double v = 0.0;
            for (std::size_t m = 0; m < coeffs.size(); ++m)
                v += coeffs[m] * std::sin(double(m + 1) * x);
            return v;
        };
        fn.df = [coeffs](double x) {
            double v = 0.0;
            for (std::size_t m = 0; m < coeffs.size(); ++m)
                v += coeffs[m] * double(m + 1) * std::cos(double(m + 1) * x);
            return v;
        };
        init_eps = 0.1;
        return GenFunction::smooth(fn);
    }
    if (kind == "tree") {
        init_eps = j.value("eps", 0.1);
        return parse_genfunction(j.at("tree").dump());
    }
    throw ConfigError("params.initial.kind", "expected sine or tree");
}

void run_heat_forward(const json& params, Ctx& ctx) {
    HeatProblem prob;
    prob.k = params.value("k", 1.0);
    prob.cubic_absorption = params.value("absorption", true);
    const json initial = params.value("initial", json{{"kind", "sine"},
                                                      {"coeffs", {1.0, 0.0, 0.3}}});
    prob.initial = heat_initial_from(initial, prob.init_eps);
    prob.cells = params.value("cells", 400);
    prob.T = params.value("T", 0.1);
    prob.snapshot_times = params.value("snapshots", std::vector<double>{prob.T});

    const HeatResult res = simulate_heat(prob);

    Csv plot;
    plot.header = {"x", "u_final"};
    for (std::size_t s = 0; s < res.snapshots.size(); ++s)
        plot.header.push_back("u_t" + csv_num(res.snapshots[s].first));
    for (std::size_t i = 0; i < res.x.size(); ++i) {
        std::vector<std::string> row = {csv_num(res.x[i]), csv_num(res.u[i])};
        for (const auto& snap : res.snapshots) row.push_back(csv_num(snap.second[i]));
        plot.add(std::move(row));
    }
    ctx.write_csv("plotdata.csv", plot);

    Csv snaps;
    snaps.header = {"t", "x", "value"};
    for (const auto& snap : res.snapshots) {
        for (std::size_t i = 0; i < res.x.size(); ++i) {
            snaps.add({csv_num(snap.first), csv_num(res.x[i]), csv_num(snap.second[i])});
        }
    }
    ctx.write_csv("snapshots.csv", snaps);

    Csv csv;
    csv.header = {"quantity", "value"};
    csv.add({"steps", std::to_string(res.steps)});
    double umax = 0.0;
    for (double v : res.u) umax = std::max(umax, std::fabs(v));
    csv.add({"final_max_abs", csv_num(umax)});
    if (!prob.cubic_absorption && initial.value("kind", std::string()) == "sine") {
        const auto coeffs = initial.value("coeffs", std::vector<double>{1.0});
        const auto oracle = heat_series_solution(res.x, coeffs, prob.k, prob.T);
        double err = 0.0;
        for (std::size_t i = 0; i < res.x.size(); ++i)
            err = std::max(err, std::fabs(res.u[i] - oracle[i]));
        csv.add({"oracle_max_error", csv_num(err)});
        ctx.summary["oracle_max_error"] = err;
    }
    ctx.write_csv("results.csv", csv);
    ctx.summary["steps"] = res.steps;
}

void run_heat_backward(const json& params, Ctx& ctx) {
    const auto coeffs = params.value("coeffs", std::vector<double>{1.0});
    const double k = params.value("k", 1.0);
    const auto t_list = params.value("t_list", std::vector<double>{0.0, 0.5, 1.0});
    const int cells = params.value("cells", 400);

    Csv csv;
    csv.header = {"t", "max_abs_u", "top_mode_growth"};
    Csv plot;
    plot.header = {"x"};
    std::vector<BackwardSeriesResult> runs;
    for (double t : t_list) {
        runs.push_back(backward_heat_series(coeffs, k, t, cells));
        plot.header.push_back("u_t" + csv_num(t));
    }
    for (std::size_t i = 0; i < runs[0].x.size(); ++i) {
        std::vector<std::string> row = {csv_num(runs[0].x[i])};
        for (const auto& r : runs) row.push_back(csv_num(r.u[i]));
        plot.add(std::move(row));
    }
    for (std::size_t s = 0; s < runs.size(); ++s) {
        double umax = 0.0;
        for (double v : runs[s].u) umax = std::max(umax, std::fabs(v));
        csv.add({csv_num(t_list[s]), csv_num(umax),
                 csv_num(runs[s].mode_growth.back())});
    }
    ctx.write_csv("results.csv", csv);
    ctx.write_csv("plotdata.csv", plot);
    ctx.summary["modes"] = coeffs.size();
}

void run_illposed_family(const json& params, Ctx& ctx) {
    const int n_max = params.value("n_max", 64);
    const double t0 = params.value("t0", 0.5);
    const auto rows = illposed_family_report(n_max, t0);

    Csv csv;
    csv.header = {"n", "residual", "sup_t0", "one_over_n", "log_sup_at_minus_t0"};
    for (const auto& r : rows) {
        csv.add({std::to_string(r.n), csv_num(r.residual), csv_num(r.sup_t0),
                 csv_num(1.0 / double(r.n)), csv_num(r.log_sup_neg)});
    }
    ctx.write_csv("results.csv", csv);
    ctx.write_csv("plotdata.csv", csv);
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r.residual);
    ctx.summary["max_residual"] = worst;
    ctx.summary["t0"] = t0;
}

void run_godunov_scalar(const json& params, Ctx& ctx) {
    const double ul = params.value("ul", 1.0);
    const double ur = params.value("ur", 0.0);
    const int cells = params.value("cells", 200);
    const double cfl = params.value("cfl", 0.9);
    const double T = params.value("T", 1.0);
    const json dj = params.value("domain", json{{"lo", -1.0}, {"hi", 2.0}});
    const double lo = dj.value("lo", -1.0), hi = dj.value("hi", 2.0);

    std::vector<double> init(std::size_t(cells), 0.0);
    const double dx = (hi - lo) / cells;
    for (int i = 0; i < cells; ++i)
        init[std::size_t(i)] = (lo + (i + 0.5) * dx) < 0.0 ? ul : ur;

    const GodunovScalarResult res = godunov_scalar(init, lo, hi, cfl, T);

    Csv plot;
    plot.header = {"x", "u"};
    for (std::size_t i = 0; i < res.x.size(); ++i)
        plot.add({csv_num(res.x[i]), csv_num(res.u[i])});
    ctx.write_csv("plotdata.csv", plot);

    Csv csv;
    csv.header = {"quantity", "value"};
    const JumpVerdict v = scalar_speed({ul, ur});
    const double expected = v.is_unique() ? v.unique().c * T : 0.0;
    csv.add({"expected_position", csv_num(expected)});
    if (res.shock_position) csv.add({"shock_position", csv_num(*res.shock_position)});
    csv.add({"cell_width", csv_num(dx)});
    const double closure =
        std::fabs(res.mass_final - res.mass_initial + res.boundary_flux_integral);
    csv.add({"mass_closure", csv_num(closure)});
    csv.add({"steps", std::to_string(res.steps)});
    ctx.write_csv("results.csv", csv);
    if (res.shock_position)
        ctx.summary["position_error_cells"] =
            std::fabs(*res.shock_position - expected) / dx;
    ctx.summary["mass_closure"] = closure;
}

void run_godunov_system(const json& params, Ctx& ctx) {
    const SystemRiemannData data = data_from(
        params.contains("data") ? params.at("data") : default_system_datum());
    const int cells = params.value("cells", 400);
    const double cfl = params.value("cfl", 0.4);
    const double T = params.value("T", 1.0);
    const json dj = params.value("domain", json{{"lo", -2.0}, {"hi", 2.0}});
    const double lo = dj.value("lo", -2.0), hi = dj.value("hi", 2.0);
    const StatementLedger ledger =
        parse_ledger(params.value("ledger", std::string("(=,=,~)")));

    SolveOptions sopts;
    sopts.certify_residuals = false;
    const JumpVerdict verdict = solve_system(ledger, data, sopts);
    if (!verdict.is_unique())
        throw ExperimentError("initial jump is not a unique-ledger solution");
    const double c = verdict.unique().c;
    const double A = verdict.unique().A;

    std::vector<double> r0(std::size_t(cells), 0.0), u0(std::size_t(cells), 0.0),
        t0(std::size_t(cells), 0.0);
    const double dx = (hi - lo) / cells;
    for (int i = 0; i < cells; ++i) {
        const bool left = (lo + (i + 0.5) * dx) < 0.0;
        r0[std::size_t(i)] = left ? data.left.rho : data.right.rho;
        u0[std::size_t(i)] = left ? data.left.u : data.right.u;
        t0[std::size_t(i)] = left ? data.left.tau : data.right.tau;
    }

    const GodunovSystemResult res =
        godunov_system(r0, u0, t0, lo, hi, cfl, T, ledger, A);

    Csv plot;
    plot.header = {"x", "rho", "u", "tau"};
    for (std::size_t i = 0; i < res.x.size(); ++i) {
        plot.add({csv_num(res.x[i]), csv_num(res.rho[i]), csv_num(res.u[i]),
                  csv_num(res.tau[i])});
    }
    ctx.write_csv("plotdata.csv", plot);

    Csv csv;
    csv.header = {"quantity", "value"};
    csv.add({"c", csv_num(c)});
    csv.add({"A", csv_num(A)});
    csv.add({"expected_position", csv_num(c * T)});
    if (res.front_position) csv.add({"front_position", csv_num(*res.front_position)});
    csv.add({"cell_width", csv_num(dx)});
    const double closure =
        std::fabs(res.mass_final - res.mass_initial + res.boundary_flux_integral);
    csv.add({"mass_closure", csv_num(closure)});
    ctx.write_csv("results.csv", csv);
    if (res.front_position)
        ctx.summary["position_error_cells"] = std::fabs(*res.front_position - c * T) / dx;
    ctx.summary["mass_closure"] = closure;
    ctx.summary["c"] = c;
    ctx.summary["A"] = A;
}

// ---------------------------------------------------------------- registry

std::vector<KindDef> build_registry() {
    std::vector<KindDef> defs;

    auto add = [&](std::string kind, std::string desc, json defaults,
                   std::vector<ExperimentParam> params,
                   std::function<void(const json&, Ctx&)> fn) {
        KindDef d;
        d.info.kind = std::move(kind);
        d.info.description = std::move(desc);
        d.info.params = std::move(params);
        d.defaults = std::move(defaults);
        d.run = std::move(fn);
        defs.push_back(std::move(d));
    };

    add("eps-table",
        "classification table of the sample infinitesimals and their products with 1/eps",
        json{{"grid", {{"eps0", 0.5}, {"k_max", 40}}},
             {"quantities", json::array()}},
        {{"grid", "object", R"({"eps0":0.5,"k_max":40})", "dyadic sampling grid"},
         {"quantities", "array", "[]",
          "extra closed forms: {label, terms:[{coeff,power,log_power,exp_rate}]}"}},
        run_eps_table);

    add("moments",
        "profile moments int K^n K' against the universal value 1/(n+1)",
        json{{"presets", heaviside_preset_tags()}, {"n_max", 8}},
        {{"presets", "array", R"(["tanh","erf","smoothstep","skewed","overshoot"])",
          "Heaviside presets to sweep"},
         {"n_max", "integer", "8", "largest moment order"}},
        run_moments);

    add("association",
        "association/equality verdict for two expression trees over a bump battery",
        json{{"u", json::parse(R"({"node":"power","exponent":2,"arg":{"node":"heaviside","center":0.0,"profile":{"tag":"tanh"}}})")},
             {"v", json::parse(R"({"node":"heaviside","center":0.0,"profile":{"tag":"tanh"}})")},
             {"grid", {{"eps0", 0.1}, {"k_max", 9}}},
             {"battery", {{"count", 7}, {"widths", {0.5, 1.0, 2.0}}}},
             {"domain", {{"lo", -8.0}, {"hi", 8.0}}}},
        {{"u", "object", "H^2 (tanh)", "first expression tree"},
         {"v", "object", "H (tanh)", "second expression tree"},
         {"grid", "object", R"({"eps0":0.1,"k_max":9})", "pairing grid"},
         {"battery", "object", R"({"count":7,"widths":[0.5,1,2]})", "test-function battery"},
         {"domain", "object", R"({"lo":-8,"hi":8})", "open interval"}},
        run_association);

    add("sqrt-delta",
        "square root of a Dirac profile: vanishing field with non-vanishing energy",
        json{{"psi", "parabolic"},
             {"phi", {{"center", 0.0}, {"width", 1.0}}},
             {"grid", {{"eps0", 0.1}, {"k_max", 9}}}},
        {{"psi", "string", "\"parabolic\"", "Dirac preset (must be nonnegative)"},
         {"phi", "object", R"({"center":0,"width":1})", "test function"},
         {"grid", "object", R"({"eps0":0.1,"k_max":9})", "pairing grid"}},
        run_sqrt_delta);

    add("riemann-scalar",
        "scalar jump speeds: the plain statement vs the u-multiplied statement",
        json{{"ul", 0.0}, {"ur", 1.0}, {"profile", "tanh"},
             {"grid", {{"eps0", 0.1}, {"k_max", 8}}}},
        {{"ul", "number", "0", "left state"},
         {"ur", "number", "1", "right state"},
         {"profile", "string", "\"tanh\"", "Heaviside preset"},
         {"grid", "object", R"({"eps0":0.1,"k_max":8})", "pairing grid"}},
        run_riemann_scalar);

    add("riemann-system",
        "jump verdicts for the 3x3 system under a statement ledger",
        json{{"ledger", "(=,=,~)"}, {"data", default_system_datum()},
             {"profile", "tanh"}, {"certify", true}},
        {{"ledger", "string", "\"(=,=,~)\"", "per-equation statement choice"},
         {"data", "object", "forward-constructed datum", "left/right states"},
         {"profile", "string", "\"tanh\"", "velocity microstructure"},
         {"certify", "boolean", "true", "run the residual certification sweeps"}},
        run_riemann_system);

    add("viscous-oracle",
        "traveling profile of the viscous system; cross-validates the unique ledger",
        json{{"eps1", 1e-3}, {"eps2", 1e-3}, {"eps3", 1.0},
             {"data", default_system_datum()}, {"z_half_width", 25.0}, {"nodes", 4001}},
        {{"eps1", "number", "1e-3", "density viscosity"},
         {"eps2", "number", "1e-3", "momentum viscosity"},
         {"eps3", "number", "1", "stress viscosity (profile scale)"},
         {"data", "object", "forward-constructed datum", "left/right states"},
         {"z_half_width", "number", "25", "half-width of the collocation window"},
         {"nodes", "integer", "4001", "collocation nodes"}},
        run_viscous_oracle);

    add("prey-predator",
        "delta-collision of two populations; prey mass after crossing vs the closed formula",
        json{{"alpha1", 2.0}, {"alpha2", 2.0}, {"psi1", "parabolic"},
             {"psi2", "parabolic"},
             {"eps_list", {0.2, 0.1, 0.05, 0.025}}, {"T", 4.0}},
        {{"alpha1", "number", "2", "predator mass"},
         {"alpha2", "number", "2", "prey mass"},
         {"psi1", "string", "\"parabolic\"", "predator Dirac preset"},
         {"psi2", "string", "\"parabolic\"", "prey Dirac preset"},
         {"eps_list", "array", "[0.2,0.1,0.05,0.025]", "regularization sweep"},
         {"T", "number", "4", "final time (> 2)"}},
        run_prey_predator);

    add("heat-forward",
        "forward semilinear heat equation with zero boundary values",
        json{{"k", 1.0}, {"absorption", true},
             {"initial", {{"kind", "sine"}, {"coeffs", {1.0, 0.0, 0.3}}}},
             {"cells", 400}, {"T", 0.1}, {"snapshots", {0.1}}},
        {{"k", "number", "1", "diffusivity"},
         {"absorption", "boolean", "true", "include the cubic absorption"},
         {"initial", "object", "sine series", "initial data (sine coeffs or tree)"},
         {"cells", "integer", "400", "spatial cells"},
         {"T", "number", "0.1", "final time"},
         {"snapshots", "array", "[0.1]", "snapshot times"}},
        run_heat_forward);

    add("heat-backward-series",
        "explicit separation-of-variables solution of the backward problem",
        json{{"coeffs", {1.0}}, {"k", 1.0}, {"t_list", {0.0, 0.5, 1.0}},
             {"cells", 400}},
        {{"coeffs", "array", "[1]", "sine coefficients of the data"},
         {"k", "number", "1", "diffusivity"},
         {"t_list", "array", "[0,0.5,1]", "evaluation times"},
         {"cells", "integer", "400", "plot resolution"}},
        run_heat_backward);

    add("illposed-family",
        "the classical family exhibiting backward blow-up from vanishing data",
        json{{"n_max", 64}, {"t0", 0.5}},
        {{"n_max", "integer", "64", "largest mode (swept in powers of 2)"},
         {"t0", "number", "0.5", "backward time for the blow-up norm"}},
        run_illposed_family);

    add("godunov-scalar",
        "first-order scheme for the quadratic-flux law with exact interface solutions",
        json{{"ul", 1.0}, {"ur", 0.0}, {"cells", 200}, {"cfl", 0.9}, {"T", 1.0},
             {"domain", {{"lo", -1.0}, {"hi", 2.0}}}},
        {{"ul", "number", "1", "left state"},
         {"ur", "number", "0", "right state"},
         {"cells", "integer", "200", "cells"},
         {"cfl", "number", "0.9", "CFL number (<= 0.9)"},
         {"T", "number", "1", "final time"},
         {"domain", "object", R"({"lo":-1,"hi":2})", "spatial interval"}},
        run_godunov_scalar);

    add("godunov-system",
        "split scheme for the 3x3 system driven by the unique-ledger verdict",
        json{{"data", default_system_datum()}, {"cells", 400}, {"cfl", 0.4},
             {"T", 1.0}, {"domain", {{"lo", -2.0}, {"hi", 2.0}}},
             {"ledger", "(=,=,~)"}},
        {{"data", "object", "forward-constructed datum", "two-state initial jump"},
         {"cells", "integer", "400", "cells"},
         {"cfl", "number", "0.4", "CFL number (<= 0.5)"},
         {"T", "number", "1", "final time"},
         {"domain", "object", R"({"lo":-2,"hi":2})", "spatial interval"},
         {"ledger", "string", "\"(=,=,~)\"", "must be the unique ledger"}},
        run_godunov_system);

    return defs;
}

const std::vector<KindDef>& registry() {
    static const std::vector<KindDef> defs = build_registry();
    return defs;
}

const KindDef& find_kind(const std::string& kind) {
    for (const auto& d : registry()) {
        if (d.info.kind == kind) return d;
    }
    throw UnknownExperiment("unknown experiment kind: " + kind);
}

bool type_matches(const std::string& type, const json& v) {
    if (type == "number") return v.is_number();
    if (type == "integer") return v.is_number_integer();
    if (type == "boolean") return v.is_boolean();
    if (type == "string") return v.is_string();
    if (type == "array") return v.is_array();
    if (type == "object") return v.is_object();
    return false;
}

void apply_override(json& config, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("--override", "expected key=value: " + assignment);
    const std::string path = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (...) {
        parsed = value;  // plain string
    }
    json* cur = &config;
    std::istringstream ss(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    if (parts.empty()) throw ConfigError("--override", "empty key path");
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!cur->is_object()) throw ConfigError(parts[i], "not an object");
        cur = &(*cur)[parts[i]];
    }
    (*cur)[parts.back()] = parsed;
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_catalog() {
    static const std::vector<ExperimentInfo> infos = [] {
        std::vector<ExperimentInfo> v;
        for (const auto& d : registry()) v.push_back(d.info);
        return v;
    }();
    return infos;
}

std::string describe_experiment(const std::string& kind) {
    const KindDef& def = find_kind(kind);
    std::ostringstream os;
    os << def.info.kind << "\n  " << def.info.description << "\n  parameters:\n";
    for (const auto& p : def.info.params) {
        os << "    " << p.name << " (" << p.type << ", default " << p.default_repr
           << "): " << p.description << "\n";
    }
    return os.str();
}

RunArtifacts run_experiment_json(const std::string& config_text,
                                 const std::string& out_override,
                                 const std::vector<std::string>& overrides) {
    json config;
    try {
        config = json::parse(config_text);
    } catch (const std::exception& e) {
        throw ConfigError("<config>", std::string("invalid JSON: ") + e.what());
    }
    // Accept a previously written manifest as a config.
    if (config.contains("schema_version") && config.contains("config"))
        config = config.at("config");

    if (!config.is_object()) throw ConfigError("<config>", "expected an object");
    for (const auto& [key, _] : config.items()) {
        if (key != "kind" && key != "out" && key != "deterministic" && key != "params")
            throw ConfigError(key, "unknown top-level field");
    }
    if (!config.contains("kind") || !config.at("kind").is_string())
        throw ConfigError("kind", "missing experiment kind");

    for (const auto& ov : overrides) apply_override(config, ov);

    const std::string kind = config.at("kind").get<std::string>();
    const KindDef& def = find_kind(kind);

    json params = def.defaults;
    if (config.contains("params")) {
        const json& given = config.at("params");
        if (!given.is_object()) throw ConfigError("params", "expected an object");
        for (const auto& [key, value] : given.items()) {
            const ExperimentParam* spec = nullptr;
            for (const auto& p : def.info.params) {
                if (p.name == key) spec = &p;
            }
            if (!spec) throw ConfigError("params." + key, "unknown field");
            if (!type_matches(spec->type, value))
                throw ConfigError("params." + key, "expected " + spec->type);
            params[key] = value;
        }
    }

    std::string out_dir;
    if (!out_override.empty()) {
        out_dir = out_override;
    } else if (config.contains("out")) {
        if (!config.at("out").is_string()) throw ConfigError("out", "expected a string");
        out_dir = config.at("out").get<std::string>();
    } else if (const char* root = std::getenv("GFLAB_OUT_ROOT")) {
        out_dir = std::string(root) + "/" + kind;
    } else {
        out_dir = "runs/" + kind;
    }

    Ctx ctx;
    ctx.out_dir = out_dir;
    std::filesystem::create_directories(out_dir);

    try {
        def.run(params, ctx);
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ExperimentError(std::string(e.what()));
    }

    ojson manifest;
    manifest["schema_version"] = 1;
    manifest["kind"] = kind;
    manifest["deterministic"] = config.value("deterministic", true);
    ojson cfg;
    cfg["kind"] = kind;
    cfg["out"] = out_dir;
    cfg["deterministic"] = config.value("deterministic", true);
    cfg["params"] = ojson::parse(params.dump());
    manifest["config"] = cfg;
    manifest["summary"] = ctx.summary;
    manifest["artifacts"] = ctx.files;
    write_file_atomic(out_dir + "/manifest.json", manifest.dump(2) + "\n");
    ctx.files.push_back("manifest.json");

    RunArtifacts arts;
    arts.out_dir = out_dir;
    arts.files = ctx.files;
    return arts;
}

}  // namespace gflab
