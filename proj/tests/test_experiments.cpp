#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gflab/errors.hpp"
#include "gflab/experiments.hpp"
#include "gflab/io.hpp"

using namespace gflab;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("gflab_test_" + std::to_string(std::rand()) +
                std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

int count_lines(const std::string& text) {
    int n = 0;
    for (char c : text) n += c == '\n';
    return n;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("the catalog lists exactly the thirteen kinds") {
    const auto& cat = experiment_catalog();
    REQUIRE(cat.size() == 13);
    const std::vector<std::string> expected = {
        "eps-table",      "moments",        "association",
        "sqrt-delta",     "riemann-scalar", "riemann-system",
        "viscous-oracle", "prey-predator",  "heat-forward",
        "heat-backward-series", "illposed-family", "godunov-scalar",
        "godunov-system"};
    for (std::size_t i = 0; i < cat.size(); ++i) CHECK(cat[i].kind == expected[i]);
}

TEST_CASE("describe prints the schema with defaults") {
    const std::string text = describe_experiment("prey-predator");
    CHECK(text.find("alpha1") != std::string::npos);
    CHECK(text.find("eps_list") != std::string::npos);
    CHECK(text.find("default") != std::string::npos);
    CHECK_THROWS_AS(describe_experiment("no-such-kind"), UnknownExperiment);
}

TEST_CASE("config validation rejects unknown and mistyped fields") {
    TempDir tmp;
    CHECK_THROWS_AS(run_experiment_json(R"({"kind":"moments","oops":1})", tmp.str()),
                    ConfigError);
    CHECK_THROWS_AS(
        run_experiment_json(R"({"kind":"moments","params":{"weird":1}})", tmp.str()),
        ConfigError);
    CHECK_THROWS_AS(
        run_experiment_json(R"({"kind":"moments","params":{"n_max":"three"}})",
                            tmp.str()),
        ConfigError);
    CHECK_THROWS_AS(run_experiment_json(R"({"kind":"nope"})", tmp.str()),
                    UnknownExperiment);
    CHECK_THROWS_AS(run_experiment_json("not json", tmp.str()), ConfigError);
    try {
        run_experiment_json(R"({"kind":"moments","params":{"weird":1}})", tmp.str());
    } catch (const ConfigError& e) {
        CHECK(e.field_path() == "params.weird");
    }
}

TEST_CASE("a run writes results, plot data, and a manifest") {
    TempDir tmp;
    const auto arts = run_experiment_json(
        R"({"kind":"moments","params":{"presets":["tanh"],"n_max":2}})", tmp.str());
    CHECK(arts.out_dir == tmp.str());
    for (const auto& f : {"results.csv", "plotdata.csv", "manifest.json"}) {
        CAPTURE(f);
        CHECK(fs::exists(fs::path(arts.out_dir) / f));
    }
    const std::string results = read_file(tmp.str() + "/results.csv");
    CHECK(count_lines(results) == 4);  // header + n in {0,1,2}
    CHECK(results.find("tanh") != std::string::npos);
    CHECK(results.find('\r') == std::string::npos);  // LF endings
}

TEST_CASE("identical configs produce byte-identical outputs") {
    TempDir a, b;
    const std::string cfg =
        R"({"kind":"sqrt-delta","params":{"grid":{"eps0":0.1,"k_max":6}}})";
    run_experiment_json(cfg, a.str());
    run_experiment_json(cfg, b.str());
    CHECK(read_file(a.str() + "/results.csv") == read_file(b.str() + "/results.csv"));
    CHECK(read_file(a.str() + "/plotdata.csv") == read_file(b.str() + "/plotdata.csv"));
}

TEST_CASE("a manifest reproduces its run") {
    TempDir a, b;
    const std::string cfg =
        R"({"kind":"riemann-scalar","params":{"ul":0.0,"ur":1.0}})";
    run_experiment_json(cfg, a.str());
    const std::string manifest = read_file(a.str() + "/manifest.json");
    run_experiment_json(manifest, b.str());
    CHECK(read_file(a.str() + "/results.csv") == read_file(b.str() + "/results.csv"));
    CHECK(read_file(a.str() + "/verdict.json") == read_file(b.str() + "/verdict.json"));
}

TEST_CASE("output directory precedence: flag, config, environment") {
    TempDir base;
    const std::string cfg_out = base.str() + "/from_config";
    const std::string via_config = std::string(R"({"kind":"moments","out":")") +
                                   cfg_out +
                                   R"(","params":{"presets":["tanh"],"n_max":1}})";
    auto arts = run_experiment_json(via_config);
    CHECK(arts.out_dir == cfg_out);
    CHECK(fs::exists(fs::path(cfg_out) / "results.csv"));

    const std::string flag_out = base.str() + "/from_flag";
    arts = run_experiment_json(via_config, flag_out);
    CHECK(arts.out_dir == flag_out);

    setenv("GFLAB_OUT_ROOT", (base.str() + "/root").c_str(), 1);
    arts = run_experiment_json(
        R"({"kind":"moments","params":{"presets":["tanh"],"n_max":1}})");
    unsetenv("GFLAB_OUT_ROOT");
    CHECK(arts.out_dir == base.str() + "/root/moments");
    CHECK(fs::exists(fs::path(arts.out_dir) / "manifest.json"));
}

TEST_CASE("dot-path overrides reach into the params") {
    TempDir tmp;
    run_experiment_json(R"({"kind":"moments","params":{"presets":["tanh"]}})",
                        tmp.str(), {"params.n_max=2"});
    CHECK(count_lines(read_file(tmp.str() + "/results.csv")) == 4);
}

TEST_CASE("association runs from serialized trees") {
    TempDir tmp;
    const std::string cfg = R"({
      "kind": "association",
      "params": {
        "u": {"node":"power","exponent":3,
               "arg":{"node":"heaviside","center":0.0,"profile":{"tag":"erf"}}},
        "v": {"node":"heaviside","center":0.0,"profile":{"tag":"erf"}},
        "grid": {"eps0":0.1,"k_max":8}
      }})";
    run_experiment_json(cfg, tmp.str());
    const std::string verdict = read_file(tmp.str() + "/verdict.json");
    CHECK(verdict.find("associated_not_equal") != std::string::npos);
}

TEST_CASE("the eps-table reproduces the product classification") {
    TempDir tmp;
    run_experiment_json(R"({"kind":"eps-table"})", tmp.str());
    const std::string results = read_file(tmp.str() + "/results.csv");
    std::istringstream lines(results);
    std::string line;
    int distinct_false = 0, product_associated = 0, product_rows = 0;
    while (std::getline(lines, line)) {
        if (line.find("eq_in_EN") != std::string::npos &&
            line.rfind(",false") == line.size() - 6)
            ++distinct_false;
        if (line.find("* 1/eps,classify") != std::string::npos) {
            ++product_rows;
            // associated_to_zero column is the 5th field
            std::istringstream cells(line);
            std::string cell;
            for (int i = 0; i < 5; ++i) std::getline(cells, cell, ',');
            if (cell == "yes") ++product_associated;
        }
    }
    CHECK(distinct_false == 6);     // all four quantities pairwise distinct
    CHECK(product_rows == 4);
    CHECK(product_associated == 1);  // exactly eps^2 * 1/eps vanishes
}

TEST_CASE("custom closed forms are expressible in the eps-table config") {
    TempDir tmp;
    run_experiment_json(R"({"kind":"eps-table","params":{"quantities":[
        {"label":"eps*log","terms":[{"coeff":1.0,"power":1.0,"log_power":1}]},
        {"label":"tiny","terms":[{"coeff":2.0,"exp_rate":0.5}]}]}})",
                        tmp.str());
    const std::string results = read_file(tmp.str() + "/results.csv");
    CHECK(results.find("eps*log,classify,yes,no,yes,1,exact") != std::string::npos);
    CHECK(results.find("tiny,classify,yes,yes,yes,,exact") != std::string::npos);
}

TEST_CASE("association emits the long-format pairing sweep") {
    TempDir tmp;
    run_experiment_json(R"({"kind":"association","params":{"grid":{"eps0":0.1,"k_max":4}}})",
                        tmp.str());
    const std::string sweep = read_file(tmp.str() + "/pairings.csv");
    CHECK(sweep.rfind("eps,phi_id,value", 0) == 0);
    CHECK(count_lines(sweep) == 1 + 7 * 5);
}

TEST_CASE("heat-forward accepts expression-tree initial data") {
    TempDir tmp;
    run_experiment_json(R"({"kind":"heat-forward","params":{
        "initial":{"kind":"tree","eps":0.1,
                    "tree":{"node":"dirac","center":1.5,"profile":{"tag":"parabolic"}}},
        "cells":200,"T":0.02,"snapshots":[0.02]}})",
                        tmp.str());
    CHECK(fs::exists(fs::path(tmp.str()) / "snapshots.csv"));
    const std::string results = read_file(tmp.str() + "/results.csv");
    CHECK(results.find("final_max_abs") != std::string::npos);
}

TEST_CASE("experiment errors are wrapped with their module message") {
    TempDir tmp;
    try {
        run_experiment_json(
            R"({"kind":"heat-backward-series","params":{"coeffs":[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1],"t_list":[1.0]}})",
            tmp.str());
        CHECK(false);
    } catch (const ExperimentError& e) {
        CHECK(std::string(e.what()).find("mode") != std::string::npos);
    }
}

}  // TEST_SUITE
