#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "gflab/errors.hpp"
#include "gflab/experiments.hpp"
#include "gflab/io.hpp"

namespace {

int fail(const std::string& kind, const std::string& message, int code) {
    nlohmann::ordered_json err;
    err["error"] = {{"kind", kind}, {"message", message}};
    std::cerr << err.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gflab: experiment runner for epsilon-parameterized generalized functions"};
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list", "list experiment kinds");

    std::string describe_kind;
    auto* describe_cmd = app.add_subcommand("describe", "print an experiment's schema");
    describe_cmd->add_option("kind", describe_kind, "experiment kind")->required();

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> overrides;
    auto* run_cmd = app.add_subcommand("run", "run an experiment from a JSON config");
    run_cmd->add_option("config", config_path, "config (or manifest) JSON file")
        ->required();
    run_cmd->add_option("--out", out_dir, "output directory (wins over the config)");
    run_cmd->add_option("--override", overrides,
                        "dot-path override, e.g. params.alpha1=3");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_cmd->parsed()) {
            for (const auto& info : gflab::experiment_catalog())
                std::cout << info.kind << "\n";
            return 0;
        }
        if (describe_cmd->parsed()) {
            std::cout << gflab::describe_experiment(describe_kind);
            return 0;
        }
        if (run_cmd->parsed()) {
            const std::string config = gflab::read_file(config_path);
            const gflab::RunArtifacts arts =
                gflab::run_experiment_json(config, out_dir, overrides);
            nlohmann::ordered_json ok;
            ok["out_dir"] = arts.out_dir;
            ok["artifacts"] = arts.files;
            std::cout << ok.dump(2) << "\n";
            return 0;
        }
    } catch (const gflab::UnknownExperiment& e) {
        return fail("unknown_experiment", e.what(), 4);
    } catch (const gflab::ConfigError& e) {
        return fail("config_error", e.what(), 2);
    } catch (const gflab::ExperimentError& e) {
        return fail("experiment_error", e.what(), 3);
    } catch (const gflab::Error& e) {
        return fail("error", e.what(), 3);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 5);
    }
    return 0;
}
