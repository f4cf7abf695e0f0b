#pragma once

#include <string>
#include <vector>

namespace gflab {

struct ExperimentParam {
    std::string name;
    std::string type;          // number | integer | boolean | string | array | object
    std::string default_repr;  // JSON text of the default
    std::string description;
};

struct ExperimentInfo {
    std::string kind;
    std::string description;
    std::vector<ExperimentParam> params;
};

/// The experiment registry, in a fixed order.
const std::vector<ExperimentInfo>& experiment_catalog();

/// Human-readable schema with defaults. Throws UnknownExperiment.
std::string describe_experiment(const std::string& kind);

struct RunArtifacts {
    std::string out_dir;
    std::vector<std::string> files;  // relative to out_dir
};

/// Validate, resolve defaults, execute, and write manifest + CSVs.
/// `config_text` may be a config or a previously emitted manifest.
/// `out_override` (when nonempty) wins over the config's own out field;
/// `overrides` are dot-path assignments like "params.alpha1=3".
RunArtifacts run_experiment_json(const std::string& config_text,
                                 const std::string& out_override = "",
                                 const std::vector<std::string>& overrides = {});

}  // namespace gflab
