#pragma once

#include "tscheme/config.hpp"
#include "tscheme/evaluator.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace tscheme {

struct ExperimentInfo {
    std::string id;
    std::string reproduces;
};

// Sorted by id.
std::vector<ExperimentInfo> list_experiments();
bool is_experiment(std::string_view id);

// Typed defaults of every key the experiment accepts; throws UnknownExperiment.
Config default_config(std::string_view id);

// Generate, train, evaluate and assemble the report; nothing is written to disk.
Report run_experiment(std::string_view id, const Config& config);

}
