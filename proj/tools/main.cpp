#include "tscheme/errors.hpp"
#include "tscheme/registry.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

enum ExitCode : int { Ok = 0, ConfigFailure = 2, TrainingFailure = 3, IoFailure = 4 };

// Extra arguments of the form --key value or --key=value override config keys of the same name.
void apply_key_flags(tscheme::Config& config, const std::vector<std::string>& extras) {
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const std::string& a = extras[i];
        if (a.rfind("--", 0) != 0 || a.size() < 3) {
            throw tscheme::ConfigError("unexpected argument '" + a + "'");
        }
        const std::string body = a.substr(2);
        const auto eq = body.find('=');
        if (eq != std::string::npos) {
            config.apply_assignment(body);
        } else if (i + 1 < extras.size()) {
            config.set_text(body, extras[++i]);
        } else {
            throw tscheme::ConfigError("missing value for '" + a + "'");
        }
    }
}

int run(const std::string& id, std::optional<std::uint64_t> seed, const std::filesystem::path& out,
        const std::optional<std::filesystem::path>& config_file, const std::vector<std::string>& assignments,
        const std::vector<std::string>& extras) {
    tscheme::Config config = tscheme::default_config(id);
    if (config_file) {
        config.merge_json_file(*config_file);
    }
    apply_key_flags(config, extras);
    for (const std::string& a : assignments) {
        config.apply_assignment(a);
    }
    if (seed) {
        config.set("seed", static_cast<std::int64_t>(*seed));
    }
    const tscheme::Report report = tscheme::run_experiment(id, config);
    for (const auto& p : tscheme::emit_report(report, out)) {
        std::cout << p.string() << '\n';
    }
    return Ok;
}

}

int main(int argc, char** argv) {
    CLI::App app{"Reproduce the trained time-stepping scheme experiments"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "List experiment ids and what they reproduce");

    auto* run_cmd = app.add_subcommand("run", "Run one experiment and write its CSV files and manifest");
    std::string id;
    std::optional<std::uint64_t> seed;
    std::filesystem::path out = ".";
    std::optional<std::filesystem::path> config_file;
    std::vector<std::string> assignments;
    run_cmd->add_option("id", id, "Experiment id")->required();
    run_cmd->add_option("--seed", seed, "Random seed");
    run_cmd->add_option("--out", out, "Output directory");
    run_cmd->add_option("--config", config_file, "Flat JSON config file");
    run_cmd->add_option("--set", assignments, "Override a config key (key=value)")->take_all();
    run_cmd->allow_extras();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : ConfigFailure;
    }

    if (list->parsed()) {
        for (const auto& e : tscheme::list_experiments()) {
            std::cout << e.id << "  " << e.reproduces << '\n';
        }
        return Ok;
    }

    try {
        return run(id, seed, out, config_file, assignments, run_cmd->remaining());
    } catch (const tscheme::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return ConfigFailure;
    } catch (const tscheme::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return TrainingFailure;
    } catch (const tscheme::FileError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return IoFailure;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return IoFailure;
    }
}
