#pragma once

#include "tscheme/config.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace tscheme {

struct TestErrors {
    std::vector<double> per_sample;
    double mean = 0.0;
};

TestErrors summarize(std::vector<double> per_sample);

// Per-sample scale * sum |computed - reference|^p over the flattened output levels.
TestErrors test_error(const std::vector<std::vector<double>>& computed,
                      const std::vector<std::vector<double>>& reference, int p, double scale);

using SampleRunner = std::function<std::vector<double>(std::size_t)>;
TestErrors test_error(const SampleRunner& run, const std::vector<std::vector<double>>& reference, int p,
                      double scale);

// std_mean / trained_mean; +inf when the trained mean is zero.
double gain(double std_mean, double trained_mean);

// Least-squares slope of log(error) against log(dx), dx = 1 / n.
double observed_order(std::span<const double> errors, std::span<const int> resolutions);

struct ResolutionError {
    int n_cells = 0;
    long n_steps = 0;
    double error = 0.0;
    double wall_seconds = 0.0;

    double work() const noexcept { return static_cast<double>(n_cells) * static_cast<double>(n_steps); }
};

enum class SpeedupMode {
    Extrapolate,  // resolution matching the trained error from the observed order; steps grow with the cells
    Search        // first standard resolution whose error does not exceed the trained error
};

struct SpeedupResult {
    double speedup = 0.0;
    double matched_cells = 0.0;
    double order = 0.0;
};

// `standard` holds the standard scheme at increasing resolutions, the first entry on the trained grid.
SpeedupResult speedup(double trained_error, const ResolutionError& trained,
                      std::span<const ResolutionError> standard, SpeedupMode mode);

// Shortest decimal text that reads back to the same double; "inf", "-inf", "nan" otherwise.
std::string format_number(double v);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    std::string to_csv() const;
};

struct Report {
    std::string id;
    std::uint64_t seed = 1;
    Config config;
    Table table;
    std::map<std::string, Table> extra_tables;      // written as <id>_<name>.csv
    std::map<std::string, double> metrics;
    std::map<std::string, std::vector<double>> per_sample_errors;
    std::map<std::string, std::string> attachments;  // file name -> contents
    std::map<std::string, double> wall_seconds;
};

std::string manifest_json(const Report& report, std::span<const std::string> files);

// Writes <id>.csv, the extra tables, the attachments and <id>_manifest.json into out_dir.
std::vector<std::filesystem::path> emit_report(const Report& report, const std::filesystem::path& out_dir);

}
