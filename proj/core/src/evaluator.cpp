#include "tscheme/evaluator.hpp"

#include "tscheme/errors.hpp"
#include "tscheme/trainer.hpp"
#include "tscheme/version.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

namespace tscheme {

TestErrors summarize(std::vector<double> per_sample) {
    TestErrors t;
    t.per_sample = std::move(per_sample);
    if (!t.per_sample.empty()) {
        t.mean = std::accumulate(t.per_sample.begin(), t.per_sample.end(), 0.0) /
                 static_cast<double>(t.per_sample.size());
    }
    return t;
}

TestErrors test_error(const std::vector<std::vector<double>>& computed,
                      const std::vector<std::vector<double>>& reference, int p, double scale) {
    if (computed.size() != reference.size()) {
        throw InvalidArgument("test_error: " + std::to_string(computed.size()) + " outputs but " +
                              std::to_string(reference.size()) + " references");
    }
    std::vector<double> e(computed.size());
    for (std::size_t i = 0; i < computed.size(); ++i) {
        if (reference[i].empty()) {
            throw InvalidArgument("test_error: missing reference for sample " + std::to_string(i));
        }
        e[i] = loss_lp(computed[i], reference[i], p, scale);
    }
    return summarize(std::move(e));
}

TestErrors test_error(const SampleRunner& run, const std::vector<std::vector<double>>& reference, int p,
                      double scale) {
    std::vector<double> e(reference.size());
    for (std::size_t i = 0; i < reference.size(); ++i) {
        if (reference[i].empty()) {
            throw InvalidArgument("test_error: missing reference for sample " + std::to_string(i));
        }
        e[i] = loss_lp(run(i), reference[i], p, scale);
    }
    return summarize(std::move(e));
}

double gain(double std_mean, double trained_mean) {
    if (trained_mean < 0.0 || std_mean < 0.0) {
        throw InvalidArgument("gain: errors must be non-negative");
    }
    if (trained_mean == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return std_mean / trained_mean;
}

double observed_order(std::span<const double> errors, std::span<const int> resolutions) {
    if (errors.size() != resolutions.size() || errors.size() < 3) {
        throw InvalidArgument("observed_order: need at least three matching errors and resolutions");
    }
    const std::size_t m = errors.size();
    std::vector<double> x(m);
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(errors[i] > 0.0) || resolutions[i] <= 0) {
            throw InvalidArgument("observed_order: errors and resolutions must be positive");
        }
        x[i] = -std::log(static_cast<double>(resolutions[i]));
        y[i] = std::log(errors[i]);
    }
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(m);
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(m);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) {
        throw InvalidArgument("observed_order: resolutions must differ");
    }
    return sxy / sxx;
}

SpeedupResult speedup(double trained_error, const ResolutionError& trained,
                      std::span<const ResolutionError> standard, SpeedupMode mode) {
    if (standard.empty()) {
        throw InvalidArgument("speedup: no standard resolutions");
    }
    if (!(trained_error >= 0.0) || trained.work() <= 0.0) {
        throw InvalidArgument("speedup: trained error and work must be valid");
    }
    SpeedupResult r;
    if (mode == SpeedupMode::Search) {
        for (const ResolutionError& s : standard) {
            if (s.error <= trained_error) {
                r.speedup = s.work() / trained.work();
                r.matched_cells = s.n_cells;
                return r;
            }
        }
        throw UnmatchedError("speedup: no standard resolution reaches the trained error");
    }
    std::vector<double> errors;
    std::vector<int> cells;
    for (const ResolutionError& s : standard) {
        errors.push_back(s.error);
        cells.push_back(s.n_cells);
    }
    r.order = observed_order(errors, cells);
    if (!(r.order > 0.0)) {
        throw UnmatchedError("speedup: standard scheme does not converge, no resolution can be extrapolated");
    }
    if (trained_error == 0.0) {
        r.speedup = std::numeric_limits<double>::infinity();
        r.matched_cells = std::numeric_limits<double>::infinity();
        return r;
    }
    const ResolutionError& base = standard.front();
    const double ratio = std::pow(base.error / trained_error, 1.0 / r.order);
    r.matched_cells = base.n_cells * ratio;
    r.speedup = base.work() * ratio * ratio / trained.work();
    return r;
}

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void Table::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size()) {
        throw InvalidArgument("Table::add_row: expected " + std::to_string(columns.size()) + " fields, got " +
                              std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t k = 0; k < fields.size(); ++k) {
            if (k > 0) {
                out += ',';
            }
            out += fields[k];
        }
        out += '\n';
    };
    line(columns);
    for (const auto& r : rows) {
        line(r);
    }
    return out;
}

std::string manifest_json(const Report& report, std::span<const std::string> files) {
    using nlohmann::json;
    auto number = [](double v) -> json {
        if (std::isfinite(v)) {
            return v;
        }
        return format_number(v);
    };
    json j;
    j["schema"] = "tscheme.manifest/1";
    j["experiment"] = report.id;
    j["seed"] = report.seed;
    j["code_version"] = version_string;
    j["config"] = json::parse(report.config.keys().empty() ? "{}" : report.config.to_json());
    json metrics = json::object();
    for (const auto& [k, v] : report.metrics) {
        metrics[k] = number(v);
    }
    j["metrics"] = metrics;
    json errors = json::object();
    for (const auto& [k, v] : report.per_sample_errors) {
        json a = json::array();
        for (double e : v) {
            a.push_back(number(e));
        }
        errors[k] = a;
    }
    j["per_sample_errors"] = errors;
    json wall = json::object();
    for (const auto& [k, v] : report.wall_seconds) {
        wall[k] = v;
    }
    j["wall_seconds"] = wall;
    j["files"] = std::vector<std::string>(files.begin(), files.end());
    return j.dump(2) + "\n";
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw FileError("cannot open for writing", path);
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) {
        throw FileError("write failed", path);
    }
}

}

std::vector<std::filesystem::path> emit_report(const Report& report, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) {
        throw FileError("cannot create output directory", out_dir);
    }
    std::vector<std::pair<std::string, std::string>> outputs;
    outputs.emplace_back(report.id + ".csv", report.table.to_csv());
    for (const auto& [name, table] : report.extra_tables) {
        outputs.emplace_back(report.id + "_" + name + ".csv", table.to_csv());
    }
    for (const auto& [name, text] : report.attachments) {
        outputs.emplace_back(name, text);
    }
    std::vector<std::string> names;
    for (const auto& [name, text] : outputs) {
        names.push_back(name);
    }
    const std::string manifest_name = report.id + "_manifest.json";
    outputs.emplace_back(manifest_name, manifest_json(report, names));

    std::vector<std::filesystem::path> written;
    for (const auto& [name, text] : outputs) {
        const std::filesystem::path p = out_dir / name;
        write_file(p, text);
        written.push_back(p);
    }
    return written;
}

}
