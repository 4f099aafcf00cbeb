#include "tscheme/errors.hpp"
#include "tscheme/evaluator.hpp"
#include "tscheme/registry.hpp"

#include <json.hpp>
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

using namespace tscheme;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("tscheme_unit_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

// Standard errors C / n at resolutions 10, 20, 40, 80 with CFL-limited steps proportional to n.
std::vector<ResolutionError> power_law(double c) {
    std::vector<ResolutionError> out;
    for (int n : {10, 20, 40, 80}) {
        out.push_back({n, n / 5, c / n, 0.0});
    }
    return out;
}

}

TEST_CASE("test errors") {
    const TestErrors e = test_error({{3.0, 4.0}}, {{0.0, 0.0}}, 2, 1.0);
    CHECK(e.per_sample == std::vector<double>{25.0});
    CHECK(e.mean == 25.0);
    const TestErrors z = test_error({{1.0, 2.0}, {3.0, 4.0}}, {{1.0, 2.0}, {3.0, 4.0}}, 1, 0.1);
    CHECK(z.mean == 0.0);
    CHECK_THROWS_AS(test_error({{1.0}, {2.0}}, {{1.0}}, 1, 1.0), InvalidArgument);
    const TestErrors r = test_error([](std::size_t i) { return std::vector<double>{static_cast<double>(i)}; },
                                    {{0.0}, {0.0}, {0.0}}, 1, 1.0);
    CHECK(r.mean == doctest::Approx(1.0));
}

TEST_CASE("gain") {
    CHECK(gain(0.3, 0.3) == 1.0);
    CHECK(gain(2.0, 0.5) == 4.0);
    CHECK(gain(7.0 * 2.0, 7.0 * 0.5) == doctest::Approx(gain(2.0, 0.5)).epsilon(1e-15));
    CHECK(std::isinf(gain(1.0, 0.0)));
}

TEST_CASE("observed order") {
    const int res[] = {20, 40, 80, 160};
    for (double p : {1.0, 2.0, 0.57}) {
        std::vector<double> e;
        for (int n : res) {
            e.push_back(3.0 * std::pow(1.0 / n, p));
        }
        CHECK(std::abs(observed_order(e, res) - p) < 1e-10);
    }
    const double two[] = {1.0, 0.5};
    CHECK_THROWS_AS(observed_order(two, std::span<const int>(res, 2)), InvalidArgument);
    const double bad[] = {1.0, 0.0, 0.2, 0.1};
    CHECK_THROWS_AS(observed_order(bad, res), InvalidArgument);
}

TEST_CASE("speedup") {
    const std::vector<ResolutionError> std_runs = power_law(1.0);
    const ResolutionError trained{10, 2, 0.0, 0.0};
    for (SpeedupMode mode : {SpeedupMode::Extrapolate, SpeedupMode::Search}) {
        CHECK(speedup(0.1, trained, std_runs, mode).speedup == doctest::Approx(1.0).epsilon(1e-12));
    }
    // First-order errors: halving the error doubles cells and steps, so work grows fourfold.
    const SpeedupResult half = speedup(0.05, trained, std_runs, SpeedupMode::Extrapolate);
    CHECK(half.order == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(half.matched_cells == doctest::Approx(20.0).epsilon(1e-10));
    CHECK(half.speedup == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(speedup(0.05, trained, std_runs, SpeedupMode::Search).speedup == doctest::Approx(4.0).epsilon(1e-12));

    double previous = 0.0;
    for (double e = 0.1; e > 0.001; e *= 0.8) {
        const double s = speedup(e, trained, std_runs, SpeedupMode::Extrapolate).speedup;
        CHECK(s >= previous);
        previous = s;
    }
    CHECK_THROWS_AS(speedup(1e-4, trained, std_runs, SpeedupMode::Search), UnmatchedError);
}

TEST_CASE("number formatting and csv tables") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(2.0) == "2");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    Table t{{"a", "b"}, {}};
    CHECK(t.to_csv() == "a,b\n");
    t.add_row({"1", "0.5"});
    CHECK(t.to_csv() == "a,b\n1,0.5\n");
    CHECK_THROWS_AS(t.add_row({"1"}), InvalidArgument);
}

TEST_CASE("report emission") {
    Report r;
    r.id = "empty";
    r.table.columns = {"scheme", "error"};
    const auto dir = fresh_dir("emit");
    const auto files = emit_report(r, dir);
    CHECK(slurp(dir / "empty.csv") == "scheme,error\n");
    const auto manifest = nlohmann::json::parse(slurp(dir / "empty_manifest.json"));
    CHECK(manifest["schema"] == "tscheme.manifest/1");
    CHECK(manifest["experiment"] == "empty");
    CHECK(files.size() == 2);

    const auto blocked = dir / "empty.csv" / "sub";
    CHECK_THROWS_AS(emit_report(r, blocked), FileError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("reruns with the same seed give identical tables") {
    const Config cfg = default_config("table2");
    const auto a = fresh_dir("rerun_a");
    const auto b = fresh_dir("rerun_b");
    emit_report(run_experiment("table2", cfg), a);
    emit_report(run_experiment("table2", cfg), b);
    CHECK(slurp(a / "table2.csv") == slurp(b / "table2.csv"));
    CHECK(slurp(a / "table2_loss_scan.csv") == slurp(b / "table2_loss_scan.csv"));
    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
}
