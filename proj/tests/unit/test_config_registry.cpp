#include "tscheme/config.hpp"
#include "tscheme/errors.hpp"
#include "tscheme/registry.hpp"

#include <doctest.h>

#include <algorithm>

using namespace tscheme;

TEST_CASE("typed configuration") {
    Config c({{"dt", 0.5}, {"n", std::int64_t{10}}, {"flag", false}, {"mode", std::string("standard")},
              {"cs", std::vector<double>{1.0, 5.0}}});
    c.set_text("dt", "0.25");
    c.set_text("n", "20");
    c.set_text("flag", "true");
    c.set_text("mode", "as_printed");
    c.set_text("cs", "0.2,1,5");
    CHECK(c.get_real("dt") == 0.25);
    CHECK(c.get_int("n") == 20);
    CHECK(c.get_bool("flag"));
    CHECK(c.get_text("mode") == "as_printed");
    CHECK(c.get_list("cs") == std::vector<double>{0.2, 1.0, 5.0});
    c.apply_assignment("cs=[3,4]");
    CHECK(c.get_list("cs") == std::vector<double>{3.0, 4.0});
    c.merge_json(R"({"dt": 0.125, "n": 40})");
    CHECK(c.get_real("dt") == 0.125);
    CHECK(c.get_int("n") == 40);

    CHECK_THROWS_AS(c.set_text("n", "2.5"), ConfigError);
    CHECK_THROWS_AS(c.set_text("dt", "fast"), ConfigError);
    CHECK_THROWS_AS(c.set_text("missing", "1"), ConfigError);
    CHECK_THROWS_AS(c.apply_assignment("novalue"), ConfigError);
    CHECK_THROWS_AS(c.merge_json(R"({"dt": "x"})"), ConfigError);
    CHECK_THROWS_AS(c.merge_json(R"({"dt": {"nested": 1}})"), ConfigError);
    CHECK_THROWS_AS(c.merge_json("not json"), ConfigError);
    CHECK_THROWS_AS(c.get_int("dt"), ConfigError);
    CHECK_THROWS_AS(c.merge_json_file("/nonexistent/config.json"), FileError);

    Config round(c);
    round.merge_json(c.to_json());
    CHECK(round == c);
}

TEST_CASE("experiment registry") {
    const std::vector<ExperimentInfo> list = list_experiments();
    CHECK(list.size() == 14);
    CHECK(std::is_sorted(list.begin(), list.end(),
                         [](const ExperimentInfo& a, const ExperimentInfo& b) { return a.id < b.id; }));
    for (const ExperimentInfo& e : list) {
        CHECK(is_experiment(e.id));
        CHECK_FALSE(e.reproduces.empty());
        const Config c = default_config(e.id);
        CHECK(c.contains("seed"));
    }
    CHECK_FALSE(is_experiment("table9"));
    CHECK_THROWS_AS(default_config("table9"), UnknownExperiment);
    CHECK_THROWS_AS(run_experiment("table9", Config{}), UnknownExperiment);
    CHECK_THROWS_AS(run_experiment("fig1", Config({{"bogus", 1.0}})), ConfigError);
}

TEST_CASE("invalid values are configuration errors") {
    Config c = default_config("fig1");
    c.set_text("dt", "-0.5");
    CHECK_THROWS_AS(run_experiment("fig1", c), ConfigError);
}

TEST_CASE("fig1 report") {
    const Report r = run_experiment("fig1", default_config("fig1"));
    CHECK(r.id == "fig1");
    CHECK(r.seed == 1);
    CHECK(r.extra_tables.count("minimum") == 1);
    CHECK(r.table.columns.size() == 3);
}
