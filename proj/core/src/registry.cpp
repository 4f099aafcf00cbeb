#include "tscheme/registry.hpp"

#include "tscheme/errors.hpp"
#include "tscheme/experiments.hpp"
#include "tscheme/finite_volume.hpp"
#include "tscheme/reference.hpp"
#include "tscheme/scheme_graph.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>

namespace tscheme {

namespace {

using Values = std::map<std::string, ConfigValue>;

std::string num(double v) {
    return format_number(v);
}

std::int64_t positive(const Config& c, const std::string& key) {
    const std::int64_t v = c.get_int(key);
    if (v < 1) {
        throw ConfigError("config key '" + key + "' must be positive");
    }
    return v;
}

double positive_real(const Config& c, const std::string& key) {
    const double v = c.get_real(key);
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError("config key '" + key + "' must be positive");
    }
    return v;
}

int positive_int(const Config& c, const std::string& key) {
    return static_cast<int>(positive(c, key));
}

std::uint64_t seed_of(const Config& c) {
    const std::int64_t s = c.get_int("seed");
    if (s < 0) {
        throw ConfigError("seed must be non-negative");
    }
    return static_cast<std::uint64_t>(s);
}

const std::vector<double>& nonempty_list(const Config& c, const std::string& key) {
    const std::vector<double>& v = c.get_list(key);
    if (v.empty()) {
        throw ConfigError("config key '" + key + "' must not be empty");
    }
    return v;
}

const std::vector<double>& c_list(const Config& c, const std::string& key) {
    const std::vector<double>& v = nonempty_list(c, key);
    for (double x : v) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw ConfigError("config key '" + key + "' must hold positive numbers");
        }
    }
    return v;
}

std::vector<int> int_list(const Config& c, const std::string& key) {
    std::vector<int> out;
    for (double v : nonempty_list(c, key)) {
        if (v < 1 || v != std::floor(v)) {
            throw ConfigError("config key '" + key + "' must hold positive integers");
        }
        out.push_back(static_cast<int>(v));
    }
    return out;
}

void add_training_keys(Values& v, double lr, std::int64_t max_iters, std::int64_t batch) {
    v["learning_rate"] = lr;
    v["max_iters"] = max_iters;
    v["grad_tol"] = 1e-6;
    v["fd_step"] = 1e-6;
    if (batch > 0) {
        v["batch_size"] = batch;
    }
}

TrainConfig train_config(const Config& c) {
    TrainConfig t;
    t.seed = seed_of(c);
    t.learning_rate = positive_real(c, "learning_rate");
    t.max_iters = static_cast<int>(c.get_int("max_iters"));
    t.grad_tol = c.get_real("grad_tol");
    t.fd_step = positive_real(c, "fd_step");
    if (c.contains("batch_size")) {
        t.batch_size = positive_int(c, "batch_size");
    }
    if (c.contains("sequential_in_time")) {
        t.sequential_in_time = c.get_bool("sequential_in_time");
    }
    if (!(t.learning_rate > 0.0) || t.max_iters < 0 || !(t.grad_tol >= 0.0) || !(t.fd_step > 0.0)) {
        throw ConfigError("training settings must be positive");
    }
    return t;
}

std::string c_key(double c) {
    return "c=" + num(c);
}

// ODEs

Values fig1_defaults() {
    return {{"seed", std::int64_t{1}}, {"c_values", std::vector<double>{1.0, 5.0}}, {"dt", 0.5}, {"u0", 1.0},
            {"g_min", -1.0}, {"g_max", 1.0}, {"g_step", 0.01}};
}

Report fig1_report(const Config& c) {
    Report r;
    r.table.columns = {"c", "g", "E2"};
    Table minimum{{"c", "g_star", "g_continuous", "error_ratio"}, {}};
    for (double cv : c_list(c, "c_values")) {
        const DecayScan s =
            fig1_scan(cv, positive_real(c, "dt"), c.get_real("u0"), c.get_real("g_min"), c.get_real("g_max"),
                      positive_real(c, "g_step"));
        for (const ScanPoint& p : s.points) {
            r.table.add_row({num(cv), num(p.g), num(p.e2)});
        }
        minimum.add_row({num(cv), num(s.g_star), num(s.g_continuous), num(s.ratio)});
        r.metrics["g_star/" + c_key(cv)] = s.g_star;
        r.metrics["error_ratio/" + c_key(cv)] = s.ratio;
    }
    r.extra_tables["minimum"] = std::move(minimum);
    return r;
}

Values oscillator_defaults(std::vector<double> cs) {
    Values v{{"seed", std::int64_t{1}}, {"c_values", std::move(cs)}, {"train_size", std::int64_t{10}},
             {"test_size", std::int64_t{50}}, {"dt", 1.0 / 3.0}, {"oscillator_start", std::string("displaced")}};
    add_training_keys(v, 0.1, 200, 0);
    return v;
}

OscillatorRun oscillator_run(const Config& c, double cv) {
    OscillatorRun run;
    run.c = cv;
    run.seed = seed_of(c);
    run.train_size = positive_int(c, "train_size");
    run.test_size = positive_int(c, "test_size");
    run.dt = positive_real(c, "dt");
    const std::string& start = c.get_text("oscillator_start");
    if (start == "displaced") {
        run.start = OscillatorStart::Displaced;
    } else if (start == "zero_velocity") {
        run.start = OscillatorStart::ZeroVelocity;
    } else {
        throw ConfigError("oscillator_start must be 'displaced' or 'zero_velocity'");
    }
    run.train = train_config(c);
    return run;
}

void add_ode_errors(Report& r, const std::string& key, const OdeOutcome& o) {
    r.per_sample_errors[key + "/standard"] = o.standard.per_sample;
    r.per_sample_errors[key + "/trained"] = o.trained.per_sample;
    r.attachments[r.id + "_train_" + key + ".json"] = train_result_to_json(o.result);
}

Report table1_report(const Config& c) {
    Report r;
    r.id = "table1";
    r.table.columns = {"c", "g_2", "g_3", "gain", "standard_mean", "trained_mean", "termination", "iterations"};
    for (double cv : c_list(c, "c_values")) {
        const OdeOutcome o = run_oscillator(oscillator_run(c, cv));
        r.table.add_row({num(cv), num(o.result.theta[0]), num(o.result.theta[1]), num(o.gain), num(o.standard.mean),
                         num(o.trained.mean), std::string(termination_name(o.result.termination)),
                         std::to_string(o.result.iterations)});
        r.metrics["gain/" + c_key(cv)] = o.gain;
        add_ode_errors(r, c_key(cv), o);
    }
    return r;
}

Values fig3_defaults() {
    Values v = oscillator_defaults({100.0});
    v.erase("c_values");
    v["c"] = 100.0;
    v["rk_steps"] = std::int64_t{1000};
    v["test_index"] = std::int64_t{0};
    return v;
}

Report fig3_report(const Config& c) {
    Report r;
    const double cv = positive_real(c, "c");
    const OscillatorRun run = oscillator_run(c, cv);
    const OdeOutcome o = run_oscillator(run);
    const std::int64_t idx = c.get_int("test_index");
    if (idx < 0 || idx >= static_cast<std::int64_t>(o.data.test.size())) {
        throw ConfigError("test_index out of range");
    }
    const double u0 = o.data.test[idx][0];
    const OscillatorSetup setup{cv, run.dt, run.start};
    const auto standard = oscillator_levels(0.5, 0.5, setup, u0);
    const auto trained = oscillator_levels(o.result.theta[0], o.result.theta[1], setup, u0);
    r.table.columns = {"t", "exact_u", "exact_v", "bdf2_u", "bdf2_v", "trained_u", "trained_v"};
    for (std::size_t n = 0; n < standard.size(); ++n) {
        const double t = n * run.dt;
        const auto e = exact_oscillator(u0, cv, t);
        r.table.add_row({num(t), num(e[0]), num(e[1]), num(standard[n][0]), num(standard[n][1]),
                         num(trained[n][0]), num(trained[n][1])});
    }
    const int rk_steps = positive_int(c, "rk_steps");
    const double t_final = run.dt * (static_cast<double>(standard.size()) - 1.0);
    const auto rk = ssprk2_solve(oscillator_problem(cv), State{u0, 0.0}, t_final, rk_steps);
    Table fine{{"t", "exact_u", "exact_v", "ssprk2_u", "ssprk2_v"}, {}};
    for (std::size_t k = 0; k < rk.size(); ++k) {
        const double t = t_final * static_cast<double>(k) / rk_steps;
        const auto e = exact_oscillator(u0, cv, t);
        fine.add_row({num(t), num(e[0]), num(e[1]), num(rk[k][0]), num(rk[k][1])});
    }
    r.extra_tables["fine"] = std::move(fine);
    r.metrics["u0"] = u0;
    r.metrics["g_2"] = o.result.theta[0];
    r.metrics["g_3"] = o.result.theta[1];
    r.metrics["gain"] = o.gain;
    return r;
}

Values logistic_defaults() {
    Values v{{"seed", std::int64_t{1}},
             {"c_values", std::vector<double>{0.2, 1.0, 5.0}},
             {"scan_c_values", std::vector<double>{1.0, 5.0}},
             {"train_size", std::int64_t{10}},
             {"test_size", std::int64_t{50}},
             {"dt", 0.5}};
    add_training_keys(v, 0.1, 200, 0);
    return v;
}

LogisticRun logistic_run(const Config& c, double cv) {
    LogisticRun run;
    run.c = cv;
    run.seed = seed_of(c);
    run.train_size = positive_int(c, "train_size");
    run.test_size = positive_int(c, "test_size");
    run.dt = positive_real(c, "dt");
    run.train = train_config(c);
    return run;
}

Report table2_report(const Config& c) {
    Report r;
    r.id = "table2";
    r.table.columns = {"c",           "g_2",        "gain",       "standard_mean", "trained_mean",
                       "termination", "iterations", "skipped_test"};
    for (double cv : c_list(c, "c_values")) {
        const OdeOutcome o = run_logistic(logistic_run(c, cv));
        r.table.add_row({num(cv), num(o.result.theta[0]), num(o.gain), num(o.standard.mean), num(o.trained.mean),
                         std::string(termination_name(o.result.termination)), std::to_string(o.result.iterations),
                         std::to_string(o.skipped)});
        r.metrics["gain/" + c_key(cv)] = o.gain;
        r.metrics["g_2/" + c_key(cv)] = o.result.theta[0];
        add_ode_errors(r, c_key(cv), o);
    }
    Table scan{{"c", "g", "loss"}, {}};
    for (double cv : c_list(c, "scan_c_values")) {
        const LogisticRun run = logistic_run(c, cv);
        const Dataset d = sample_dataset(Family::Logistic, run.train_size, run.test_size, run.seed);
        std::vector<double> u0;
        for (const Record& rec : d.train) {
            u0.push_back(rec[0]);
        }
        for (int k = 0; k <= 150; ++k) {
            const double g = -0.5 + 0.01 * k;
            try {
                scan.add_row({num(cv), num(g), num(loss_logistic(g, {cv, run.dt}, u0))});
            } catch (const SolverFailure&) {
                // no real solution for some training sample at this g
            }
        }
    }
    r.extra_tables["loss_scan"] = std::move(scan);
    return r;
}

// Heat and advection

Values heat_defaults(std::vector<double> cs) {
    Values v{{"seed", std::int64_t{1}}, {"c_values", std::move(cs)}, {"n", std::int64_t{10}}, {"dt", 0.05},
             {"train_size", std::int64_t{20}}, {"test_size", std::int64_t{100}}, {"fine_n", std::int64_t{1000}}};
    add_training_keys(v, 0.1, 200, 4);
    return v;
}

HeatRun heat_run(const Config& c, double cv, Family family) {
    HeatRun run;
    run.c = cv;
    run.family = family;
    run.seed = seed_of(c);
    run.n = positive_int(c, "n");
    run.dt = positive_real(c, "dt");
    run.train_size = positive_int(c, "train_size");
    run.test_size = positive_int(c, "test_size");
    run.fine_n = positive_int(c, "fine_n");
    run.train = train_config(c);
    return run;
}

void add_linear_errors(Report& r, const std::string& key, const LinearOutcome& o) {
    for (std::size_t k = 0; k < all_named_schemes.size(); ++k) {
        r.per_sample_errors[key + "/" + std::string(scheme_name(all_named_schemes[k]))] = o.named[k].per_sample;
    }
    r.per_sample_errors[key + "/trained"] = o.trained.per_sample;
    r.attachments[r.id + "_train_" + key + ".json"] = train_result_to_json(o.result);
}

Report heat_table_report(const Config& c, Family family, const std::string& id) {
    Report r;
    r.id = id;
    r.table.columns = {"c",          "g^1",        "b^1_-2",     "b^1_-1",     "gain_S1",      "gain_S2",
                       "gain_S3",    "gain_S4",    "S1_mean",    "S2_mean",    "S3_mean",      "S4_mean",
                       "trained_mean", "termination", "iterations"};
    for (double cv : c_list(c, "c_values")) {
        const LinearOutcome o = run_heat(heat_run(c, cv, family));
        const auto& t = o.result.theta;
        r.table.add_row({num(cv), num(t[0]), num(t[1]), num(t[2]), num(o.gains[0]), num(o.gains[1]),
                         num(o.gains[2]), num(o.gains[3]), num(o.named[0].mean), num(o.named[1].mean),
                         num(o.named[2].mean), num(o.named[3].mean), num(o.trained.mean),
                         std::string(termination_name(o.result.termination)), std::to_string(o.result.iterations)});
        for (std::size_t k = 0; k < 4; ++k) {
            r.metrics["gain_" + std::string(scheme_name(all_named_schemes[k])) + "/" + c_key(cv)] = o.gains[k];
        }
        add_linear_errors(r, c_key(cv), o);
    }
    return r;
}

Values fig5_defaults() {
    Values v = heat_defaults({});
    v.erase("c_values");
    v["c"] = 1.0;
    v["test_index"] = std::int64_t{0};
    return v;
}

Report fig5_report(const Config& c) {
    Report r;
    const HeatRun run = heat_run(c, positive_real(c, "c"), Family::KarhunenLoeve);
    const LinearOutcome o = run_heat(run);
    const std::int64_t idx = c.get_int("test_index");
    if (idx < 0 || idx >= static_cast<std::int64_t>(o.data.test.size())) {
        throw ConfigError("test_index out of range");
    }
    const Record& rec = o.data.test[idx];
    const SpaceGrid grid = make_grid(0.0, 1.0, run.n, Layout::NodeCentered, Boundary::DirichletZero);
    const ScalarField u0 = heat_initial(run.family, rec, grid);
    ReferenceConfig rc;
    rc.fine_n = run.fine_n;
    rc.levels = {1};
    const KLData d = kl_from(rec);
    const ScalarField ref =
        heat_reference([&](double x) { return eval_kl(d, x); }, run.c, rc, grid, make_time_grid(run.dt, 1)).front();
    std::vector<ScalarField> named;
    for (NamedScheme s : all_named_schemes) {
        named.push_back(heat_step(u0, heat_named(s), run.c, run.dt));
    }
    const ScalarField dl = heat_step(u0, heat_params(o.result.theta), run.c, run.dt);
    r.table.columns = {"x", "U0", "REF", "S1", "S2", "S3", "S4", "DL"};
    for (int j = 0; j < grid.n; ++j) {
        r.table.add_row({num(grid.coordinate(j)), num(u0[j]), num(ref[j]), num(named[0][j]), num(named[1][j]),
                         num(named[2][j]), num(named[3][j]), num(dl[j])});
    }
    return r;
}

Values advection_defaults(std::vector<double> cs) {
    Values v{{"seed", std::int64_t{1}}, {"c_values", std::move(cs)}, {"n", std::int64_t{10}}, {"dt", 0.5},
             {"train_size", std::int64_t{20}}, {"test_size", std::int64_t{100}}, {"fine_n", std::int64_t{1000}}};
    add_training_keys(v, 0.1, 200, 4);
    return v;
}

AdvectionRun advection_run(const Config& c, double cv) {
    AdvectionRun run;
    run.c = cv;
    run.seed = seed_of(c);
    run.n = positive_int(c, "n");
    run.dt = positive_real(c, "dt");
    run.train_size = positive_int(c, "train_size");
    run.test_size = positive_int(c, "test_size");
    run.fine_n = positive_int(c, "fine_n");
    run.train = train_config(c);
    return run;
}

Report table5_report(const Config& c) {
    Report r;
    r.id = "table5";
    r.table.columns = {"c",       "g^1",     "b^1_-1",  "gain_best",    "gain_S1",     "gain_S2",   "gain_S3",
                       "gain_S4", "S1_mean", "S2_mean", "S3_mean",      "S4_mean",     "trained_mean",
                       "termination", "iterations"};
    for (double cv : c_list(c, "c_values")) {
        const LinearOutcome o = run_advection(advection_run(c, cv));
        const auto& t = o.result.theta;
        r.table.add_row({num(cv), num(t[0]), num(t[1]), num(o.best_gain), num(o.gains[0]), num(o.gains[1]),
                         num(o.gains[2]), num(o.gains[3]), num(o.named[0].mean), num(o.named[1].mean),
                         num(o.named[2].mean), num(o.named[3].mean), num(o.trained.mean),
                         std::string(termination_name(o.result.termination)), std::to_string(o.result.iterations)});
        r.metrics["gain_best/" + c_key(cv)] = o.best_gain;
        add_linear_errors(r, c_key(cv), o);
    }
    return r;
}

Values fig6_defaults() {
    Values v = advection_defaults({0.5, 2.0});
    v["test_index"] = std::int64_t{0};
    return v;
}

Report fig6_report(const Config& c) {
    Report r;
    r.table.columns = {"c", "x", "U0", "REF", "S1", "S2", "S3", "S4", "DL"};
    for (double cv : c_list(c, "c_values")) {
        const AdvectionRun run = advection_run(c, cv);
        const LinearOutcome o = run_advection(run);
        const std::int64_t idx = c.get_int("test_index");
        if (idx < 0 || idx >= static_cast<std::int64_t>(o.data.test.size())) {
            throw ConfigError("test_index out of range");
        }
        const Record& rec = o.data.test[idx];
        const SpaceGrid grid = make_grid(0.0, 1.0, run.n, Layout::NodeCentered, Boundary::Periodic);
        const ScalarField u0 = advection_initial(rec, grid);
        ReferenceConfig rc;
        rc.fine_n = run.fine_n;
        rc.levels = {1};
        const KLData d = kl_from(rec);
        const ScalarField ref = advection_reference([&](double x) { return eval_kl(d, x); }, run.c, rc, grid,
                                                    make_time_grid(run.dt, 1))
                                    .front();
        std::vector<ScalarField> named;
        for (NamedScheme s : all_named_schemes) {
            named.push_back(adv_step(u0, adv_named(s), run.c, run.dt));
        }
        const ScalarField dl = adv_step(u0, adv_params(o.result.theta), run.c, run.dt);
        for (int j = 0; j < grid.n; ++j) {
            r.table.add_row({num(cv), num(grid.coordinate(j)), num(u0[j]), num(ref[j]), num(named[0][j]),
                             num(named[1][j]), num(named[2][j]), num(named[3][j]), num(dl[j])});
        }
    }
    return r;
}

// Burgers

Values burgers_defaults() {
    Values v{{"seed", std::int64_t{1}},
             {"n", std::int64_t{10}},
             {"dt", 0.05},
             {"steps", std::int64_t{2}},
             {"window", std::int64_t{3}},
             {"train_size", std::int64_t{20}},
             {"test_size", std::int64_t{100}},
             {"fine_n", std::int64_t{1000}},
             {"cfl", 0.9},
             {"resolutions", std::vector<double>{10, 20, 50, 100}},
             {"sequential_in_time", true}};
    add_training_keys(v, 0.1, 200, 4);
    return v;
}

BurgersRun burgers_run(const Config& c, Family family) {
    BurgersRun run;
    run.family = family;
    run.seed = seed_of(c);
    run.n = positive_int(c, "n");
    run.dt = positive_real(c, "dt");
    run.steps = positive_int(c, "steps");
    run.window = positive_int(c, "window");
    run.train_size = positive_int(c, "train_size");
    run.test_size = positive_int(c, "test_size");
    run.fine_n = positive_int(c, "fine_n");
    run.cfl = positive_real(c, "cfl");
    run.resolutions = int_list(c, "resolutions");
    if (std::find(run.resolutions.begin(), run.resolutions.end(), run.n) == run.resolutions.end()) {
        run.resolutions.insert(run.resolutions.begin(), run.n);
    }
    run.train = train_config(c);
    return run;
}

Table resolution_table(const SpeedupOutcome& s) {
    Table t{{"n_cells", "n_steps", "work", "final_error"}, {}};
    for (const ResolutionError& e : s.standard) {
        t.add_row({std::to_string(e.n_cells), std::to_string(e.n_steps), num(e.work()), num(e.error)});
    }
    return t;
}

void add_wall(Report& r, const SpeedupOutcome& s) {
    for (const ResolutionError& e : s.standard) {
        r.wall_seconds["standard_n=" + std::to_string(e.n_cells)] = e.wall_seconds;
    }
}

Report burgers_table_report(const Config& c, Family family, const std::string& id) {
    Report r;
    r.id = id;
    const BurgersOutcome o = run_burgers(burgers_run(c, family));
    for (const std::string& l : o.result.labels) {
        r.table.columns.push_back(l);
    }
    for (const char* col : {"gain", "speedup", "order", "matched_cells", "standard_mean", "trained_mean",
                            "standard_final_error", "trained_final_error"}) {
        r.table.columns.push_back(col);
    }
    std::vector<std::string> row;
    for (double w : o.result.theta) {
        row.push_back(num(w));
    }
    for (double v : {o.gain, o.speed.extrapolated.speedup, o.speed.extrapolated.order,
                     o.speed.extrapolated.matched_cells, o.standard.mean, o.trained.mean,
                     o.speed.standard.front().error, o.speed.trained_final_error}) {
        row.push_back(num(v));
    }
    r.table.add_row(std::move(row));
    r.extra_tables["resolutions"] = resolution_table(o.speed);
    r.metrics["gain"] = o.gain;
    r.metrics["speedup"] = o.speed.extrapolated.speedup;
    r.metrics["order"] = o.speed.extrapolated.order;
    r.per_sample_errors["standard"] = o.standard.per_sample;
    r.per_sample_errors["trained"] = o.trained.per_sample;
    r.attachments[id + "_train.json"] = train_result_to_json(o.result);
    add_wall(r, o.speed);
    return r;
}

Values fig8_defaults() {
    Values v = burgers_defaults();
    v["test_index"] = std::int64_t{0};
    v["graph_cell"] = std::int64_t{4};
    return v;
}

Report fig8_report(const Config& c) {
    Report r;
    r.id = "fig8";
    const BurgersRun run = burgers_run(c, Family::Rough);
    const BurgersOutcome o = run_burgers(run);
    const std::int64_t idx = c.get_int("test_index");
    if (idx < 0 || idx >= static_cast<std::int64_t>(o.data.test.size())) {
        throw ConfigError("test_index out of range");
    }
    const Record& rec = o.data.test[idx];
    const SpaceGrid grid = make_grid(0.0, 1.0, run.n, Layout::CellCentered, Boundary::Periodic);
    const TimeGrid time = make_time_grid(run.dt, run.steps);
    ReferenceConfig rc;
    rc.fine_n = run.fine_n;
    rc.cfl_safety = run.cfl;
    rc.projection = Projection::CellAverage;
    rc.levels = {run.steps};
    const RoughData d = rough_from(rec);
    const ScalarField ref =
        burgers_reference([&](double a, double b) { return average_rough(d, a, b); }, rc, grid, time).front();
    const ScalarField u0 = burgers_initial(run.family, rec, grid);
    const std::vector<double> standard_w(o.result.theta.size(), 0.5);
    const ScalarField us = burgers_trajectory(u0, standard_w, run.window, run.dt, run.steps).back();
    const ScalarField ut = burgers_trajectory(u0, o.result.theta, run.window, run.dt, run.steps).back();
    r.table.columns = {"x", "U0", "REF", "standard", "DL"};
    for (int j = 0; j < grid.n; ++j) {
        r.table.add_row({num(grid.coordinate(j)), num(u0[j]), num(ref[j]), num(us[j]), num(ut[j])});
    }

    // One step of the trained scheme at a single cell as a computational graph.
    const int cell = static_cast<int>(c.get_int("graph_cell"));
    if (cell < 0 || cell >= grid.n) {
        throw ConfigError("graph_cell out of range");
    }
    const WeightLayout layout = make_weight_layout(grid, run.window);
    const std::size_t groups = static_cast<std::size_t>(layout.n_groups());
    const std::vector<double> w = expand_pooled(layout, std::span<const double>(o.result.theta).first(groups));
    const SchemeGraph g = build_rusanov_graph(w[cell], w[(cell + 1) % grid.n], run.dt / grid.spacing);
    r.attachments["fig8_graph.dot"] = export_graph(g, GraphFormat::Dot);
    r.attachments["fig8_graph.json"] = export_graph(g, GraphFormat::Json);
    r.attachments["fig8_graph_relu.dot"] = export_graph(relu_expand(g), GraphFormat::Dot);
    r.metrics["gain"] = o.gain;
    return r;
}

// Euler

Values euler_defaults() {
    Values v{{"seed", std::int64_t{1}},
             {"n", std::int64_t{20}},
             {"dt", 0.03},
             {"steps", std::int64_t{5}},
             {"window", std::int64_t{3}},
             {"train_size", std::int64_t{50}},
             {"test_size", std::int64_t{1000}},
             {"fine_n", std::int64_t{1600}},
             {"cfl", 0.9},
             {"gamma", 1.4},
             {"sound_speed_convention", std::string("standard")},
             {"contact_halfwidth", 0.075},
             {"coarse_cfl_limit", 1.2},
             {"resolutions", std::vector<double>{20, 40, 80, 160}},
             {"sequential_in_time", true}};
    add_training_keys(v, 0.1, 100, 5);
    return v;
}

EulerRun euler_run(const Config& c) {
    EulerRun run;
    run.seed = seed_of(c);
    run.n = positive_int(c, "n");
    run.dt = positive_real(c, "dt");
    run.steps = positive_int(c, "steps");
    run.window = positive_int(c, "window");
    run.train_size = positive_int(c, "train_size");
    run.test_size = positive_int(c, "test_size");
    run.fine_n = positive_int(c, "fine_n");
    run.cfl = positive_real(c, "cfl");
    run.contact_halfwidth = positive_real(c, "contact_halfwidth");
    run.coarse_cfl_limit = positive_real(c, "coarse_cfl_limit");
    if (!(run.coarse_cfl_limit > 0.0)) {
        throw ConfigError("coarse_cfl_limit must be positive");
    }
    run.gas.gamma = positive_real(c, "gamma");
    if (!(run.gas.gamma > 1.0)) {
        throw ConfigError("gamma must exceed 1");
    }
    const std::string& conv = c.get_text("sound_speed_convention");
    if (conv == "standard") {
        run.gas.sound_speed = SoundSpeed::Standard;
    } else if (conv == "as_printed") {
        run.gas.sound_speed = SoundSpeed::AsPrinted;
    } else {
        throw ConfigError("sound_speed_convention must be 'standard' or 'as_printed'");
    }
    run.resolutions = int_list(c, "resolutions");
    if (std::find(run.resolutions.begin(), run.resolutions.end(), run.n) == run.resolutions.end()) {
        run.resolutions.insert(run.resolutions.begin(), run.n);
    }
    run.train = train_config(c);
    return run;
}

Report table8_report(const Config& c) {
    Report r;
    r.id = "table8";
    const EulerRun run = euler_run(c);
    const EulerOutcome o = run_euler(run);
    const std::size_t per_level = o.result.theta.size() / static_cast<std::size_t>(run.steps);
    r.table.columns = {"level"};
    for (std::size_t g = 1; g <= per_level; ++g) {
        r.table.columns.push_back("w_" + std::to_string(g));
    }
    for (int n = 0; n < run.steps; ++n) {
        std::vector<std::string> row{std::to_string(n + 1)};
        for (std::size_t g = 0; g < per_level; ++g) {
            row.push_back(num(o.result.theta[n * per_level + g]));
        }
        r.table.add_row(std::move(row));
    }
    Table metrics{{"metric", "value"}, {}};
    const std::vector<std::pair<std::string, double>> m{
        {"gain", o.gain},
        {"order", o.order},
        {"speedup", o.speed.extrapolated.speedup},
        {"matched_cells", o.speed.extrapolated.matched_cells},
        {"wave_fraction", o.wave_fraction},
        {"weights_moved", static_cast<double>(o.weights_moved)},
        {"standard_mean", o.standard.mean},
        {"trained_mean", o.trained.mean},
        {"standard_final_error", o.speed.standard.front().error},
        {"trained_final_error", o.speed.trained_final_error}};
    for (const auto& [k, v] : m) {
        metrics.add_row({k, num(v)});
        r.metrics[k] = v;
    }
    r.extra_tables["metrics"] = std::move(metrics);
    r.extra_tables["resolutions"] = resolution_table(o.speed);
    r.per_sample_errors["standard"] = o.standard.per_sample;
    r.per_sample_errors["trained"] = o.trained.per_sample;
    r.per_sample_errors["wave_standard"] = o.wave_error_standard;
    r.per_sample_errors["wave_trained"] = o.wave_error_trained;
    r.attachments["table8_train.json"] = train_result_to_json(o.result);
    add_wall(r, o.speed);
    return r;
}

Values fig9_defaults() {
    Values v = euler_defaults();
    v["test_size"] = std::int64_t{100};
    return v;
}

Report fig9_report(const Config& c) {
    Report r;
    const EulerRun run = euler_run(c);
    const EulerOutcome o = run_euler(run);
    const Gas& gas = run.gas;
    const Record sod(5, 0.0);
    const SpaceGrid grid = make_grid(0.0, 1.0, run.n, Layout::CellCentered, Boundary::Transparent);
    const SpaceGrid fine = make_grid(0.0, 1.0, run.fine_n, Layout::CellCentered, Boundary::Transparent);
    const double tf = run.dt * run.steps;
    const SystemField ref_fine = rusanov_march(euler_initial(sod, fine, gas), gas, run.cfl, {&tf, 1}).levels.back();
    const SystemField ref = project_cell_average(ref_fine, grid);
    const SystemField u0 = euler_initial(sod, grid, gas);
    const std::vector<double> standard_w(o.result.theta.size(), 0.5);
    auto coarse = [&](std::span<const double> w) {
        return euler_trajectory(u0, w, run.window, run.dt, run.steps, gas, run.coarse_cfl_limit).back();
    };
    const SystemField us = coarse(standard_w);
    const SystemField ut = coarse(o.result.theta);
    r.table.columns = {"x", "rho_ref", "v_ref", "p_ref", "rho_standard", "v_standard", "p_standard",
                       "rho_DL", "v_DL", "p_DL"};
    for (int j = 0; j < grid.n; ++j) {
        std::vector<std::string> row{num(grid.coordinate(j))};
        for (const SystemField* f : {&ref, &us, &ut}) {
            const Primitive w = cons_to_prim(conserved_at(*f, j), gas.gamma, j);
            row.push_back(num(w.rho));
            row.push_back(num(w.v));
            row.push_back(num(w.p));
        }
        r.table.add_row(std::move(row));
    }
    Table fine_table{{"x", "rho", "v", "p"}, {}};
    for (int j = 0; j < fine.n; ++j) {
        const Primitive w = cons_to_prim(conserved_at(ref_fine, j), gas.gamma, j);
        fine_table.add_row({num(fine.coordinate(j)), num(w.rho), num(w.v), num(w.p)});
    }
    r.extra_tables["reference_fine"] = std::move(fine_table);
    r.metrics["gain"] = o.gain;
    return r;
}

struct Entry {
    const char* id;
    const char* reproduces;
    std::function<Values()> defaults;
    std::function<Report(const Config&)> run;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e{
        {"fig1", "Figure 1: second-level error of the generalized BDF scheme on the decay ODE against g", fig1_defaults,
         fig1_report},
        {"fig3", "Figure 3: oscillator trajectories at c=100 (exact, SSP-RK2, BDF2, trained)", fig3_defaults,
         fig3_report},
        {"fig5", "Figure 5: heat equation test profile at c=1 (S1-S4, trained, reference)", fig5_defaults,
         fig5_report},
        {"fig6", "Figure 6: advection test profiles at c=0.5 and c=2", fig6_defaults, fig6_report},
        {"fig8", "Figure 8: Burgers rough-data test profile and the Rusanov step graph", fig8_defaults, fig8_report},
        {"fig9", "Figure 9: Euler Sod profiles at T=0.15 (reference, standard, trained)", fig9_defaults, fig9_report},
        {"table1", "Table 1: trained BDF scheme on the linear oscillator",
         [] { return oscillator_defaults({1, 10, 100}); }, table1_report},
        {"table2", "Table 2: trained BDF scheme on the logistic ODE (and Figure 4 loss curves)", logistic_defaults,
         table2_report},
        {"table3", "Table 3: trained heat scheme, smooth data", [] { return heat_defaults({0.1, 1, 10}); },
         [](const Config& c) { return heat_table_report(c, Family::KarhunenLoeve, "table3"); }},
        {"table4", "Table 4: trained heat scheme, rough data", [] { return heat_defaults({0.1, 1, 10}); },
         [](const Config& c) { return heat_table_report(c, Family::Rough, "table4"); }},
        {"table5", "Table 5: trained advection scheme", [] { return advection_defaults({0.5, 2}); }, table5_report},
        {"table6", "Table 6: trained Rusanov scheme for Burgers, smooth data", burgers_defaults,
         [](const Config& c) { return burgers_table_report(c, Family::KarhunenLoeve, "table6"); }},
        {"table7", "Table 7: trained Rusanov scheme for Burgers, rough data", burgers_defaults,
         [](const Config& c) { return burgers_table_report(c, Family::Rough, "table7"); }},
        {"table8", "Table 8: trained Rusanov scheme for Euler (gain, order, speedup)", euler_defaults, table8_report},
    };
    return e;
}

const Entry& find_entry(std::string_view id) {
    for (const Entry& e : entries()) {
        if (e.id == id) {
            return e;
        }
    }
    throw UnknownExperiment("unknown experiment '" + std::string(id) + "'");
}

}

std::vector<ExperimentInfo> list_experiments() {
    std::vector<ExperimentInfo> out;
    for (const Entry& e : entries()) {
        out.push_back({e.id, e.reproduces});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return out;
}

bool is_experiment(std::string_view id) {
    return std::any_of(entries().begin(), entries().end(), [&](const Entry& e) { return e.id == id; });
}

Config default_config(std::string_view id) {
    return Config(find_entry(id).defaults());
}

Report run_experiment(std::string_view id, const Config& config) {
    const Entry& e = find_entry(id);
    const Config defaults(e.defaults());
    if (config.keys() != defaults.keys()) {
        throw ConfigError("config keys do not match the schema of experiment '" + std::string(id) + "'");
    }
    const auto start = std::chrono::steady_clock::now();
    Report r = e.run(config);
    r.id = e.id;
    r.seed = seed_of(config);
    r.config = config;
    r.wall_seconds["total"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}
