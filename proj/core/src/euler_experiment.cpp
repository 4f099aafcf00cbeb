#include "tscheme/experiments.hpp"

#include "tscheme/errors.hpp"
#include "tscheme/finite_volume.hpp"
#include "tscheme/reference.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace tscheme {

SystemField euler_initial(std::span<const double> record, const SpaceGrid& grid, const Gas& gas) {
    const SodData d = sod_from(record);
    std::vector<Conserved> cells(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        cells[i] = average_sod(d, grid.cell_left(i), grid.cell_right(i), gas.gamma);
    }
    return make_euler_field(grid, cells);
}

std::vector<SystemField> euler_trajectory(const SystemField& u0, std::span<const double> pooled, int window,
                                          double dt, int steps, const Gas& gas, double max_courant) {
    const WeightLayout layout = make_weight_layout(u0.grid(), window);
    const std::size_t per_step = static_cast<std::size_t>(layout.n_groups());
    if (pooled.size() != per_step * static_cast<std::size_t>(steps)) {
        throw InvalidArgument("euler_trajectory: expected " + std::to_string(per_step * steps) + " weights");
    }
    std::vector<SystemField> levels{u0};
    for (int n = 0; n < steps; ++n) {
        const std::vector<double> w = expand_pooled(layout, pooled.subspan(n * per_step, per_step));
        levels.push_back(fv_step_euler(levels.back(), w, gas, dt, max_courant));
    }
    return levels;
}

double euler_primitive_l1(const SystemField& u, const SystemField& ref, const Gas& gas) {
    if (u.cells() != ref.cells() || u.components() != 3 || ref.components() != 3) {
        throw InvalidArgument("euler_primitive_l1: shape mismatch");
    }
    double s = 0.0;
    for (std::size_t j = 0; j < u.cells(); ++j) {
        const Primitive a = cons_to_prim(conserved_at(u, j), gas.gamma, static_cast<long>(j));
        const Primitive b = cons_to_prim(conserved_at(ref, j), gas.gamma, static_cast<long>(j));
        s += std::abs(a.rho - b.rho) + std::abs(a.v - b.v) + std::abs(a.p - b.p);
    }
    return u.grid().spacing * s;
}

namespace {

struct EulerSample {
    SystemField u0;
    std::vector<SystemField> ref;  // coarse levels 1..steps
};

// Density error away from the contact plus velocity and pressure errors everywhere, final time.
double wave_error(const SystemField& u, const SystemField& ref, const Gas& gas, double x_contact, double halfwidth) {
    const SpaceGrid& g = u.grid();
    double s = 0.0;
    for (std::size_t j = 0; j < u.cells(); ++j) {
        const Primitive a = cons_to_prim(conserved_at(u, j), gas.gamma, static_cast<long>(j));
        const Primitive b = cons_to_prim(conserved_at(ref, j), gas.gamma, static_cast<long>(j));
        if (std::abs(g.coordinate(static_cast<int>(j)) - x_contact) > halfwidth) {
            s += std::abs(a.rho - b.rho);
        }
        s += std::abs(a.v - b.v) + std::abs(a.p - b.p);
    }
    return g.spacing * s;
}

double max_velocity(const SystemField& u, const Gas& gas) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < u.cells(); ++j) {
        m = std::max(m, cons_to_prim(conserved_at(u, j), gas.gamma, static_cast<long>(j)).v);
    }
    return m;
}

}

EulerOutcome run_euler(const EulerRun& run) {
    EulerOutcome out;
    out.data = sample_dataset(Family::Sod, run.train_size, run.test_size, run.seed);
    const Gas& gas = run.gas;
    const SpaceGrid grid = make_grid(0.0, 1.0, run.n, Layout::CellCentered, Boundary::Transparent);
    const TimeGrid time = make_time_grid(run.dt, run.steps);
    const SpaceGrid fine = make_grid(0.0, 1.0, run.fine_n, Layout::CellCentered, Boundary::Transparent);
    const int groups = make_weight_layout(grid, run.window).n_groups();
    std::vector<double> times;
    for (int n = 1; n <= run.steps; ++n) {
        times.push_back(time.time(n));
    }

    auto fine_march = [&](const Record& r) { return rusanov_march(euler_initial(r, fine, gas), gas, run.cfl, times); };
    auto coarse = [&](const SystemField& u0, std::span<const double> w, int steps) {
        return euler_trajectory(u0, w, run.window, run.dt, steps, gas, run.coarse_cfl_limit);
    };
    auto make_sample = [&](const Record& r, const SystemMarch& m) {
        EulerSample s{euler_initial(r, grid, gas), {}};
        for (const SystemField& f : m.levels) {
            s.ref.push_back(project_cell_average(f, grid));
        }
        return s;
    };

    std::vector<EulerSample> train;
    for (const Record& r : out.data.train) {
        train.push_back(make_sample(r, fine_march(r)));
    }

    std::vector<std::string> labels;
    for (int n = 1; n <= run.steps; ++n) {
        for (int g = 1; g <= groups; ++g) {
            labels.push_back("w^" + std::to_string(n) + "_" + std::to_string(g));
        }
    }
    const std::size_t per_level = static_cast<std::size_t>(groups);
    const ParamVector theta0 = make_params(std::vector<double>(labels.size(), 0.5), labels);

    // States at the start of the level being trained; earlier weights are frozen during a stage.
    std::vector<SystemField> start_state;
    int start_level = -1;
    auto tail_loss = [&](int level, std::size_t i, std::span<const double> t) {
        if (level != start_level) {
            start_state.clear();
            for (const EulerSample& s : train) {
                const auto u = coarse(s.u0, t.first(per_level * level), level);
                start_state.push_back(u.back());
            }
            start_level = level;
        }
        const auto u = coarse(start_state[i], t.subspan(per_level * level), run.steps - level);
        double s = 0.0;
        for (int n = level + 1; n <= run.steps; ++n) {
            s += euler_primitive_l1(u[n - level], train[i].ref[n - 1], gas);
        }
        return s;
    };
    if (run.train.sequential_in_time) {
        // The cached start states are only valid while the earlier levels stay frozen, which holds
        // within a stage; level 0 (used for the full loss) starts from the initial data.
        out.result = train_sequential(
            [&](int level, std::size_t i, std::span<const double> t) {
                if (level == 0) {
                    const auto u = coarse(train[i].u0, t, run.steps);
                    double s = 0.0;
                    for (int n = 1; n <= run.steps; ++n) {
                        s += euler_primitive_l1(u[n], train[i].ref[n - 1], gas);
                    }
                    return s;
                }
                return tail_loss(level, i, t);
            },
            train.size(), run.steps, theta0, run.train);
    } else {
        out.result = minibatch_sgd([&](std::size_t i, std::span<const double> t) { return tail_loss(0, i, t); },
                                   train.size(), theta0, run.train);
    }

    const std::vector<double> standard_w(labels.size(), 0.5);
    const double tf = time.final_time();
    std::vector<double> std_err;
    std::vector<double> dl_err;
    std::vector<double> std_final;
    std::vector<double> dl_final;
    std::vector<std::vector<double>> refined_err(run.resolutions.size());
    std::vector<double> refined_steps(run.resolutions.size(), 0.0);
    std::vector<double> refined_wall(run.resolutions.size(), 0.0);
    double coarse_wall = 0.0;
    using clock = std::chrono::steady_clock;
    for (const Record& r : out.data.test) {
        const SystemMarch m = fine_march(r);
        const EulerSample s = make_sample(r, m);
        auto t0 = clock::now();
        const auto us = coarse(s.u0, standard_w, run.steps);
        coarse_wall += std::chrono::duration<double>(clock::now() - t0).count();
        double es = 0.0;
        for (int n = 1; n <= run.steps; ++n) {
            es += euler_primitive_l1(us[n], s.ref[n - 1], gas);
        }
        std_err.push_back(es);
        std_final.push_back(euler_primitive_l1(us.back(), s.ref.back(), gas));

        const double x_contact = sod_from(r).interface() + max_velocity(m.levels.back(), gas) * tf;
        out.wave_error_standard.push_back(
            wave_error(us.back(), s.ref.back(), gas, x_contact, run.contact_halfwidth));
        try {
            const auto ut = coarse(s.u0, out.result.theta, run.steps);
            double et = 0.0;
            for (int n = 1; n <= run.steps; ++n) {
                et += euler_primitive_l1(ut[n], s.ref[n - 1], gas);
            }
            dl_err.push_back(et);
            dl_final.push_back(euler_primitive_l1(ut.back(), s.ref.back(), gas));
            out.wave_error_trained.push_back(
                wave_error(ut.back(), s.ref.back(), gas, x_contact, run.contact_halfwidth));
        } catch (const NumericalFailure&) {
            const double inf = std::numeric_limits<double>::infinity();
            dl_err.push_back(inf);
            dl_final.push_back(inf);
            out.wave_error_trained.push_back(inf);
        }

        for (std::size_t k = 0; k < run.resolutions.size(); ++k) {
            const int nr = run.resolutions[k];
            if (nr == run.n) {
                continue;
            }
            const SpaceGrid g = make_grid(0.0, 1.0, nr, Layout::CellCentered, Boundary::Transparent);
            t0 = clock::now();
            const SystemMarch mr = rusanov_march(euler_initial(r, g, gas), gas, run.cfl, {&tf, 1});
            refined_wall[k] += std::chrono::duration<double>(clock::now() - t0).count();
            refined_err[k].push_back(euler_primitive_l1(mr.levels.back(), project_cell_average(m.levels.back(), g),
                                                        gas));
            refined_steps[k] += static_cast<double>(mr.steps);
        }
    }
    out.standard = summarize(std_err);
    out.trained = summarize(dl_err);
    out.gain = gain(out.standard.mean, out.trained.mean);

    std::size_t wins = 0;
    for (std::size_t i = 0; i < out.wave_error_trained.size(); ++i) {
        wins += out.wave_error_trained[i] < out.wave_error_standard[i] ? 1 : 0;
    }
    out.wave_fraction = static_cast<double>(wins) / static_cast<double>(out.wave_error_trained.size());
    out.weights_moved = static_cast<int>(std::count_if(out.result.theta.begin(), out.result.theta.end(),
                                                       [](double w) { return std::abs(w - 0.5) >= 0.01; }));

    const double n_test = static_cast<double>(out.data.test.size());
    out.speed.trained_final_error = summarize(dl_final).mean;
    out.speed.standard.push_back({run.n, run.steps, summarize(std_final).mean, coarse_wall});
    for (std::size_t k = 0; k < run.resolutions.size(); ++k) {
        if (run.resolutions[k] == run.n) {
            continue;
        }
        out.speed.standard.push_back({run.resolutions[k], std::lround(refined_steps[k] / n_test),
                                      summarize(refined_err[k]).mean, refined_wall[k]});
    }
    const ResolutionError trained_run{run.n, run.steps, out.speed.trained_final_error, 0.0};
    out.speed.extrapolated =
        speedup(out.speed.trained_final_error, trained_run, out.speed.standard, SpeedupMode::Extrapolate);
    out.order = out.speed.extrapolated.order;
    return out;
}

}
