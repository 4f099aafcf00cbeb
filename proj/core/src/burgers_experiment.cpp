#include "tscheme/experiments.hpp"

#include "tscheme/errors.hpp"
#include "tscheme/finite_volume.hpp"
#include "tscheme/reference.hpp"

#include <chrono>
#include <cmath>

namespace tscheme {

ScalarField burgers_initial(Family family, std::span<const double> record, const SpaceGrid& grid) {
    if (family == Family::KarhunenLoeve) {
        const KLData d = kl_from(record);
        return ScalarField::average(grid, [&](double a, double b) { return average_kl(d, a, b); });
    }
    if (family == Family::Rough) {
        const RoughData d = rough_from(record);
        return ScalarField::average(grid, [&](double a, double b) { return average_rough(d, a, b); });
    }
    throw InvalidArgument("burgers_initial: data family must be kl or rough");
}

std::vector<ScalarField> burgers_trajectory(const ScalarField& u0, std::span<const double> pooled, int window,
                                            double dt, int steps) {
    const WeightLayout layout = make_weight_layout(u0.grid(), window);
    const std::size_t per_step = static_cast<std::size_t>(layout.n_groups());
    if (pooled.size() != per_step * static_cast<std::size_t>(steps)) {
        throw InvalidArgument("burgers_trajectory: expected " + std::to_string(per_step * steps) + " weights");
    }
    const ScalarFlux flux = burgers_flux();
    std::vector<ScalarField> levels{u0};
    for (int n = 0; n < steps; ++n) {
        const std::vector<double> w = expand_pooled(layout, pooled.subspan(n * per_step, per_step));
        levels.push_back(fv_step_scalar(levels.back(), w, flux, dt));
    }
    return levels;
}

namespace {

struct BurgersSample {
    ScalarField u0;
    std::vector<std::vector<double>> ref;  // coarse levels 1..steps
};

double l1(std::span<const double> a, std::span<const double> b, double dx) {
    return loss_lp(a, b, 1, dx);
}

}

BurgersOutcome run_burgers(const BurgersRun& run) {
    BurgersOutcome out;
    out.data = sample_dataset(run.family, run.train_size, run.test_size, run.seed);
    const SpaceGrid grid = make_grid(0.0, 1.0, run.n, Layout::CellCentered, Boundary::Periodic);
    const TimeGrid time = make_time_grid(run.dt, run.steps);
    const SpaceGrid fine = make_grid(0.0, 1.0, run.fine_n, Layout::CellCentered, Boundary::Periodic);
    const ScalarFlux flux = burgers_flux();
    const int groups = make_weight_layout(grid, run.window).n_groups();
    const double dx = grid.spacing;
    std::vector<double> times;
    for (int n = 1; n <= run.steps; ++n) {
        times.push_back(time.time(n));
    }

    auto fine_march = [&](const Record& r) {
        return rusanov_march(burgers_initial(run.family, r, fine), flux, run.cfl, times);
    };
    auto make_sample = [&](const Record& r, const ScalarMarch& m) {
        BurgersSample s{burgers_initial(run.family, r, grid), {}};
        for (const ScalarField& f : m.levels) {
            const ScalarField c = project_cell_average(f, grid);
            s.ref.emplace_back(c.values().begin(), c.values().end());
        }
        return s;
    };

    std::vector<BurgersSample> train;
    for (const Record& r : out.data.train) {
        train.push_back(make_sample(r, fine_march(r)));
    }

    std::vector<std::string> labels;
    for (int n = 1; n <= run.steps; ++n) {
        for (int g = 1; g <= groups; ++g) {
            labels.push_back("w^" + std::to_string(n) + "_" + std::to_string(g));
        }
    }
    const ParamVector theta0 = make_params(std::vector<double>(labels.size(), 0.5), labels);
    auto tail_loss = [&](int level, std::size_t i, std::span<const double> t) {
        const std::vector<ScalarField> u = burgers_trajectory(train[i].u0, t, run.window, run.dt, run.steps);
        double s = 0.0;
        for (int n = level + 1; n <= run.steps; ++n) {
            s += l1(u[n].values(), train[i].ref[n - 1], dx);
        }
        return s;
    };
    if (run.train.sequential_in_time) {
        out.result = train_sequential(tail_loss, train.size(), run.steps, theta0, run.train);
    } else {
        out.result = minibatch_sgd([&](std::size_t i, std::span<const double> t) { return tail_loss(0, i, t); },
                                   train.size(), theta0, run.train);
    }

    const std::vector<double> standard_w(labels.size(), 0.5);
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
        const ScalarMarch m = fine_march(r);
        const BurgersSample s = make_sample(r, m);
        auto t0 = clock::now();
        const auto us = burgers_trajectory(s.u0, standard_w, run.window, run.dt, run.steps);
        coarse_wall += std::chrono::duration<double>(clock::now() - t0).count();
        const auto ut = burgers_trajectory(s.u0, out.result.theta, run.window, run.dt, run.steps);
        double es = 0.0;
        double et = 0.0;
        for (int n = 1; n <= run.steps; ++n) {
            es += l1(us[n].values(), s.ref[n - 1], dx);
            et += l1(ut[n].values(), s.ref[n - 1], dx);
        }
        std_err.push_back(es);
        dl_err.push_back(et);
        std_final.push_back(l1(us.back().values(), s.ref.back(), dx));
        dl_final.push_back(l1(ut.back().values(), s.ref.back(), dx));
        for (std::size_t k = 0; k < run.resolutions.size(); ++k) {
            const int nr = run.resolutions[k];
            if (nr == run.n) {
                continue;
            }
            const SpaceGrid g = make_grid(0.0, 1.0, nr, Layout::CellCentered, Boundary::Periodic);
            const double tf = time.final_time();
            t0 = clock::now();
            const ScalarMarch mr = rusanov_march(burgers_initial(run.family, r, g), flux, run.cfl, {&tf, 1});
            refined_wall[k] += std::chrono::duration<double>(clock::now() - t0).count();
            const ScalarField ref = project_cell_average(m.levels.back(), g);
            refined_err[k].push_back(l1(mr.levels.back().values(), ref.values(), g.spacing));
            refined_steps[k] += static_cast<double>(mr.steps);
        }
    }
    out.standard = summarize(std_err);
    out.trained = summarize(dl_err);
    out.gain = gain(out.standard.mean, out.trained.mean);

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
    return out;
}

}
