#include "tscheme/experiments.hpp"

#include "tscheme/errors.hpp"

#include <cmath>

namespace tscheme {

DecayScan fig1_scan(double c, double dt, double u0, double g_lo, double g_hi, double step) {
    if (!(step > 0.0) || !(g_hi > g_lo)) {
        throw InvalidArgument("fig1_scan: need g_lo < g_hi and a positive step");
    }
    const int count = static_cast<int>(std::floor((g_hi - g_lo) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (int k = 0; k < count; ++k) {
        grid[k] = g_lo + k * step;
    }
    DecayScan s;
    s.c = c;
    s.points = loss_scan_decay(c, dt, u0, grid);
    std::size_t best = 0;
    for (std::size_t k = 1; k < s.points.size(); ++k) {
        if (s.points[k].e2 < s.points[best].e2) {
            best = k;
        }
    }
    s.g_star = s.points[best].g;
    const double u1 = exact_decay(u0, c, dt);
    const double u2 = exact_decay(u0, c, 2.0 * dt);
    s.g_continuous = (u2 * (1.0 + c * dt) - u1) / (2.0 * u1 - u0 - u2);
    s.ratio = std::abs(decay_second_level_error(c, dt, u0, 0.5)) /
              std::abs(decay_second_level_error(c, dt, u0, s.g_star));
    return s;
}

namespace {

std::vector<double> first_entries(const std::vector<Record>& records) {
    std::vector<double> v;
    v.reserve(records.size());
    for (const Record& r : records) {
        v.push_back(r[0]);
    }
    return v;
}

}

OdeOutcome run_oscillator(const OscillatorRun& run) {
    OdeOutcome out;
    out.data = sample_dataset(Family::Oscillator, run.train_size, run.test_size, run.seed);
    const OscillatorSetup setup{run.c, run.dt, run.start};
    const std::vector<double> train = first_entries(out.data.train);
    const std::vector<double> test = first_entries(out.data.test);

    const Loss loss = [&](std::span<const double> t) { return loss_oscillator(t[0], t[1], setup, train); };
    out.result = steepest_descent(loss, make_params({0.5, 0.5}, {"g_2", "g_3"}), run.train);

    const double g2 = out.result.theta[0];
    const double g3 = out.result.theta[1];
    std::vector<double> std_err;
    std::vector<double> dl_err;
    for (double u0 : test) {
        std_err.push_back(oscillator_sample_error(0.5, 0.5, setup, u0));
        dl_err.push_back(oscillator_sample_error(g2, g3, setup, u0));
    }
    out.standard = summarize(std::move(std_err));
    out.trained = summarize(std::move(dl_err));
    out.gain = gain(out.standard.mean, out.trained.mean);
    return out;
}

OdeOutcome run_logistic(const LogisticRun& run) {
    OdeOutcome out;
    out.data = sample_dataset(Family::Logistic, run.train_size, run.test_size, run.seed);
    const LogisticSetup setup{run.c, run.dt};
    const std::vector<double> train = first_entries(out.data.train);
    const std::vector<double> test = first_entries(out.data.test);

    const Loss loss = [&](std::span<const double> t) { return loss_logistic(t[0], setup, train); };
    out.result = steepest_descent(loss, make_params({0.5}, {"g_2"}), run.train);

    const double g2 = out.result.theta[0];
    std::vector<double> std_err;
    std::vector<double> dl_err;
    // Samples where either implicit step has no real solution are left out of both means.
    for (double u0 : test) {
        try {
            const double es = logistic_sample_error(0.5, setup, u0);
            const double et = logistic_sample_error(g2, setup, u0);
            std_err.push_back(es);
            dl_err.push_back(et);
        } catch (const SolverFailure&) {
            ++out.skipped;
        }
    }
    if (std_err.empty()) {
        throw SolverFailure("run_logistic: no test sample has a solvable implicit step", 0.0);
    }
    out.standard = summarize(std::move(std_err));
    out.trained = summarize(std::move(dl_err));
    out.gain = gain(out.standard.mean, out.trained.mean);
    return out;
}

}
