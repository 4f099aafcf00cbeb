#include "tscheme/experiments.hpp"

#include "tscheme/reference.hpp"

#include <algorithm>

namespace tscheme {

AdvLevelParams adv_params(std::span<const double> theta) {
    return {theta[0], theta[1]};
}

ScalarField advection_initial(std::span<const double> record, const SpaceGrid& grid) {
    const KLData d = kl_from(record);
    return ScalarField::sample(grid, [&](double x) { return eval_kl(d, x); });
}

LinearOutcome run_advection(const AdvectionRun& run) {
    LinearOutcome out;
    out.data = sample_dataset(Family::KarhunenLoeve, run.train_size, run.test_size, run.seed);
    const SpaceGrid grid = make_grid(0.0, 1.0, run.n, Layout::NodeCentered, Boundary::Periodic);
    const TimeGrid time = make_time_grid(run.dt, 1);
    ReferenceConfig rc;
    rc.fine_n = run.fine_n;
    rc.levels = {1};
    const double scale = 0.5 * grid.spacing;

    auto build = [&](const std::vector<Record>& records, std::vector<ScalarField>& u0,
                     std::vector<std::vector<double>>& ref) {
        for (const Record& r : records) {
            u0.push_back(advection_initial(r, grid));
            const KLData d = kl_from(r);
            const ScalarField f =
                advection_reference([&](double x) { return eval_kl(d, x); }, run.c, rc, grid, time).front();
            ref.emplace_back(f.values().begin(), f.values().end());
        }
    };
    std::vector<ScalarField> train_u0;
    std::vector<std::vector<double>> train_ref;
    build(out.data.train, train_u0, train_ref);

    const SampleLoss loss = [&](std::size_t i, std::span<const double> t) {
        const ScalarField u1 = adv_step(train_u0[i], adv_params(t), run.c, run.dt);
        return loss_lp(u1.values(), train_ref[i], 2, scale);
    };
    const AdvLevelParams s2 = adv_named(NamedScheme::S2);
    out.result = minibatch_sgd(loss, train_u0.size(), make_params({s2.g, s2.b_m1}, {"g^1", "b^1_-1"}), run.train);

    std::vector<ScalarField> test_u0;
    std::vector<std::vector<double>> test_ref;
    build(out.data.test, test_u0, test_ref);
    auto errors = [&](const AdvLevelParams& p) {
        return test_error([&](std::size_t i) {
            const ScalarField u1 = adv_step(test_u0[i], p, run.c, run.dt);
            return std::vector<double>(u1.values().begin(), u1.values().end());
        }, test_ref, 2, scale);
    };
    out.trained = errors(adv_params(out.result.theta));
    double best = 0.0;
    for (std::size_t k = 0; k < all_named_schemes.size(); ++k) {
        out.named[k] = errors(adv_named(all_named_schemes[k]));
        out.gains[k] = gain(out.named[k].mean, out.trained.mean);
        best = k == 0 ? out.named[k].mean : std::min(best, out.named[k].mean);
    }
    out.best_gain = gain(best, out.trained.mean);
    return out;
}

}
