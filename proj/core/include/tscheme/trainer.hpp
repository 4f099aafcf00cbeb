#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tscheme {

struct ParamVector {
    std::vector<double> values;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<std::string> labels;

    std::size_t size() const noexcept { return values.size(); }
    void clip();
    bool at_lower(std::size_t k) const { return values[k] <= lower[k]; }
    bool at_upper(std::size_t k) const { return values[k] >= upper[k]; }
};

// Box [-bound, bound] on every entry; labels must be unique.
ParamVector make_params(std::vector<double> values, std::vector<std::string> labels, double bound = 20.0);

enum class StepRule {
    Gradient,       // theta -= lr * grad of the loss normalised by its initial value
    Preconditioned  // per-entry step lengths, see minibatch_sgd
};

enum class Termination { GradTol, MaxIters, BoundHit };

std::string_view termination_name(Termination t);

struct TrainConfig {
    double learning_rate = 0.1;
    int max_iters = 200;
    double grad_tol = 1e-6;
    int batch_size = 4;
    std::uint64_t seed = 1;
    bool sequential_in_time = false;
    double fd_step = 1e-6;
    StepRule step_rule = StepRule::Preconditioned;
    int bound_patience = 10;
    double penalty = 1e6;
    double growth = 1.5;
    double max_step = 5.0;
    std::uint64_t shuffle_stream = 0;
};

struct TrainResult {
    std::vector<double> theta;
    std::vector<std::string> labels;
    std::vector<double> loss_history;  // full-batch loss after every accepted iteration or epoch
    Termination termination = Termination::MaxIters;
    double initial_loss = 0.0;
    int iterations = 0;
    std::vector<TrainResult> stages;  // one per time level for sequential training

    double final_loss() const { return loss_history.empty() ? initial_loss : loss_history.back(); }
};

using Loss = std::function<double(std::span<const double>)>;
using SampleLoss = std::function<double(std::size_t, std::span<const double>)>;
// Loss of one sample summed over levels `level`..N; earlier levels are held fixed by the caller.
using LevelSampleLoss = std::function<double(int, std::size_t, std::span<const double>)>;

// scale * sum |u - u_ref|^p, p in {1, 2}.
double loss_lp(std::span<const double> u, std::span<const double> u_ref, int p, double scale);
double loss_lp(const std::vector<std::vector<double>>& u, const std::vector<std::vector<double>>& u_ref, int p,
               double scale);

// Numerical failures and non-finite values become `penalty`.
Loss penalized(Loss loss, double penalty);
SampleLoss penalized(SampleLoss loss, double penalty);

// Central differences with step fd_step * max(1, |theta_k|), one-sided next to a bound.
std::vector<double> grad_fd(const Loss& loss, const ParamVector& theta, double fd_step = 1e-6);

// Backtracking descent along the gradient of log(loss): halve lr until the loss decreases
// (at most 30 halvings), grow it by cfg.growth after an accepted step.
TrainResult steepest_descent(const Loss& loss, ParamVector theta0, const TrainConfig& cfg);

// Epoch loop over shuffled minibatches; the full loss is checked at the end of every epoch and
// an increase reverts the epoch and halves the step. With StepRule::Preconditioned every entry
// carries its own step length, adapted once per epoch from the sign agreement of successive
// full gradients (x growth on agreement, x0.5 on a flip, capped at max_step); batch steps are
// the batch gradient scaled by step / |full gradient|, clipped to +-step per entry.
TrainResult minibatch_sgd(const SampleLoss& loss, std::size_t n_samples, ParamVector theta0, const TrainConfig& cfg);

// Optimises the parameters of level n = 0..n_levels-1 in turn against the tail loss of levels
// n..N, with earlier levels frozen at their optima and later ones at their initial values.
TrainResult train_sequential(const LevelSampleLoss& loss, std::size_t n_samples, int n_levels, ParamVector theta0,
                             const TrainConfig& cfg);

std::string train_result_to_json(const TrainResult& r);

}
