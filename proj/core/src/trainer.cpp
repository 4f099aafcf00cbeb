#include "tscheme/trainer.hpp"

#include "tscheme/errors.hpp"
#include "tscheme/random_data.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace tscheme {

void ParamVector::clip() {
    for (std::size_t k = 0; k < values.size(); ++k) {
        values[k] = std::clamp(values[k], lower[k], upper[k]);
    }
}

ParamVector make_params(std::vector<double> values, std::vector<std::string> labels, double bound) {
    if (values.size() != labels.size()) {
        throw InvalidArgument("make_params: one label per value required");
    }
    if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size()) {
        throw InvalidArgument("make_params: labels must be unique");
    }
    if (!(bound > 0.0)) {
        throw InvalidArgument("make_params: bound must be positive");
    }
    ParamVector p;
    p.lower.assign(values.size(), -bound);
    p.upper.assign(values.size(), bound);
    p.values = std::move(values);
    p.labels = std::move(labels);
    p.clip();
    return p;
}

std::string_view termination_name(Termination t) {
    switch (t) {
    case Termination::GradTol:
        return "GradTol";
    case Termination::MaxIters:
        return "MaxIters";
    case Termination::BoundHit:
        return "BoundHit";
    }
    return "Unknown";
}

double loss_lp(std::span<const double> u, std::span<const double> u_ref, int p, double scale) {
    if (u.size() != u_ref.size()) {
        throw InvalidArgument("loss_lp: shape mismatch");
    }
    if (p != 1 && p != 2) {
        throw InvalidArgument("loss_lp: p must be 1 or 2");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double e = std::abs(u[i] - u_ref[i]);
        s += p == 1 ? e : e * e;
    }
    return scale * s;
}

double loss_lp(const std::vector<std::vector<double>>& u, const std::vector<std::vector<double>>& u_ref, int p,
               double scale) {
    if (u.size() != u_ref.size()) {
        throw InvalidArgument("loss_lp: sample count mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        s += loss_lp(u[i], u_ref[i], p, scale);
    }
    return s;
}

Loss penalized(Loss loss, double penalty) {
    return [loss = std::move(loss), penalty](std::span<const double> theta) {
        try {
            const double v = loss(theta);
            return std::isfinite(v) ? std::min(v, penalty) : penalty;
        } catch (const NumericalFailure&) {
            return penalty;
        }
    };
}

SampleLoss penalized(SampleLoss loss, double penalty) {
    return [loss = std::move(loss), penalty](std::size_t i, std::span<const double> theta) {
        try {
            const double v = loss(i, theta);
            return std::isfinite(v) ? std::min(v, penalty) : penalty;
        } catch (const NumericalFailure&) {
            return penalty;
        }
    };
}

std::vector<double> grad_fd(const Loss& loss, const ParamVector& theta, double fd_step) {
    if (!(fd_step > 0.0)) {
        throw InvalidArgument("grad_fd: fd_step must be positive");
    }
    const std::size_t d = theta.size();
    std::vector<double> g(d, 0.0);
    std::vector<double> x = theta.values;
    double center = std::numeric_limits<double>::quiet_NaN();
    auto eval = [&](std::size_t k) {
        const double v = loss(x);
        if (!std::isfinite(v)) {
            throw GradientFailure("grad_fd: non-finite loss when perturbing " + theta.labels[k], k);
        }
        return v;
    };
    auto center_value = [&](std::size_t k) {
        if (std::isnan(center)) {
            x = theta.values;
            center = eval(k);
        }
        return center;
    };
    for (std::size_t k = 0; k < d; ++k) {
        const double t = theta.values[k];
        const double h = fd_step * std::max(1.0, std::abs(t));
        if (t + h > theta.upper[k]) {
            const double f0 = center_value(k);
            x[k] = t - h;
            g[k] = (f0 - eval(k)) / h;
        } else if (t - h < theta.lower[k]) {
            const double f0 = center_value(k);
            x[k] = t + h;
            g[k] = (eval(k) - f0) / h;
        } else {
            x[k] = t + h;
            const double fp = eval(k);
            x[k] = t - h;
            const double fm = eval(k);
            g[k] = (fp - fm) / (2.0 * h);
        }
        x[k] = t;
    }
    return g;
}

namespace {

std::vector<bool> active_set(const ParamVector& p) {
    std::vector<bool> a(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        a[k] = p.at_lower(k) || p.at_upper(k);
    }
    return a;
}

bool blocked(const ParamVector& p, std::span<const double> g, std::size_t k) {
    return (p.at_lower(k) && g[k] > 0.0) || (p.at_upper(k) && g[k] < 0.0);
}

// Largest relative entry of the projected gradient: entries whose descent direction leaves the box are dropped.
double relative_gradient(const ParamVector& p, std::span<const double> g, double loss) {
    const double scale = std::max(loss, 1e-300);
    double m = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (!blocked(p, g, k)) {
            m = std::max(m, std::abs(g[k]) / scale);
        }
    }
    return m;
}

// Stationary point of the box problem: a bound hit if some bound is holding the descent back.
Termination stationary(const ParamVector& p, std::span<const double> g) {
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (blocked(p, g, k)) {
            return Termination::BoundHit;
        }
    }
    return Termination::GradTol;
}

class BoundWatch {
public:
    explicit BoundWatch(int patience) : patience_(patience) {}

    bool update(const ParamVector& p) {
        std::vector<bool> a = active_set(p);
        const bool any = std::find(a.begin(), a.end(), true) != a.end();
        count_ = (any && a == last_) ? count_ + 1 : 0;
        last_ = std::move(a);
        return count_ >= patience_;
    }

private:
    int patience_;
    int count_ = 0;
    std::vector<bool> last_;
};

void check_config(const TrainConfig& cfg) {
    if (!(cfg.learning_rate > 0.0) || !(cfg.grad_tol >= 0.0) || !(cfg.fd_step > 0.0) || cfg.max_iters < 0 ||
        cfg.bound_patience < 1 || !(cfg.growth >= 1.0) || !(cfg.max_step > 0.0)) {
        throw InvalidArgument("TrainConfig: rates, tolerances and counts must be positive");
    }
}

double start_loss(const Loss& raw, const ParamVector& theta) {
    double v = 0.0;
    try {
        v = raw(theta.values);
    } catch (const NumericalFailure& e) {
        throw InvalidStart(std::string("loss cannot be evaluated at the initial parameters: ") + e.what());
    }
    if (!std::isfinite(v)) {
        throw InvalidStart("loss is not finite at the initial parameters");
    }
    return v;
}

}

TrainResult steepest_descent(const Loss& loss, ParamVector theta0, const TrainConfig& cfg) {
    check_config(cfg);
    ParamVector theta = std::move(theta0);
    theta.clip();
    const Loss f = penalized(loss, cfg.penalty);

    TrainResult r;
    r.labels = theta.labels;
    r.initial_loss = start_loss(loss, theta);
    double current = r.initial_loss;
    r.loss_history.push_back(current);
    double lr = cfg.learning_rate;
    BoundWatch bounds(cfg.bound_patience);
    r.termination = Termination::MaxIters;

    for (int it = 0; it < cfg.max_iters; ++it) {
        if (current == 0.0) {
            r.termination = Termination::GradTol;
            break;
        }
        const std::vector<double> g = grad_fd(f, theta, cfg.fd_step);
        if (relative_gradient(theta, g, r.initial_loss) < cfg.grad_tol) {
            r.termination = stationary(theta, g);
            break;
        }
        bool accepted = false;
        ParamVector trial = theta;
        for (int halving = 0; halving <= 30; ++halving) {
            for (std::size_t k = 0; k < theta.size(); ++k) {
                trial.values[k] = theta.values[k] - lr * g[k] / current;
            }
            trial.clip();
            const double value = f(trial.values);
            if (value < current) {
                theta = trial;
                current = value;
                accepted = true;
                break;
            }
            lr *= 0.5;
        }
        ++r.iterations;
        if (!accepted) {
            r.termination = stationary(theta, g);
            break;
        }
        lr *= cfg.growth;
        r.loss_history.push_back(current);
        if (bounds.update(theta)) {
            r.termination = Termination::BoundHit;
            break;
        }
    }
    r.theta = theta.values;
    return r;
}

TrainResult minibatch_sgd(const SampleLoss& loss, std::size_t n_samples, ParamVector theta0, const TrainConfig& cfg) {
    check_config(cfg);
    if (n_samples == 0) {
        throw InvalidArgument("minibatch_sgd: empty training set");
    }
    if (cfg.batch_size < 1 || static_cast<std::size_t>(cfg.batch_size) > n_samples) {
        throw InvalidArgument("minibatch_sgd: batch size must lie in [1, n_train]");
    }
    ParamVector theta = std::move(theta0);
    theta.clip();
    const SampleLoss per_sample = penalized(loss, cfg.penalty);
    auto sum_over = [&](std::span<const std::size_t> idx, std::span<const double> t, bool raw) {
        double s = 0.0;
        for (std::size_t i : idx) {
            s += raw ? loss(i, t) : per_sample(i, t);
        }
        return s;
    };
    std::vector<std::size_t> all(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        all[i] = i;
    }
    const Loss full_raw = [&](std::span<const double> t) { return sum_over(all, t, true); };
    const Loss full = [&](std::span<const double> t) { return sum_over(all, t, false); };

    TrainResult r;
    r.labels = theta.labels;
    r.initial_loss = start_loss(full_raw, theta);
    double current = r.initial_loss;
    r.loss_history.push_back(current);
    r.termination = Termination::MaxIters;

    const std::size_t d = theta.size();
    const std::size_t bs = static_cast<std::size_t>(cfg.batch_size);
    const std::size_t n_batches = n_samples / bs;
    const double norm = r.initial_loss > 0.0 ? r.initial_loss : 1.0;
    const double batch_scale = static_cast<double>(n_samples) / static_cast<double>(bs);
    const bool precondition = cfg.step_rule == StepRule::Preconditioned;

    double lr = cfg.learning_rate;
    std::vector<double> step(d, cfg.learning_rate);
    std::vector<double> g_prev(d, 0.0);
    std::vector<double> g_full = grad_fd(full, theta, cfg.fd_step);
    BoundWatch bounds(cfg.bound_patience);

    for (int epoch = 0; epoch < cfg.max_iters; ++epoch) {
        std::vector<double> scale(d, 0.0);
        if (precondition) {
            for (std::size_t k = 0; k < d; ++k) {
                const double agree = g_full[k] * g_prev[k];
                if (agree > 0.0) {
                    step[k] = std::min(step[k] * cfg.growth, cfg.max_step);
                } else if (agree < 0.0) {
                    step[k] *= 0.5;
                }
                scale[k] = step[k] / std::max(std::abs(g_full[k]), 1e-300);
            }
        }

        const ParamVector start = theta;
        RandomStream rng(cfg.seed, (cfg.shuffle_stream << 32) + static_cast<std::uint64_t>(epoch));
        const std::vector<std::size_t> perm = rng.permutation(n_samples);
        for (std::size_t b = 0; b < n_batches; ++b) {
            const std::span<const std::size_t> idx(perm.data() + b * bs, bs);
            const Loss batch = [&](std::span<const double> t) { return batch_scale * sum_over(idx, t, false); };
            const std::vector<double> g = grad_fd(batch, theta, cfg.fd_step);
            for (std::size_t k = 0; k < d; ++k) {
                double delta = 0.0;
                if (precondition) {
                    delta = std::clamp(scale[k] * g[k], -step[k], step[k]) / static_cast<double>(n_batches);
                } else {
                    delta = lr * g[k] / norm;
                }
                theta.values[k] -= delta;
            }
            theta.clip();
        }

        const double value = full(theta.values);
        ++r.iterations;
        if (!(value <= current)) {
            theta = start;
            lr *= 0.5;
            for (double& s : step) {
                s *= 0.5;
            }
            std::fill(g_prev.begin(), g_prev.end(), 0.0);
        } else {
            current = value;
            g_prev = g_full;
            g_full = grad_fd(full, theta, cfg.fd_step);
        }
        r.loss_history.push_back(current);

        const double largest_step = precondition ? *std::max_element(step.begin(), step.end()) : lr;
        if (current == 0.0 || relative_gradient(theta, g_full, current) < cfg.grad_tol || largest_step < 1e-10) {
            r.termination = current == 0.0 ? Termination::GradTol : stationary(theta, g_full);
            break;
        }
        if (bounds.update(theta)) {
            r.termination = Termination::BoundHit;
            break;
        }
    }
    r.theta = theta.values;
    return r;
}

TrainResult train_sequential(const LevelSampleLoss& loss, std::size_t n_samples, int n_levels, ParamVector theta0,
                             const TrainConfig& cfg) {
    if (n_levels < 1) {
        throw InvalidArgument("train_sequential: at least one level required");
    }
    if (theta0.size() % static_cast<std::size_t>(n_levels) != 0) {
        throw InvalidArgument("train_sequential: parameter count must split evenly over the levels");
    }
    const std::size_t per_level = theta0.size() / n_levels;
    ParamVector theta = std::move(theta0);
    theta.clip();

    auto full_loss = [&](std::span<const double> t) {
        double s = 0.0;
        for (std::size_t i = 0; i < n_samples; ++i) {
            s += loss(0, i, t);
        }
        return s;
    };
    const Loss full = penalized(Loss(full_loss), cfg.penalty);

    TrainResult r;
    r.labels = theta.labels;
    r.initial_loss = start_loss(full_loss, theta);
    r.loss_history.push_back(r.initial_loss);

    bool bound_hit = false;
    bool max_iters = false;
    for (int level = 0; level < n_levels; ++level) {
        const std::size_t offset = per_level * level;
        ParamVector sub;
        for (std::size_t k = 0; k < per_level; ++k) {
            sub.values.push_back(theta.values[offset + k]);
            sub.lower.push_back(theta.lower[offset + k]);
            sub.upper.push_back(theta.upper[offset + k]);
            sub.labels.push_back(theta.labels[offset + k]);
        }
        const std::vector<double> frozen = theta.values;
        const SampleLoss tail = [&, level, offset](std::size_t i, std::span<const double> s) {
            std::vector<double> t = frozen;
            std::copy(s.begin(), s.end(), t.begin() + static_cast<std::ptrdiff_t>(offset));
            return loss(level, i, t);
        };
        TrainConfig level_cfg = cfg;
        level_cfg.shuffle_stream = cfg.shuffle_stream + static_cast<std::uint64_t>(level);
        TrainResult stage = minibatch_sgd(tail, n_samples, std::move(sub), level_cfg);
        std::copy(stage.theta.begin(), stage.theta.end(), theta.values.begin() + static_cast<std::ptrdiff_t>(offset));
        bound_hit = bound_hit || stage.termination == Termination::BoundHit;
        max_iters = max_iters || stage.termination == Termination::MaxIters;
        r.iterations += stage.iterations;
        r.stages.push_back(std::move(stage));
        r.loss_history.push_back(full(theta.values));
    }
    r.termination = bound_hit ? Termination::BoundHit : (max_iters ? Termination::MaxIters : Termination::GradTol);
    r.theta = theta.values;
    return r;
}

namespace {

nlohmann::json to_json_value(const TrainResult& r) {
    nlohmann::json j;
    j["labels"] = r.labels;
    j["values"] = r.theta;
    j["loss_history"] = r.loss_history;
    j["termination"] = std::string(termination_name(r.termination));
    j["initial_loss"] = r.initial_loss;
    j["iterations"] = r.iterations;
    if (!r.stages.empty()) {
        nlohmann::json stages = nlohmann::json::array();
        for (const TrainResult& s : r.stages) {
            stages.push_back(to_json_value(s));
        }
        j["stages"] = std::move(stages);
    }
    return j;
}

}

std::string train_result_to_json(const TrainResult& r) {
    return to_json_value(r).dump(2);
}

}
