#include "tscheme/reference.hpp"

#include "tscheme/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace tscheme {

namespace {

struct Segment {
    long full = 0;
    double rem = 0.0;
};

// Full steps of size dt plus one shortened step covering `duration` exactly.
Segment split(double duration, double dt) {
    if (!(duration > 0.0)) {
        return {};
    }
    Segment s;
    s.full = static_cast<long>(std::floor(duration / dt));
    s.rem = duration - s.full * dt;
    if (s.rem >= dt * (1.0 - 1e-12)) {
        ++s.full;
        s.rem = 0.0;
    }
    if (s.rem <= 1e-12 * dt) {
        s.rem = 0.0;
    }
    return s;
}

void check_levels(const ReferenceConfig& cfg, const TimeGrid& time) {
    if (cfg.levels.empty()) {
        throw InvalidArgument("reference: no output levels requested");
    }
    for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
        const int l = cfg.levels[i];
        if (l < 0 || l > time.n_steps) {
            throw InvalidArgument("reference: output level " + std::to_string(l) + " outside the coarse time grid");
        }
        if (i > 0 && l <= cfg.levels[i - 1]) {
            throw InvalidArgument("reference: output levels must be strictly increasing");
        }
    }
}

SpaceGrid heat_fine_grid(const ReferenceConfig& cfg, const SpaceGrid& coarse) {
    if (coarse.layout != Layout::NodeCentered || coarse.boundary != Boundary::DirichletZero) {
        throw IncompatibleGrid("heat reference: coarse grid must be node-centered with zero Dirichlet boundary");
    }
    if ((cfg.fine_n + 1) % (coarse.n + 1) != 0) {
        throw IncompatibleGrid("heat reference: fine spacing is not an integer refinement of the coarse spacing");
    }
    return make_grid(coarse.x_left, coarse.x_right, cfg.fine_n, Layout::NodeCentered, Boundary::DirichletZero);
}

double heat_fine_dt(double c, const ReferenceConfig& cfg, const SpaceGrid& fine) {
    if (!(c > 0.0)) {
        throw InvalidArgument("heat reference: c must be positive");
    }
    if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) {
        throw InvalidArgument("heat reference: cfl_safety must lie in (0, 1]");
    }
    return cfg.cfl_safety * fine.spacing * fine.spacing / (2.0 * c);
}

std::vector<double> sample_values(const SpaceGrid& grid, const ScalarFunction& f) {
    std::vector<double> v(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        v[i] = f(grid.coordinate(i));
    }
    return v;
}

}

HeatReference::HeatReference(double c, ReferenceConfig cfg, SpaceGrid coarse, TimeGrid time)
    : c_(c), cfg_(std::move(cfg)), coarse_(coarse), fine_(heat_fine_grid(cfg_, coarse)),
      dt_fine_(heat_fine_dt(c, cfg_, fine_)) {
    check_levels(cfg_, time);
    const int n = fine_.n;
    for (int j = 0; j < coarse_.n; ++j) {
        sample_index_.push_back(nearest_index(fine_, coarse_.coordinate(j)));
    }
    sines_.resize(static_cast<std::size_t>(n) * n);
    for (int k = 1; k <= n; ++k) {
        for (int i = 0; i < n; ++i) {
            sines_[static_cast<std::size_t>(k - 1) * n + i] = std::sin(std::numbers::pi * k * (i + 1) / (n + 1));
        }
    }
    const double h2 = fine_.spacing * fine_.spacing;
    std::vector<double> s2(n);
    for (int k = 1; k <= n; ++k) {
        const double s = std::sin(std::numbers::pi * k / (2.0 * (n + 1)));
        s2[k - 1] = s * s;
    }
    std::vector<double> factor(n, 1.0);
    double t = 0.0;
    for (int level : cfg_.levels) {
        const double target = time.time(level);
        const Segment seg = split(target - t, dt_fine_);
        for (int k = 0; k < n; ++k) {
            const double mu_full = 1.0 - 4.0 * c_ * dt_fine_ / h2 * s2[k];
            const double mu_rem = 1.0 - 4.0 * c_ * seg.rem / h2 * s2[k];
            factor[k] *= std::pow(mu_full, static_cast<double>(seg.full)) * mu_rem;
        }
        t = target;
        mode_factor_.push_back(factor);
    }
}

std::vector<ScalarField> HeatReference::solve(const ScalarFunction& u0) const {
    const int n = fine_.n;
    const std::vector<double> fine0 = sample_values(fine_, u0);
    std::vector<double> coef(n, 0.0);
    for (int k = 0; k < n; ++k) {
        const double* row = &sines_[static_cast<std::size_t>(k) * n];
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            s += row[i] * fine0[i];
        }
        coef[k] = 2.0 * s / (n + 1);
    }
    std::vector<ScalarField> out;
    out.reserve(cfg_.levels.size());
    for (std::size_t l = 0; l < cfg_.levels.size(); ++l) {
        std::vector<double> v(coarse_.n);
        for (int j = 0; j < coarse_.n; ++j) {
            const int i = sample_index_[j];
            if (cfg_.levels[l] == 0) {
                v[j] = fine0[i];
                continue;
            }
            double s = 0.0;
            for (int k = 0; k < n; ++k) {
                s += coef[k] * mode_factor_[l][k] * sines_[static_cast<std::size_t>(k) * n + i];
            }
            v[j] = s;
        }
        out.emplace_back(coarse_, std::move(v));
    }
    return out;
}

std::vector<ScalarField> heat_reference(const ScalarFunction& u0, double c, const ReferenceConfig& cfg,
                                        const SpaceGrid& coarse, const TimeGrid& time) {
    return HeatReference(c, cfg, coarse, time).solve(u0);
}

std::vector<ScalarField> heat_reference_marching(const ScalarFunction& u0, double c, const ReferenceConfig& cfg,
                                                 const SpaceGrid& coarse, const TimeGrid& time) {
    check_levels(cfg, time);
    const SpaceGrid fine = heat_fine_grid(cfg, coarse);
    const double dt_fine = heat_fine_dt(c, cfg, fine);
    const int n = fine.n;
    const double h2 = fine.spacing * fine.spacing;
    std::vector<double> u = sample_values(fine, u0);
    std::vector<double> next(n);
    auto advance = [&](double tau) {
        const double r = c * tau / h2;
        for (int i = 0; i < n; ++i) {
            const double left = i > 0 ? u[i - 1] : 0.0;
            const double right = i + 1 < n ? u[i + 1] : 0.0;
            next[i] = u[i] + r * (left - 2.0 * u[i] + right);
        }
        u.swap(next);
    };
    std::vector<ScalarField> out;
    double t = 0.0;
    for (int level : cfg.levels) {
        const double target = time.time(level);
        const Segment seg = split(target - t, dt_fine);
        for (long s = 0; s < seg.full; ++s) {
            advance(dt_fine);
        }
        if (seg.rem > 0.0) {
            advance(seg.rem);
        }
        t = target;
        out.push_back(project_pointwise(ScalarField(fine, u), coarse));
    }
    return out;
}

std::vector<ScalarField> advection_reference(const ScalarFunction& u0, double c, const ReferenceConfig& cfg,
                                             const SpaceGrid& coarse, const TimeGrid& time) {
    check_levels(cfg, time);
    if (coarse.boundary != Boundary::Periodic) {
        throw IncompatibleGrid("advection reference: coarse grid must be periodic");
    }
    if (cfg.fine_n % coarse.n != 0) {
        throw IncompatibleGrid("advection reference: fine_n must be a multiple of the coarse node count");
    }
    if (!(c >= 0.0)) {
        throw InvalidArgument("advection reference: c must be non-negative");
    }
    if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) {
        throw InvalidArgument("advection reference: cfl_safety must lie in (0, 1]");
    }
    const SpaceGrid fine = make_grid(coarse.x_left, coarse.x_right, cfg.fine_n, coarse.layout, Boundary::Periodic);
    const int n = fine.n;
    std::vector<double> u = sample_values(fine, u0);
    std::vector<double> next(n);
    auto advance = [&](double tau) {
        const double nu = c * tau / fine.spacing;
        for (int i = 0; i < n; ++i) {
            const double left = u[(i + n - 1) % n];
            next[i] = u[i] - nu * (u[i] - left);
        }
        u.swap(next);
    };
    std::vector<ScalarField> out;
    double t = 0.0;
    for (int level : cfg.levels) {
        const double target = time.time(level);
        if (c > 0.0) {
            const double dt_fine = cfg.cfl_safety * fine.spacing / c;
            const Segment seg = split(target - t, dt_fine);
            for (long s = 0; s < seg.full; ++s) {
                advance(dt_fine);
            }
            if (seg.rem > 0.0) {
                advance(seg.rem);
            }
        }
        t = target;
        out.push_back(project_pointwise(ScalarField(fine, u), coarse));
    }
    return out;
}

namespace {

void check_times(std::span<const double> times) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1])) {
            throw InvalidArgument("rusanov_march: output times must be non-negative and ascending");
        }
    }
}

constexpr double landing_tol = 1e-13;

}

ScalarMarch rusanov_march(const ScalarField& u0, const ScalarFlux& flux, double cfl, std::span<const double> times) {
    check_times(times);
    const std::vector<double> weights(interface_count(u0.grid()), 0.5);
    ScalarMarch out;
    ScalarField u = u0;
    double t = 0.0;
    for (double target : times) {
        while (target - t > landing_tol * std::max(1.0, target)) {
            const double dt = std::min(cfl_max_dt(u, flux, cfl), target - t);
            u = fv_step_scalar(u, weights, flux, dt);
            t += dt;
            ++out.steps;
        }
        t = target;
        out.levels.push_back(u);
    }
    return out;
}

SystemMarch rusanov_march(const SystemField& u0, const Gas& gas, double cfl, std::span<const double> times) {
    check_times(times);
    const std::vector<double> weights(interface_count(u0.grid()), 0.5);
    SystemMarch out;
    SystemField u = u0;
    double t = 0.0;
    for (double target : times) {
        while (target - t > landing_tol * std::max(1.0, target)) {
            const double dt = std::min(cfl_max_dt(u, gas, cfl), target - t);
            u = fv_step_euler(u, weights, gas, dt);
            t += dt;
            ++out.steps;
        }
        t = target;
        out.levels.push_back(u);
    }
    return out;
}

namespace {

int cell_ratio_check(const ReferenceConfig& cfg, const SpaceGrid& coarse, const char* what) {
    if (coarse.layout != Layout::CellCentered) {
        throw IncompatibleGrid(std::string(what) + ": coarse grid must be cell-centered");
    }
    if (cfg.fine_n % coarse.n != 0) {
        throw IncompatibleGrid(std::string(what) + ": fine_n must be a multiple of the coarse cell count");
    }
    if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) {
        throw InvalidArgument(std::string(what) + ": cfl_safety must lie in (0, 1]");
    }
    return cfg.fine_n / coarse.n;
}

std::vector<double> level_times(const ReferenceConfig& cfg, const TimeGrid& time) {
    std::vector<double> t;
    for (int l : cfg.levels) {
        t.push_back(time.time(l));
    }
    return t;
}

}

std::vector<ScalarField> burgers_reference(const ScalarMean& u0_mean, const ReferenceConfig& cfg,
                                           const SpaceGrid& coarse, const TimeGrid& time) {
    check_levels(cfg, time);
    cell_ratio_check(cfg, coarse, "burgers reference");
    const SpaceGrid fine = make_grid(coarse.x_left, coarse.x_right, cfg.fine_n, Layout::CellCentered, coarse.boundary);
    const std::vector<double> times = level_times(cfg, time);
    const ScalarMarch march = rusanov_march(ScalarField::average(fine, u0_mean), burgers_flux(), cfg.cfl_safety, times);
    std::vector<ScalarField> out;
    for (const ScalarField& f : march.levels) {
        out.push_back(cfg.projection == Projection::CellAverage ? project_cell_average(f, coarse)
                                                                : project_pointwise(f, coarse));
    }
    return out;
}

std::vector<SystemField> euler_reference(const EulerMean& u0_mean, const Gas& gas, const ReferenceConfig& cfg,
                                         const SpaceGrid& coarse, const TimeGrid& time) {
    check_levels(cfg, time);
    cell_ratio_check(cfg, coarse, "euler reference");
    const SpaceGrid fine = make_grid(coarse.x_left, coarse.x_right, cfg.fine_n, Layout::CellCentered, coarse.boundary);
    std::vector<Conserved> cells(fine.n);
    for (int i = 0; i < fine.n; ++i) {
        cells[i] = u0_mean(fine.cell_left(i), fine.cell_right(i));
        cons_to_prim(cells[i], gas.gamma, i);
    }
    const std::vector<double> times = level_times(cfg, time);
    const SystemMarch march = rusanov_march(make_euler_field(fine, cells), gas, cfg.cfl_safety, times);
    std::vector<SystemField> out;
    for (const SystemField& f : march.levels) {
        out.push_back(project_cell_average(f, coarse));
    }
    return out;
}

std::vector<State> ssprk2_solve(const OdeProblem& problem, const State& u0, double t_final, int n_steps) {
    if (n_steps < 1) {
        throw InvalidArgument("ssprk2_solve: n_steps must be positive");
    }
    if (static_cast<int>(u0.size()) != problem.dim) {
        throw InvalidArgument("ssprk2_solve: state size does not match problem dimension");
    }
    const double dt = t_final / n_steps;
    std::vector<State> traj{u0};
    traj.reserve(n_steps + 1);
    State u = u0;
    for (int s = 0; s < n_steps; ++s) {
        const State f0 = problem.rhs(u);
        State stage(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            stage[i] = u[i] + dt * f0[i];
        }
        const State f1 = problem.rhs(stage);
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] = 0.5 * u[i] + 0.5 * (stage[i] + dt * f1[i]);
        }
        traj.push_back(u);
    }
    return traj;
}

}
