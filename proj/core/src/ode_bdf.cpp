#include "tscheme/ode_bdf.hpp"

#include "tscheme/dense_lu.hpp"
#include "tscheme/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tscheme {

OdeProblem zero_problem(int dim) {
    return {dim, [dim](std::span<const double>) { return State(dim, 0.0); },
            [dim](std::span<const double>) { return std::vector<double>(dim * dim, 0.0); }};
}

OdeProblem decay_problem(double c) {
    return {1, [c](std::span<const double> u) { return State{-c * u[0]}; },
            [c](std::span<const double>) { return std::vector<double>{-c}; }};
}

OdeProblem oscillator_problem(double c) {
    return {2, [c](std::span<const double> u) { return State{-c * u[1], c * u[0]}; },
            [c](std::span<const double>) { return std::vector<double>{0.0, -c, c, 0.0}; }};
}

OdeProblem logistic_problem(double c) {
    return {1, [c](std::span<const double> u) { return State{c * u[0] * (1.0 - u[0])}; },
            [c](std::span<const double> u) { return std::vector<double>{c * (1.0 - 2.0 * u[0])}; }};
}

State bdf_g_step(std::span<const double> u_n, std::span<const double> u_np1, double g, double dt,
                 const OdeProblem& problem, const NewtonOptions& options) {
    const std::size_t d = problem.dim;
    if (u_n.size() != d || u_np1.size() != d) {
        throw InvalidArgument("bdf_g_step: state size does not match problem dimension");
    }
    State rhs(d);
    for (std::size_t i = 0; i < d; ++i) {
        rhs[i] = (1.0 + 2.0 * g) * u_np1[i] - g * u_n[i];
        if (!std::isfinite(rhs[i])) {
            throw NonFiniteValue("bdf_g_step: non-finite input");
        }
    }
    State u(u_np1.begin(), u_np1.end());
    double residual = 0.0;
    for (int it = 0; it <= options.max_iters; ++it) {
        const State f = problem.rhs(u);
        State r(d);
        residual = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            r[i] = (1.0 + g) * u[i] - dt * f[i] - rhs[i];
            residual = std::max(residual, std::abs(r[i]));
        }
        if (!std::isfinite(residual)) {
            break;
        }
        if (residual < options.tol) {
            return u;
        }
        if (it == options.max_iters) {
            break;
        }
        const std::vector<double> jf = problem.jacobian(u);
        DenseMatrix jac(d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                jac(i, j) = (i == j ? 1.0 + g : 0.0) - dt * jf[i * d + j];
            }
        }
        const std::vector<double> delta = lu_solve(std::move(jac), std::move(r));
        for (std::size_t i = 0; i < d; ++i) {
            u[i] -= delta[i];
        }
    }
    throw SolverFailure("bdf_g_step: Newton did not converge, residual " + std::to_string(residual), residual);
}

std::vector<State> bdf_g_trajectory(const State& u0, const State& u1, std::span<const double> g, double dt,
                                    const OdeProblem& problem, const NewtonOptions& options) {
    std::vector<State> levels{u0, u1};
    for (double gk : g) {
        const std::size_t n = levels.size();
        levels.push_back(bdf_g_step(levels[n - 2], levels[n - 1], gk, dt, problem, options));
    }
    return levels;
}

double exact_decay(double u0, double c, double t) {
    return u0 * std::exp(-c * t);
}

std::array<double, 2> exact_oscillator(double u0, double c, double t) {
    return {u0 * std::cos(c * t), u0 * std::sin(c * t)};
}

double exact_logistic(double u0, double c, double t) {
    if (u0 < 0.0) {
        throw InvalidArgument("exact_logistic: u0 must be non-negative");
    }
    if (u0 == 0.0) {
        return 0.0;
    }
    const double denom = u0 + (1.0 - u0) * std::exp(-c * t);
    const double value = u0 / denom;
    if (!(denom > 0.0) || !std::isfinite(value)) {
        throw DomainError("exact_logistic: denominator underflow");
    }
    return value;
}

double decay_second_level(double c, double dt, double u0, double g) {
    const double denom = 1.0 + g + c * dt;
    if (std::abs(denom) < 1e-14) {
        throw SingularParameter("decay_second_level: g hits the pole -(1 + c dt)");
    }
    const double u1 = exact_decay(u0, c, dt);
    return ((1.0 + 2.0 * g) * u1 - g * u0) / denom;
}

double decay_second_level_error(double c, double dt, double u0, double g) {
    return decay_second_level(c, dt, u0, g) - exact_decay(u0, c, 2.0 * dt);
}

std::vector<ScanPoint> loss_scan_decay(double c, double dt, double u0, std::span<const double> g_grid) {
    std::vector<ScanPoint> out;
    out.reserve(g_grid.size());
    for (double g : g_grid) {
        const double e = decay_second_level_error(c, dt, u0, g);
        out.push_back({g, e * e});
    }
    return out;
}

std::vector<State> oscillator_levels(double g2, double g3, const OscillatorSetup& setup, double u0) {
    const State start{u0, setup.start == OscillatorStart::Displaced ? u0 : 0.0};
    const auto e1 = exact_oscillator(u0, setup.c, setup.dt);
    const double g[2] = {g2, g3};
    return bdf_g_trajectory(start, State{e1[0], e1[1]}, g, setup.dt, oscillator_problem(setup.c));
}

double oscillator_sample_error(double g2, double g3, const OscillatorSetup& setup, double u0) {
    const std::vector<State> levels = oscillator_levels(g2, g3, setup, u0);
    double s = 0.0;
    for (int n = 2; n <= 3; ++n) {
        const auto ref = exact_oscillator(u0, setup.c, n * setup.dt);
        for (int k = 0; k < 2; ++k) {
            const double e = levels[n][k] - ref[k];
            s += e * e;
        }
    }
    return 0.5 * s;
}

double loss_oscillator(double g2, double g3, const OscillatorSetup& setup, std::span<const double> train_u0) {
    double s = 0.0;
    for (double u0 : train_u0) {
        s += oscillator_sample_error(g2, g3, setup, u0);
    }
    return s;
}

double logistic_second_level(double g2, const LogisticSetup& setup, double u0) {
    const State start{u0};
    const State first{exact_logistic(u0, setup.c, setup.dt)};
    return bdf_g_step(start, first, g2, setup.dt, logistic_problem(setup.c))[0];
}

double logistic_sample_error(double g2, const LogisticSetup& setup, double u0) {
    return std::abs(logistic_second_level(g2, setup, u0) - exact_logistic(u0, setup.c, 2.0 * setup.dt));
}

double loss_logistic(double g2, const LogisticSetup& setup, std::span<const double> train_u0) {
    double s = 0.0;
    for (double u0 : train_u0) {
        s += logistic_sample_error(g2, setup, u0);
    }
    return s;
}

}
