#include "tscheme/finite_volume.hpp"
#include "tscheme/linear_pde.hpp"
#include "tscheme/random_data.hpp"
#include "tscheme/reference.hpp"
#include "tscheme/scheme_graph.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace tscheme;

namespace {

std::vector<double> random_values(std::size_t n, double lo, double hi) {
    RandomStream s(7, 0);
    std::vector<double> v(n);
    for (double& x : v) {
        x = s.uniform(lo, hi);
    }
    return v;
}

void heat_level(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ScalarField u(make_grid(0, 1, n, Layout::NodeCentered, Boundary::DirichletZero), random_values(n, -1, 1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(heat_step(u, {0.5, -1.0 / 12.0, 4.0 / 3.0}, 1.0, 0.05));
    }
}
BENCHMARK(heat_level)->Arg(10)->Arg(20);

void advection_level(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ScalarField u(make_grid(0, 1, n, Layout::NodeCentered, Boundary::Periodic), random_values(n, -1, 1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(adv_step(u, {0.5, -1.0}, 2.0, 0.5));
    }
}
BENCHMARK(advection_level)->Arg(10)->Arg(20);

void burgers_step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SpaceGrid g = make_grid(0, 1, n, Layout::CellCentered, Boundary::Periodic);
    const ScalarField u(g, random_values(n, -1, 1));
    const std::vector<double> w(interface_count(g), 0.5);
    const ScalarFlux f = burgers_flux();
    const double dt = 0.9 * g.spacing;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fv_step_scalar(u, w, f, dt));
    }
}
BENCHMARK(burgers_step)->Arg(30)->Arg(1000);

void euler_step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SpaceGrid g = make_grid(0, 1, n, Layout::CellCentered, Boundary::Transparent);
    const Gas gas;
    std::vector<Conserved> cells(n);
    for (int i = 0; i < n; ++i) {
        cells[i] = prim_to_cons(i < n / 2 ? Primitive{1.0, 0.0, 1.0} : Primitive{0.125, 0.0, 0.1}, gas.gamma);
    }
    const SystemField u = make_euler_field(g, cells);
    const std::vector<double> w(interface_count(g), 0.5);
    const double dt = cfl_max_dt(u, gas, 0.9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fv_step_euler(u, w, gas, dt, 1.0));
    }
}
BENCHMARK(euler_step)->Arg(50)->Arg(1600);

void rusanov_graph(benchmark::State& state) {
    const SchemeGraph graph = build_rusanov_graph(0.6, 0.4, 0.5);
    const std::vector<double> in{0.3, -0.2, 0.8};
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_graph(graph, in));
    }
}
BENCHMARK(rusanov_graph);

void relu_graph(benchmark::State& state) {
    const SchemeGraph graph = relu_expand(build_rusanov_graph(0.6, 0.4, 0.5));
    const std::vector<double> in{0.3, -0.2, 0.8};
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_graph(graph, in));
    }
}
BENCHMARK(relu_graph);

void heat_reference_solve(benchmark::State& state) {
    ReferenceConfig cfg;
    cfg.fine_n = static_cast<int>(state.range(0));
    cfg.levels = {1, 2, 3, 4, 5};
    const SpaceGrid coarse = make_grid(0, 1, 10, Layout::NodeCentered, Boundary::DirichletZero);
    const HeatReference ref(1.0, cfg, coarse, make_time_grid(0.05, 5));
    auto u0 = [](double x) { return std::sin(std::numbers::pi * x) + 0.3 * std::sin(3 * std::numbers::pi * x); };
    for (auto _ : state) {
        benchmark::DoNotOptimize(ref.solve(u0));
    }
}
BENCHMARK(heat_reference_solve)->Arg(120)->Arg(1099);

}

BENCHMARK_MAIN();
