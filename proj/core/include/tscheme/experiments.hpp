#pragma once

#include "tscheme/euler_state.hpp"
#include "tscheme/evaluator.hpp"
#include "tscheme/grid.hpp"
#include "tscheme/linear_pde.hpp"
#include "tscheme/ode_bdf.hpp"
#include "tscheme/random_data.hpp"
#include "tscheme/trainer.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace tscheme {

// Second-level error of the decay problem over a grid of g values.
struct DecayScan {
    double c = 1.0;
    std::vector<ScanPoint> points;
    double g_star = 0.0;        // grid argmin
    double g_continuous = 0.0;  // root of U_2(g) = exact
    double ratio = 0.0;         // |err(0.5)| / |err(g_star)|
};

DecayScan fig1_scan(double c, double dt = 0.5, double u0 = 1.0, double g_lo = -1.0, double g_hi = 1.0,
                    double step = 0.01);

struct OscillatorRun {
    double c = 1.0;
    std::uint64_t seed = 1;
    int train_size = 10;
    int test_size = 50;
    double dt = 1.0 / 3.0;
    OscillatorStart start = OscillatorStart::Displaced;
    TrainConfig train;
};

struct LogisticRun {
    double c = 1.0;
    std::uint64_t seed = 1;
    int train_size = 10;
    int test_size = 50;
    double dt = 0.5;
    TrainConfig train;
};

struct OdeOutcome {
    Dataset data;
    TrainResult result;
    TestErrors standard;
    TestErrors trained;
    double gain = 0.0;
    int skipped = 0;  // test samples without a real solution of the implicit step
};

OdeOutcome run_oscillator(const OscillatorRun& run);
OdeOutcome run_logistic(const LogisticRun& run);

struct HeatRun {
    double c = 1.0;
    Family family = Family::KarhunenLoeve;
    std::uint64_t seed = 1;
    int n = 10;
    double dt = 0.05;
    int train_size = 20;
    int test_size = 100;
    int fine_n = 1000;
    TrainConfig train;
};

struct LinearOutcome {
    Dataset data;
    TrainResult result;
    std::array<TestErrors, 4> named;  // S1..S4
    TestErrors trained;
    std::array<double, 4> gains{};    // over S1..S4
    double best_gain = 0.0;           // over the best of S1..S4
};

HeatLevelParams heat_params(std::span<const double> theta);
std::vector<ScalarField> heat_initial(const Dataset& data, bool test, const SpaceGrid& grid);
ScalarField heat_initial(Family family, std::span<const double> record, const SpaceGrid& grid);
LinearOutcome run_heat(const HeatRun& run);

struct AdvectionRun {
    double c = 0.5;
    std::uint64_t seed = 1;
    int n = 10;
    double dt = 0.5;
    int train_size = 20;
    int test_size = 100;
    int fine_n = 1000;
    TrainConfig train;
};

AdvLevelParams adv_params(std::span<const double> theta);
ScalarField advection_initial(std::span<const double> record, const SpaceGrid& grid);
LinearOutcome run_advection(const AdvectionRun& run);

struct BurgersRun {
    Family family = Family::KarhunenLoeve;
    std::uint64_t seed = 1;
    int n = 10;
    double dt = 0.05;
    int steps = 2;
    int window = 3;
    int train_size = 20;
    int test_size = 100;
    int fine_n = 1000;
    double cfl = 0.9;
    std::vector<int> resolutions{10, 20, 50, 100};
    TrainConfig train;
};

struct SpeedupOutcome {
    std::vector<ResolutionError> standard;  // final-time mean errors, first entry on the trained grid
    double trained_final_error = 0.0;
    SpeedupResult extrapolated;
};

struct BurgersOutcome {
    Dataset data;
    TrainResult result;
    TestErrors standard;
    TestErrors trained;
    double gain = 0.0;
    SpeedupOutcome speed;
};

ScalarField burgers_initial(Family family, std::span<const double> record, const SpaceGrid& grid);
// Coarse trajectory levels 0..steps with pooled weights, steps x groups of them.
std::vector<ScalarField> burgers_trajectory(const ScalarField& u0, std::span<const double> pooled, int window,
                                            double dt, int steps);
BurgersOutcome run_burgers(const BurgersRun& run);

struct EulerRun {
    std::uint64_t seed = 1;
    int n = 20;
    double dt = 0.03;
    int steps = 5;
    int window = 3;
    int train_size = 50;
    int test_size = 1000;
    int fine_n = 1600;
    double cfl = 0.9;
    double contact_halfwidth = 0.075;
    double coarse_cfl_limit = 1.2;  // the fixed coarse step exceeds CFL 1 on some samples
    Gas gas;
    std::vector<int> resolutions{20, 40, 80, 160};
    TrainConfig train;
};

struct EulerOutcome {
    Dataset data;
    TrainResult result;
    TestErrors standard;
    TestErrors trained;
    double gain = 0.0;
    double order = 0.0;
    SpeedupOutcome speed;
    std::vector<double> wave_error_standard;  // per test sample, contact region excluded from density
    std::vector<double> wave_error_trained;
    double wave_fraction = 0.0;               // share of test samples where the trained scheme wins
    int weights_moved = 0;                    // weights at least 0.01 away from 0.5
};

SystemField euler_initial(std::span<const double> record, const SpaceGrid& grid, const Gas& gas);
std::vector<SystemField> euler_trajectory(const SystemField& u0, std::span<const double> pooled, int window,
                                          double dt, int steps, const Gas& gas, double max_courant = 1.0);
// dx * sum over cells of |rho| + |v| + |p| differences.
double euler_primitive_l1(const SystemField& u, const SystemField& ref, const Gas& gas);
EulerOutcome run_euler(const EulerRun& run);

}
