#pragma once

#include "tscheme/euler_state.hpp"
#include "tscheme/finite_volume.hpp"
#include "tscheme/grid.hpp"
#include "tscheme/ode_bdf.hpp"

#include <functional>
#include <span>
#include <vector>

namespace tscheme {

enum class Projection { Pointwise, CellAverage };

struct ReferenceConfig {
    int fine_n = 1000;
    double cfl_safety = 0.9;
    Projection projection = Projection::Pointwise;
    std::vector<int> levels;  // coarse step indices, ascending; 0 is the initial datum
};

using ScalarFunction = std::function<double(double)>;
using ScalarMean = std::function<double(double, double)>;
using EulerMean = std::function<Conserved(double, double)>;

// Forward Euler in time, central second differences in space, zero Dirichlet data,
// dt_fine = cfl_safety dx_fine^2 / (2c), last step of every segment shortened to land on the output time.
// The sine vectors diagonalise the fine operator, so the marching is evaluated mode by mode.
class HeatReference {
public:
    HeatReference(double c, ReferenceConfig cfg, SpaceGrid coarse, TimeGrid time);

    std::vector<ScalarField> solve(const ScalarFunction& u0) const;

    const SpaceGrid& fine_grid() const noexcept { return fine_; }
    double fine_dt() const noexcept { return dt_fine_; }

private:
    double c_;
    ReferenceConfig cfg_;
    SpaceGrid coarse_;
    SpaceGrid fine_;
    double dt_fine_;
    std::vector<int> sample_index_;       // fine node sampled by each coarse node
    std::vector<double> sines_;           // fine_n x fine_n, mode-major
    std::vector<std::vector<double>> mode_factor_;  // per output level
};

std::vector<ScalarField> heat_reference(const ScalarFunction& u0, double c, const ReferenceConfig& cfg,
                                        const SpaceGrid& coarse, const TimeGrid& time);
// Literal time marching of the same fine scheme (slow; used to validate the modal evaluation).
std::vector<ScalarField> heat_reference_marching(const ScalarFunction& u0, double c, const ReferenceConfig& cfg,
                                                 const SpaceGrid& coarse, const TimeGrid& time);

// Explicit upwind on a periodic fine grid at Courant number cfl_safety.
std::vector<ScalarField> advection_reference(const ScalarFunction& u0, double c, const ReferenceConfig& cfg,
                                             const SpaceGrid& coarse, const TimeGrid& time);

struct ScalarMarch {
    std::vector<ScalarField> levels;
    long steps = 0;
};

struct SystemMarch {
    std::vector<SystemField> levels;
    long steps = 0;
};

// Standard Rusanov (w = 0.5) with CFL-limited steps landing on each output time.
ScalarMarch rusanov_march(const ScalarField& u0, const ScalarFlux& flux, double cfl, std::span<const double> times);
SystemMarch rusanov_march(const SystemField& u0, const Gas& gas, double cfl, std::span<const double> times);

std::vector<ScalarField> burgers_reference(const ScalarMean& u0_mean, const ReferenceConfig& cfg,
                                           const SpaceGrid& coarse, const TimeGrid& time);
std::vector<SystemField> euler_reference(const EulerMean& u0_mean, const Gas& gas, const ReferenceConfig& cfg,
                                         const SpaceGrid& coarse, const TimeGrid& time);

// Two-stage strong-stability-preserving Runge-Kutta; returns n_steps + 1 states.
std::vector<State> ssprk2_solve(const OdeProblem& problem, const State& u0, double t_final, int n_steps);

}
