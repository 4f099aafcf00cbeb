#pragma once

#include "tscheme/euler_state.hpp"
#include "tscheme/grid.hpp"

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace tscheme {

struct ScalarFlux {
    std::function<double(double)> f;
    std::function<double(double)> df;
};

ScalarFlux burgers_flux();  // f(u) = u^2 / 2

// (f(uL) + f(uR)) / 2 - w max(|f'(uL)|, |f'(uR)|) (uR - uL)
double weighted_flux_scalar(double u_left, double u_right, double w, const ScalarFlux& flux);

// Faces are numbered by the cell on their right: face k is x_{k-1/2}. Periodic grids have n faces
// (face 0 is the wrap face), all other boundaries n + 1.
int interface_count(const SpaceGrid& grid);

ScalarField fv_step_scalar(const ScalarField& u, std::span<const double> weights, const ScalarFlux& flux, double dt);

// +infinity when the signal speed vanishes.
double cfl_max_dt(const ScalarField& u, const ScalarFlux& flux, double cfl_number);
double cfl_max_dt(const SystemField& u, const Gas& gas, double cfl_number);

struct WeightLayout {
    int n_cells = 0;
    Boundary boundary = Boundary::Periodic;
    int window = 1;
    int n_interfaces = 0;
    std::vector<std::vector<int>> groups;  // interior face indices per group, left to right

    int n_groups() const { return static_cast<int>(groups.size()); }
};

// Windows of `window` interior faces from the left; a short remainder joins the last window.
WeightLayout make_weight_layout(const SpaceGrid& grid, int window);

// Periodic wrap face takes the mean of the first and last group; transparent boundary faces
// copy the nearest group.
std::vector<double> expand_pooled(const WeightLayout& layout, std::span<const double> pooled);

Conserved conserved_at(const SystemField& u, std::size_t j);
SystemField make_euler_field(const SpaceGrid& grid, std::span<const Conserved> cells);
std::array<double, 3> euler_physical_flux(const Conserved& u, const Primitive& w);
std::array<double, 3> weighted_flux_euler(const Conserved& left, const Conserved& right, double w, const Gas& gas);

// max_courant bounds dt * max(|v| + a) / dx; steps above it throw CflViolation.
SystemField fv_step_euler(const SystemField& u, std::span<const double> weights, const Gas& gas, double dt,
                          double max_courant = 1.0);

}
