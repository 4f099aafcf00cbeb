#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tscheme {

enum class Layout { NodeCentered, CellCentered };
enum class Boundary { DirichletZero, Periodic, Transparent };

struct SpaceGrid {
    double x_left = 0.0;
    double x_right = 1.0;
    int n = 1;
    double spacing = 1.0;
    Layout layout = Layout::CellCentered;
    Boundary boundary = Boundary::Periodic;

    // Position of unknown i (0-based). Node-centered Dirichlet unknown i sits at x_left + (i+1)h,
    // node-centered periodic likewise (the last node coincides with x_right), cells at their centres.
    double coordinate(int i) const;
    double cell_left(int i) const { return x_left + i * spacing; }
    double cell_right(int i) const { return x_left + (i + 1) * spacing; }
    double length() const { return x_right - x_left; }
    bool same_interval(const SpaceGrid& other) const;

    friend bool operator==(const SpaceGrid&, const SpaceGrid&) = default;
};

SpaceGrid make_grid(double x_left, double x_right, int n, Layout layout, Boundary boundary);

struct TimeGrid {
    double dt = 1.0;
    int n_steps = 1;

    double final_time() const { return dt * n_steps; }
    double time(int level) const { return dt * level; }
};

TimeGrid make_time_grid(double dt, int n_steps);

class ScalarField {
public:
    ScalarField(SpaceGrid grid, std::vector<double> values);

    static ScalarField zeros(const SpaceGrid& grid);
    static ScalarField sample(const SpaceGrid& grid, const std::function<double(double)>& f);
    // Exact cell averages from a function returning the mean over [a, b].
    static ScalarField average(const SpaceGrid& grid, const std::function<double(double, double)>& mean);

    const SpaceGrid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double sum() const;

private:
    SpaceGrid grid_;
    std::vector<double> values_;
};

class SystemField {
public:
    SystemField(SpaceGrid grid, int m, std::vector<double> values);

    const SpaceGrid& grid() const noexcept { return grid_; }
    int components() const noexcept { return m_; }
    std::size_t cells() const noexcept { return static_cast<std::size_t>(grid_.n); }
    std::span<const double> values() const noexcept { return values_; }
    double operator()(std::size_t j, int k) const { return values_[j * m_ + k]; }
    double component_sum(int k) const;

private:
    SpaceGrid grid_;
    int m_;
    std::vector<double> values_;
};

// Values padded by `width` ghost entries per side according to the grid boundary.
std::vector<double> ghost_extend(const ScalarField& field, int width);
// Row-major (n + 2*width) x m block.
std::vector<double> ghost_extend(const SystemField& field, int width);

ScalarField project_pointwise(const ScalarField& fine, const SpaceGrid& coarse);
ScalarField project_cell_average(const ScalarField& fine, const SpaceGrid& coarse);
SystemField project_cell_average(const SystemField& fine, const SpaceGrid& coarse);

// Index of the unknown of `grid` nearest to x.
int nearest_index(const SpaceGrid& grid, double x);

}
