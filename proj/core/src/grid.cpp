#include "tscheme/grid.hpp"

#include "tscheme/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tscheme {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw NonFiniteValue(std::string(what) + ": non-finite value at index " + std::to_string(i));
        }
    }
}

}

double SpaceGrid::coordinate(int i) const {
    if (layout == Layout::CellCentered) {
        return x_left + (i + 0.5) * spacing;
    }
    return x_left + (i + 1) * spacing;
}

bool SpaceGrid::same_interval(const SpaceGrid& other) const {
    const double tol = 1e-12 * std::max(1.0, std::abs(length()));
    return std::abs(x_left - other.x_left) <= tol && std::abs(x_right - other.x_right) <= tol;
}

SpaceGrid make_grid(double x_left, double x_right, int n, Layout layout, Boundary boundary) {
    if (n < 1) {
        throw InvalidArgument("make_grid: n must be positive, got " + std::to_string(n));
    }
    if (!(x_left < x_right) || !std::isfinite(x_left) || !std::isfinite(x_right)) {
        throw InvalidArgument("make_grid: degenerate interval");
    }
    SpaceGrid g;
    g.x_left = x_left;
    g.x_right = x_right;
    g.n = n;
    g.layout = layout;
    g.boundary = boundary;
    const double len = x_right - x_left;
    if (layout == Layout::NodeCentered && boundary == Boundary::DirichletZero) {
        g.spacing = len / (n + 1);
    } else {
        g.spacing = len / n;
    }
    return g;
}

TimeGrid make_time_grid(double dt, int n_steps) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw InvalidArgument("make_time_grid: dt must be positive");
    }
    if (n_steps < 1) {
        throw InvalidArgument("make_time_grid: n_steps must be positive");
    }
    return TimeGrid{dt, n_steps};
}

ScalarField::ScalarField(SpaceGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(grid_.n)) {
        throw InvalidArgument("ScalarField: expected " + std::to_string(grid_.n) + " values, got " +
                              std::to_string(values_.size()));
    }
    require_finite(values_, "ScalarField");
}

ScalarField ScalarField::zeros(const SpaceGrid& grid) {
    return ScalarField(grid, std::vector<double>(grid.n, 0.0));
}

ScalarField ScalarField::sample(const SpaceGrid& grid, const std::function<double(double)>& f) {
    std::vector<double> v(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        v[i] = f(grid.coordinate(i));
    }
    return ScalarField(grid, std::move(v));
}

ScalarField ScalarField::average(const SpaceGrid& grid, const std::function<double(double, double)>& mean) {
    std::vector<double> v(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        v[i] = mean(grid.cell_left(i), grid.cell_right(i));
    }
    return ScalarField(grid, std::move(v));
}

double ScalarField::sum() const {
    double s = 0.0;
    for (double v : values_) {
        s += v;
    }
    return s;
}

SystemField::SystemField(SpaceGrid grid, int m, std::vector<double> values)
    : grid_(grid), m_(m), values_(std::move(values)) {
    if (m_ < 1) {
        throw InvalidArgument("SystemField: component count must be positive");
    }
    if (values_.size() != static_cast<std::size_t>(grid_.n) * m_) {
        throw InvalidArgument("SystemField: expected " + std::to_string(grid_.n * m_) + " values, got " +
                              std::to_string(values_.size()));
    }
    require_finite(values_, "SystemField");
}

double SystemField::component_sum(int k) const {
    double s = 0.0;
    for (std::size_t j = 0; j < cells(); ++j) {
        s += (*this)(j, k);
    }
    return s;
}

namespace {

// Source index for ghost position p in [-width, n + width), or -1 for a zero ghost.
long ghost_source(long p, long n, Boundary boundary) {
    if (p >= 0 && p < n) {
        return p;
    }
    switch (boundary) {
    case Boundary::DirichletZero:
        return -1;
    case Boundary::Periodic:
        return ((p % n) + n) % n;
    case Boundary::Transparent:
        return p < 0 ? 0 : n - 1;
    }
    return -1;
}

void check_width(int width) {
    if (width < 0 || width > 2) {
        throw UnsupportedWidth("ghost_extend: width " + std::to_string(width) + " not supported (max 2)");
    }
}

}

std::vector<double> ghost_extend(const ScalarField& field, int width) {
    check_width(width);
    const long n = field.grid().n;
    std::vector<double> out(n + 2 * width);
    for (long p = -width; p < n + width; ++p) {
        const long src = ghost_source(p, n, field.grid().boundary);
        out[p + width] = src < 0 ? 0.0 : field[src];
    }
    return out;
}

std::vector<double> ghost_extend(const SystemField& field, int width) {
    check_width(width);
    const long n = field.grid().n;
    const int m = field.components();
    std::vector<double> out((n + 2 * width) * m);
    for (long p = -width; p < n + width; ++p) {
        const long src = ghost_source(p, n, field.grid().boundary);
        for (int k = 0; k < m; ++k) {
            out[(p + width) * m + k] = src < 0 ? 0.0 : field(src, k);
        }
    }
    return out;
}

int nearest_index(const SpaceGrid& grid, double x) {
    const double first = grid.coordinate(0);
    const long i = std::lround((x - first) / grid.spacing);
    return static_cast<int>(std::clamp<long>(i, 0, grid.n - 1));
}

ScalarField project_pointwise(const ScalarField& fine, const SpaceGrid& coarse) {
    if (!fine.grid().same_interval(coarse)) {
        throw IncompatibleGrid("project_pointwise: fine and coarse grids span different intervals");
    }
    std::vector<double> v(coarse.n);
    for (int i = 0; i < coarse.n; ++i) {
        v[i] = fine[nearest_index(fine.grid(), coarse.coordinate(i))];
    }
    return ScalarField(coarse, std::move(v));
}

namespace {

int refinement_ratio(const SpaceGrid& fine, const SpaceGrid& coarse, const char* what) {
    if (!fine.same_interval(coarse)) {
        throw IncompatibleGrid(std::string(what) + ": fine and coarse grids span different intervals");
    }
    if (fine.n % coarse.n != 0) {
        throw IncompatibleGrid(std::string(what) + ": fine cell count " + std::to_string(fine.n) +
                               " is not a multiple of " + std::to_string(coarse.n));
    }
    return fine.n / coarse.n;
}

}

ScalarField project_cell_average(const ScalarField& fine, const SpaceGrid& coarse) {
    const int r = refinement_ratio(fine.grid(), coarse, "project_cell_average");
    std::vector<double> v(coarse.n);
    for (int i = 0; i < coarse.n; ++i) {
        double s = 0.0;
        for (int k = 0; k < r; ++k) {
            s += fine[static_cast<std::size_t>(i) * r + k];
        }
        v[i] = s / r;
    }
    return ScalarField(coarse, std::move(v));
}

SystemField project_cell_average(const SystemField& fine, const SpaceGrid& coarse) {
    const int r = refinement_ratio(fine.grid(), coarse, "project_cell_average");
    const int m = fine.components();
    std::vector<double> v(static_cast<std::size_t>(coarse.n) * m);
    for (int i = 0; i < coarse.n; ++i) {
        for (int c = 0; c < m; ++c) {
            double s = 0.0;
            for (int k = 0; k < r; ++k) {
                s += fine(static_cast<std::size_t>(i) * r + k, c);
            }
            v[static_cast<std::size_t>(i) * m + c] = s / r;
        }
    }
    return SystemField(coarse, m, std::move(v));
}

}
