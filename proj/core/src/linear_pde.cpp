#include "tscheme/linear_pde.hpp"

#include "tscheme/dense_lu.hpp"
#include "tscheme/errors.hpp"

namespace tscheme {

std::array<double, 5> heat_stencil(double b_m2, double b_m1) {
    return {b_m2, b_m1, 1.0 - 3.0 * b_m1 - 6.0 * b_m2, 3.0 * b_m1 + 8.0 * b_m2 - 2.0, 1.0 - b_m1 - 3.0 * b_m2};
}

std::array<double, 3> adv_stencil(double b_m1) {
    return {b_m1, -1.0 - 2.0 * b_m1, 1.0 + b_m1};
}

namespace {

// Row j of the stencil operator on the grid's unknowns.
template <std::size_t W>
DenseMatrix stencil_matrix(const SpaceGrid& grid, const std::array<double, W>& b) {
    constexpr int half = static_cast<int>(W / 2);
    const int n = grid.n;
    DenseMatrix m(n);
    for (int j = 0; j < n; ++j) {
        for (int k = -half; k <= half; ++k) {
            int col = j + k;
            if (grid.boundary == Boundary::Periodic) {
                col = ((col % n) + n) % n;
            } else if (col < 0 || col >= n) {
                continue;
            }
            m(j, col) += b[k + half];
        }
    }
    return m;
}

ScalarField two_level_solve(const ScalarField& u, const DenseMatrix& b, double implicit, double explicit_) {
    const std::size_t n = u.size();
    // Operator products in extended precision, so refinement removes the rounding of the assembled matrix.
    auto apply_b = [&](std::span<const double> x) {
        std::vector<long double> y(n, 0.0L);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                y[i] += static_cast<long double>(b(i, j)) * x[j];
            }
        }
        return y;
    };
    const std::vector<long double> bu = apply_b(u.values());
    std::vector<long double> rhs(n);
    std::vector<double> x(n);
    DenseMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        rhs[i] = u[i] + explicit_ * bu[i];
        x[i] = static_cast<double>(rhs[i]);
        for (std::size_t j = 0; j < n; ++j) {
            a(i, j) = (i == j ? 1.0 : 0.0) + implicit * b(i, j);
        }
    }
    x = lu_solve(a, std::move(x));
    for (int sweep = 0; sweep < 2; ++sweep) {
        const std::vector<long double> bx = apply_b(x);
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = static_cast<double>(rhs[i] - x[i] - implicit * bx[i]);
        }
        const std::vector<double> dx = lu_solve(a, std::move(r));
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += dx[i];
        }
    }
    return ScalarField(u.grid(), std::move(x));
}

}

std::vector<double> apply_heat_stencil(const ScalarField& u, const std::array<double, 5>& b) {
    return stencil_matrix(u.grid(), b).multiply(u.values());
}

std::vector<double> apply_adv_stencil(const ScalarField& u, const std::array<double, 3>& b) {
    return stencil_matrix(u.grid(), b).multiply(u.values());
}

ScalarField heat_step(const ScalarField& u, const HeatLevelParams& p, double c, double dt) {
    const SpaceGrid& grid = u.grid();
    if (grid.layout != Layout::NodeCentered || grid.boundary != Boundary::DirichletZero) {
        throw InvalidArgument("heat_step: requires a node-centered grid with zero Dirichlet boundary");
    }
    if (!(c > 0.0) || !(dt > 0.0)) {
        throw InvalidArgument("heat_step: c and dt must be positive");
    }
    const double lambda = c * dt / (grid.spacing * grid.spacing);
    const DenseMatrix b = stencil_matrix(grid, p.stencil());
    return two_level_solve(u, b, -lambda * (1.0 - p.g), lambda * p.g);
}

ScalarField adv_step(const ScalarField& u, const AdvLevelParams& p, double c, double dt) {
    const SpaceGrid& grid = u.grid();
    if (grid.boundary != Boundary::Periodic) {
        throw InvalidArgument("adv_step: requires a periodic grid");
    }
    if (!(c >= 0.0) || !(dt > 0.0)) {
        throw InvalidArgument("adv_step: c must be non-negative and dt positive");
    }
    const double mu = c * dt / grid.spacing;
    const DenseMatrix b = stencil_matrix(grid, p.stencil());
    return two_level_solve(u, b, mu * (1.0 - p.g), -mu * p.g);
}

std::string_view scheme_name(NamedScheme s) {
    switch (s) {
    case NamedScheme::S1:
        return "S1";
    case NamedScheme::S2:
        return "S2";
    case NamedScheme::S3:
        return "S3";
    case NamedScheme::S4:
        return "S4";
    }
    return "S?";
}

HeatLevelParams heat_named(NamedScheme s) {
    switch (s) {
    case NamedScheme::S1:
        return {0.0, 0.0, 1.0};
    case NamedScheme::S2:
        return {0.5, 0.0, 1.0};
    case NamedScheme::S3:
        return {0.0, -1.0 / 12.0, 4.0 / 3.0};
    case NamedScheme::S4:
        return {0.5, -1.0 / 12.0, 4.0 / 3.0};
    }
    return {};
}

AdvLevelParams adv_named(NamedScheme s) {
    constexpr double upwind = -1.0;
    constexpr double central = -0.5;
    switch (s) {
    case NamedScheme::S1:
        return {0.0, upwind};
    case NamedScheme::S2:
        return {0.5, upwind};
    case NamedScheme::S3:
        return {0.0, central};
    case NamedScheme::S4:
        return {0.5, central};
    }
    return {};
}

}
