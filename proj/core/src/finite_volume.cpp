#include "tscheme/finite_volume.hpp"

#include "tscheme/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tscheme {

namespace {

constexpr double cfl_slack = 1e-12;

void check_weights(const SpaceGrid& grid, std::span<const double> weights, const char* what) {
    if (static_cast<int>(weights.size()) != interface_count(grid)) {
        throw InvalidArgument(std::string(what) + ": expected " + std::to_string(interface_count(grid)) +
                              " interface weights, got " + std::to_string(weights.size()));
    }
}

double face_weight(const SpaceGrid& grid, std::span<const double> weights, int k) {
    return grid.boundary == Boundary::Periodic ? weights[k % grid.n] : weights[k];
}

}

ScalarFlux burgers_flux() {
    return {[](double u) { return 0.5 * u * u; }, [](double u) { return u; }};
}

double weighted_flux_scalar(double u_left, double u_right, double w, const ScalarFlux& flux) {
    const double s = std::max(std::abs(flux.df(u_left)), std::abs(flux.df(u_right)));
    return 0.5 * (flux.f(u_left) + flux.f(u_right)) - w * s * (u_right - u_left);
}

int interface_count(const SpaceGrid& grid) {
    return grid.boundary == Boundary::Periodic ? grid.n : grid.n + 1;
}

ScalarField fv_step_scalar(const ScalarField& u, std::span<const double> weights, const ScalarFlux& flux, double dt) {
    const SpaceGrid& grid = u.grid();
    check_weights(grid, weights, "fv_step_scalar");
    const double ratio = dt / grid.spacing;
    double smax = 0.0;
    for (double v : u.values()) {
        smax = std::max(smax, std::abs(flux.df(v)));
    }
    if (smax * ratio > 1.0 + cfl_slack) {
        throw CflViolation("fv_step_scalar: CFL number " + std::to_string(smax * ratio) + " exceeds 1", smax * ratio);
    }
    const std::vector<double> ext = ghost_extend(u, 1);
    const int n = grid.n;
    std::vector<double> faces(n + 1);
    for (int k = 0; k <= n; ++k) {
        faces[k] = weighted_flux_scalar(ext[k], ext[k + 1], face_weight(grid, weights, k), flux);
    }
    std::vector<double> next(n);
    for (int j = 0; j < n; ++j) {
        next[j] = u[j] - ratio * (faces[j + 1] - faces[j]);
    }
    return ScalarField(grid, std::move(next));
}

double cfl_max_dt(const ScalarField& u, const ScalarFlux& flux, double cfl_number) {
    if (!(cfl_number > 0.0 && cfl_number <= 1.0)) {
        throw InvalidArgument("cfl_max_dt: cfl number must lie in (0, 1]");
    }
    double smax = 0.0;
    for (double v : u.values()) {
        smax = std::max(smax, std::abs(flux.df(v)));
    }
    if (smax == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return cfl_number * u.grid().spacing / smax;
}

double cfl_max_dt(const SystemField& u, const Gas& gas, double cfl_number) {
    if (!(cfl_number > 0.0 && cfl_number <= 1.0)) {
        throw InvalidArgument("cfl_max_dt: cfl number must lie in (0, 1]");
    }
    double smax = 0.0;
    for (std::size_t j = 0; j < u.cells(); ++j) {
        const Primitive w = cons_to_prim(conserved_at(u, j), gas.gamma, static_cast<long>(j));
        smax = std::max(smax, std::abs(w.v) + gas.sound(w.rho, w.p));
    }
    if (smax == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return cfl_number * u.grid().spacing / smax;
}

WeightLayout make_weight_layout(const SpaceGrid& grid, int window) {
    if (window < 1) {
        throw InvalidArgument("make_weight_layout: window must be positive");
    }
    WeightLayout layout;
    layout.n_cells = grid.n;
    layout.boundary = grid.boundary;
    layout.window = window;
    layout.n_interfaces = interface_count(grid);
    const int interior = grid.n - 1;
    const int n_groups = std::max(1, interior / window);
    layout.groups.resize(n_groups);
    for (int f = 1; f <= interior; ++f) {
        layout.groups[std::min((f - 1) / window, n_groups - 1)].push_back(f);
    }
    return layout;
}

std::vector<double> expand_pooled(const WeightLayout& layout, std::span<const double> pooled) {
    if (static_cast<int>(pooled.size()) != layout.n_groups()) {
        throw InvalidArgument("expand_pooled: expected " + std::to_string(layout.n_groups()) + " pooled weights, got " +
                              std::to_string(pooled.size()));
    }
    std::vector<double> w(layout.n_interfaces, 0.0);
    for (int g = 0; g < layout.n_groups(); ++g) {
        for (int f : layout.groups[g]) {
            w[f] = pooled[g];
        }
    }
    const double first = pooled.front();
    const double last = pooled.back();
    if (layout.boundary == Boundary::Periodic) {
        w[0] = 0.5 * (first + last);
    } else {
        w[0] = first;
        w[layout.n_cells] = last;
    }
    return w;
}

Conserved conserved_at(const SystemField& u, std::size_t j) {
    return {u(j, 0), u(j, 1), u(j, 2)};
}

SystemField make_euler_field(const SpaceGrid& grid, std::span<const Conserved> cells) {
    std::vector<double> v;
    v.reserve(cells.size() * 3);
    for (const Conserved& c : cells) {
        v.push_back(c.rho);
        v.push_back(c.mom);
        v.push_back(c.energy);
    }
    return SystemField(grid, 3, std::move(v));
}

std::array<double, 3> euler_physical_flux(const Conserved& u, const Primitive& w) {
    return {u.mom, u.mom * w.v + w.p, (u.energy + w.p) * w.v};
}

std::array<double, 3> weighted_flux_euler(const Conserved& left, const Conserved& right, double w, const Gas& gas) {
    const Primitive pl = cons_to_prim(left, gas.gamma);
    const Primitive pr = cons_to_prim(right, gas.gamma);
    const double s = max_signal_euler(pl, pr, gas);
    const auto fl = euler_physical_flux(left, pl);
    const auto fr = euler_physical_flux(right, pr);
    const std::array<double, 3> ul{left.rho, left.mom, left.energy};
    const std::array<double, 3> ur{right.rho, right.mom, right.energy};
    std::array<double, 3> f{};
    for (int k = 0; k < 3; ++k) {
        f[k] = 0.5 * (fl[k] + fr[k]) - w * s * (ur[k] - ul[k]);
    }
    return f;
}

SystemField fv_step_euler(const SystemField& u, std::span<const double> weights, const Gas& gas, double dt,
                          double max_courant) {
    const SpaceGrid& grid = u.grid();
    if (u.components() != 3) {
        throw InvalidArgument("fv_step_euler: expected 3 components");
    }
    if (grid.boundary == Boundary::DirichletZero) {
        throw InvalidArgument("fv_step_euler: zero Dirichlet ghosts are not admissible gas states");
    }
    check_weights(grid, weights, "fv_step_euler");
    const int n = grid.n;
    const double ratio = dt / grid.spacing;
    const std::vector<double> ext = ghost_extend(u, 1);

    std::vector<Conserved> cons(n + 2);
    std::vector<Primitive> prim(n + 2);
    std::vector<double> speed(n + 2);
    double smax = 0.0;
    for (int p = 0; p < n + 2; ++p) {
        cons[p] = {ext[3 * p], ext[3 * p + 1], ext[3 * p + 2]};
        const long cell = std::clamp(p - 1, 0, n - 1);
        prim[p] = cons_to_prim(cons[p], gas.gamma, cell);
        speed[p] = std::abs(prim[p].v) + gas.sound(prim[p].rho, prim[p].p);
        smax = std::max(smax, speed[p]);
    }
    if (smax * ratio > max_courant + cfl_slack) {
        throw CflViolation("fv_step_euler: CFL number " + std::to_string(smax * ratio) + " exceeds " +
                               std::to_string(max_courant),
                           smax * ratio);
    }

    std::vector<std::array<double, 3>> faces(n + 1);
    for (int k = 0; k <= n; ++k) {
        const Conserved& l = cons[k];
        const Conserved& r = cons[k + 1];
        const double s = std::max(speed[k], speed[k + 1]);
        const double w = face_weight(grid, weights, k);
        const auto fl = euler_physical_flux(l, prim[k]);
        const auto fr = euler_physical_flux(r, prim[k + 1]);
        faces[k] = {0.5 * (fl[0] + fr[0]) - w * s * (r.rho - l.rho), 0.5 * (fl[1] + fr[1]) - w * s * (r.mom - l.mom),
                    0.5 * (fl[2] + fr[2]) - w * s * (r.energy - l.energy)};
    }

    std::vector<double> next(static_cast<std::size_t>(n) * 3);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < 3; ++k) {
            next[3 * j + k] = u(j, k) - ratio * (faces[j + 1][k] - faces[j][k]);
        }
        cons_to_prim({next[3 * j], next[3 * j + 1], next[3 * j + 2]}, gas.gamma, j);
    }
    return SystemField(grid, 3, std::move(next));
}

}
