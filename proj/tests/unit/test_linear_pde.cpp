#include "oracles.hpp"

#include "tscheme/linear_pde.hpp"
#include "tscheme/random_data.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace tscheme;

namespace {

SpaceGrid heat_grid() {
    return make_grid(0, 1, 10, Layout::NodeCentered, Boundary::DirichletZero);
}

SpaceGrid adv_grid() {
    return make_grid(0, 1, 10, Layout::NodeCentered, Boundary::Periodic);
}

ScalarField random_field(const SpaceGrid& g, std::uint64_t seed) {
    RandomStream s(seed, 0);
    std::vector<double> v(g.n);
    for (double& x : v) {
        x = s.uniform(-1, 1);
    }
    return ScalarField(g, v);
}

}

TEST_CASE("heat stencil eliminations") {
    const auto a = heat_stencil(0, 1);
    CHECK(a == std::array<double, 5>{0, 1, -2, 1, 0});
    const auto b = heat_stencil(-1.0 / 12.0, 4.0 / 3.0);
    const std::array<double, 5> s3{-1.0 / 12.0, 4.0 / 3.0, -2.5, 4.0 / 3.0, -1.0 / 12.0};
    CHECK(oracle::max_abs_diff(b, s3) < 1e-15);
    CHECK(heat_stencil(0, 0) == std::array<double, 5>{0, 0, 1, -2, 1});
}

TEST_CASE("stencil moment conditions") {
    RandomStream s(4, 0);
    for (int t = 0; t < 200; ++t) {
        const auto b = heat_stencil(s.uniform(-20, 20), s.uniform(-20, 20));
        double m0 = 0, m1 = 0, m2 = 0;
        for (int k = -2; k <= 2; ++k) {
            m0 += b[k + 2];
            m1 += k * b[k + 2];
            m2 += 0.5 * k * k * b[k + 2];
        }
        CHECK(std::abs(m0) < 1e-13);
        CHECK(std::abs(m1) < 1e-13);
        CHECK(std::abs(m2 - 1.0) < 1e-13);
        const auto a = adv_stencil(s.uniform(-20, 20));
        CHECK(a[0] + a[1] + a[2] == 0.0);
        CHECK(a[2] - a[0] == 1.0);
    }
}

TEST_CASE("named schemes") {
    const HeatLevelParams s2 = heat_named(NamedScheme::S2);
    CHECK(s2.g == 0.5);
    CHECK(s2.stencil() == std::array<double, 5>{0, 1, -2, 1, 0});
    CHECK(heat_named(NamedScheme::S1).g == 0.0);
    CHECK(heat_named(NamedScheme::S3).b_m2 == doctest::Approx(-1.0 / 12.0));
    CHECK(heat_named(NamedScheme::S4).g == 0.5);
    CHECK(adv_named(NamedScheme::S4).stencil() == std::array<double, 3>{-0.5, 0, 0.5});
    CHECK(adv_named(NamedScheme::S1).stencil() == std::array<double, 3>{-1, 1, 0});
    CHECK(scheme_name(NamedScheme::S3) == "S3");
}

TEST_CASE("heat step") {
    const SpaceGrid g = heat_grid();
    SUBCASE("zero is a fixed point") {
        const ScalarField u = heat_step(ScalarField::zeros(g), heat_named(NamedScheme::S3), 1.0, 0.05);
        for (double v : u.values()) {
            CHECK(v == 0.0);
        }
    }
    SUBCASE("g = 1 is the explicit update") {
        const ScalarField u = random_field(g, 3);
        const HeatLevelParams p{1.0, -0.2, 0.9};
        const double lambda = 0.01 / (g.spacing * g.spacing);
        const auto b = p.stencil();
        std::vector<double> ext(g.n + 4, 0.0);
        std::copy(u.values().begin(), u.values().end(), ext.begin() + 2);
        std::vector<double> expected(g.n);
        for (int j = 0; j < g.n; ++j) {
            double s = 0.0;
            for (int k = -2; k <= 2; ++k) {
                s += b[k + 2] * ext[j + 2 + k];
            }
            expected[j] = u[j] + lambda * s;
        }
        CHECK(oracle::max_abs_diff(heat_step(u, p, 1.0, 0.01).values(), expected) < 1e-14);
    }
    SUBCASE("S2 is crank-nicolson") {
        const ScalarField u = ScalarField::sample(g, [](double x) { return std::sin(std::numbers::pi * x); });
        const double lambda = 0.05 / (g.spacing * g.spacing);
        const int n = g.n;
        std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
        std::vector<double> rhs(n);
        for (int j = 0; j < n; ++j) {
            a[j][j] = 1 + lambda;
            const double left = j > 0 ? u[j - 1] : 0.0;
            const double right = j + 1 < n ? u[j + 1] : 0.0;
            rhs[j] = u[j] + 0.5 * lambda * (left - 2 * u[j] + right);
            if (j > 0) {
                a[j][j - 1] = -0.5 * lambda;
            }
            if (j + 1 < n) {
                a[j][j + 1] = -0.5 * lambda;
            }
        }
        const std::vector<double> cn = oracle::gauss_solve(a, rhs);
        CHECK(oracle::max_abs_diff(heat_step(u, heat_named(NamedScheme::S2), 1.0, 0.05).values(), cn) < 1e-12);
    }
}

TEST_CASE("heat stencil truncation order") {
    auto f = [](double x) { return std::sin(x) + x * x * x; };
    auto f2 = [](double x) { return -std::sin(x) + 6 * x; };
    auto rate = [&](double b_m2, double b_m1) {
        const auto b = heat_stencil(b_m2, b_m1);
        std::vector<double> err;
        for (double dx = 0.1; dx > 0.1 / 17; dx /= 2) {
            double s = 0.0;
            for (int k = -2; k <= 2; ++k) {
                s += b[k + 2] * f(0.3 + k * dx);
            }
            err.push_back(std::abs(s / (dx * dx) - f2(0.3)));
        }
        return std::log2(err[err.size() - 2] / err.back());
    };
    CHECK(rate(0.2, 0.7) >= 0.95);
    CHECK(rate(-1.0 / 12.0, 4.0 / 3.0) >= 2.0);
    CHECK(rate(0.0, 1.0) >= 1.95);
}

TEST_CASE("advection step") {
    const SpaceGrid g = adv_grid();
    SUBCASE("constants are preserved") {
        const ScalarField k = ScalarField::sample(g, [](double) { return 2.5; });
        const ScalarField u = adv_step(k, {0.3, -0.7}, 2.0, 0.5);
        for (double v : u.values()) {
            CHECK(v == doctest::Approx(2.5).epsilon(1e-14));
        }
    }
    SUBCASE("zero speed leaves the data unchanged") {
        const ScalarField u = random_field(g, 5);
        CHECK(oracle::max_abs_diff(adv_step(u, {0.5, -0.5}, 0.0, 0.5).values(), u.values()) < 1e-15);
    }
    SUBCASE("implicit upwind") {
        const ScalarField u = random_field(g, 6);
        const double mu = 0.5 * 0.5 / g.spacing;
        const int n = g.n;
        std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
        for (int j = 0; j < n; ++j) {
            a[j][j] = 1 + mu;
            a[j][(j + n - 1) % n] = -mu;
        }
        const std::vector<double> expected = oracle::gauss_solve(a, {u.values().begin(), u.values().end()});
        CHECK(oracle::max_abs_diff(adv_step(u, adv_named(NamedScheme::S1), 0.5, 0.5).values(), expected) < 1e-12);
    }
    SUBCASE("conservation and translation equivariance") {
        const ScalarField u = random_field(g, 7);
        const AdvLevelParams p{-1.3, 0.4};
        const ScalarField v = adv_step(u, p, 2.0, 0.5);
        CHECK(std::abs(v.sum() - u.sum()) < 1e-12);
        std::vector<double> shifted(u.values().begin(), u.values().end());
        std::rotate(shifted.begin(), shifted.begin() + 3, shifted.end());
        const ScalarField vs = adv_step(ScalarField(g, shifted), p, 2.0, 0.5);
        std::vector<double> expected(v.values().begin(), v.values().end());
        std::rotate(expected.begin(), expected.begin() + 3, expected.end());
        CHECK(oracle::max_abs_diff(vs.values(), expected) < 1e-12);
    }
    SUBCASE("implicit upwind never amplifies the max norm") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const ScalarField u = random_field(g, 100 + seed);
            const ScalarField v = adv_step(u, adv_named(NamedScheme::S1), 2.0, 0.5);
            auto norm = [](std::span<const double> x) {
                double m = 0.0;
                for (double e : x) {
                    m = std::max(m, std::abs(e));
                }
                return m;
            };
            CHECK(norm(v.values()) <= norm(u.values()) + 1e-14);
        }
    }
}
