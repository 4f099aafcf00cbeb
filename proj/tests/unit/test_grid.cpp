#include "tscheme/errors.hpp"
#include "tscheme/grid.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace tscheme;

TEST_CASE("grid spacing follows the layout") {
    CHECK(make_grid(0, 1, 10, Layout::CellCentered, Boundary::Periodic).spacing == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(make_grid(0, 1, 10, Layout::NodeCentered, Boundary::DirichletZero).spacing ==
          doctest::Approx(1.0 / 11.0).epsilon(1e-15));
    CHECK(make_grid(0, 1, 20, Layout::CellCentered, Boundary::Transparent).spacing ==
          doctest::Approx(0.05).epsilon(1e-15));
    CHECK(make_grid(0, 1, 10, Layout::NodeCentered, Boundary::Periodic).spacing == doctest::Approx(0.1).epsilon(1e-15));
}

TEST_CASE("grid coordinates") {
    const SpaceGrid d = make_grid(0, 1, 10, Layout::NodeCentered, Boundary::DirichletZero);
    CHECK(d.coordinate(0) == doctest::Approx(1.0 / 11.0));
    CHECK(d.coordinate(9) == doctest::Approx(10.0 / 11.0));
    const SpaceGrid c = make_grid(0, 1, 10, Layout::CellCentered, Boundary::Periodic);
    CHECK(c.coordinate(0) == doctest::Approx(0.05));
    CHECK(c.cell_left(3) == doctest::Approx(0.3));
    CHECK(c.cell_right(3) == doctest::Approx(0.4));
}

TEST_CASE("bad grids are rejected") {
    CHECK_THROWS_AS(make_grid(0, 1, 0, Layout::CellCentered, Boundary::Periodic), InvalidArgument);
    CHECK_THROWS_AS(make_grid(1, 1, 4, Layout::CellCentered, Boundary::Periodic), InvalidArgument);
    CHECK_THROWS_AS(make_grid(2, 1, 4, Layout::CellCentered, Boundary::Periodic), InvalidArgument);
    CHECK_THROWS_AS(make_time_grid(0.0, 2), InvalidArgument);
    CHECK_THROWS_AS(make_time_grid(0.1, 0), InvalidArgument);
}

TEST_CASE("time grid") {
    const TimeGrid t = make_time_grid(0.05, 2);
    CHECK(t.final_time() == doctest::Approx(0.1));
    CHECK(t.time(1) == doctest::Approx(0.05));
}

TEST_CASE("fields reject mismatched or non-finite values") {
    const SpaceGrid g = make_grid(0, 1, 3, Layout::CellCentered, Boundary::Periodic);
    CHECK_THROWS_AS(ScalarField(g, {1.0, 2.0}), InvalidArgument);
    CHECK_THROWS_AS(ScalarField(g, {1.0, NAN, 2.0}), NonFiniteValue);
    CHECK_THROWS_AS(SystemField(g, 3, std::vector<double>(8, 1.0)), InvalidArgument);
}

TEST_CASE("ghost extension") {
    SUBCASE("dirichlet pads with zeros") {
        const ScalarField u(make_grid(0, 1, 3, Layout::NodeCentered, Boundary::DirichletZero), {1, 2, 3});
        CHECK(ghost_extend(u, 2) == std::vector<double>{0, 0, 1, 2, 3, 0, 0});
    }
    SUBCASE("periodic wraps") {
        const ScalarField u(make_grid(0, 1, 3, Layout::CellCentered, Boundary::Periodic), {1, 2, 3});
        CHECK(ghost_extend(u, 1) == std::vector<double>{3, 1, 2, 3, 1});
        CHECK(ghost_extend(u, 2) == std::vector<double>{2, 3, 1, 2, 3, 1, 2});
    }
    SUBCASE("transparent replicates edges") {
        const ScalarField u(make_grid(0, 1, 2, Layout::CellCentered, Boundary::Transparent), {5, 7});
        CHECK(ghost_extend(u, 1) == std::vector<double>{5, 5, 7, 7});
    }
    SUBCASE("system fields extend row blocks") {
        const SystemField u(make_grid(0, 1, 2, Layout::CellCentered, Boundary::Transparent), 2, {1, 2, 3, 4});
        CHECK(ghost_extend(u, 1) == std::vector<double>{1, 2, 1, 2, 3, 4, 3, 4});
    }
    SUBCASE("width above two is unsupported") {
        const ScalarField u(make_grid(0, 1, 3, Layout::CellCentered, Boundary::Periodic), {1, 2, 3});
        CHECK_THROWS_AS(ghost_extend(u, 3), UnsupportedWidth);
    }
}

TEST_CASE("pointwise projection") {
    const SpaceGrid fine = make_grid(0, 1, 1000, Layout::NodeCentered, Boundary::DirichletZero);
    const SpaceGrid coarse = make_grid(0, 1, 10, Layout::NodeCentered, Boundary::DirichletZero);
    SUBCASE("linear functions are reproduced exactly on nested grids") {
        // Spacing 1/1100 contains every coarse node j/11.
        const SpaceGrid nested = make_grid(0, 1, 1099, Layout::NodeCentered, Boundary::DirichletZero);
        const ScalarField u = ScalarField::sample(nested, [](double x) { return x; });
        const ScalarField c = project_pointwise(u, coarse);
        for (int j = 0; j < coarse.n; ++j) {
            CHECK(c[j] == doctest::Approx(coarse.coordinate(j)).epsilon(1e-14));
        }
    }
    SUBCASE("constants stay constant") {
        const ScalarField c = project_pointwise(ScalarField::sample(fine, [](double) { return 4.2; }), coarse);
        for (double v : c.values()) {
            CHECK(v == 4.2);
        }
    }
    SUBCASE("smooth data lands close to the coarse samples") {
        const ScalarField c =
            project_pointwise(ScalarField::sample(fine, [](double x) { return std::sin(std::numbers::pi * x); }), coarse);
        for (int j = 0; j < coarse.n; ++j) {
            CHECK(std::abs(c[j] - std::sin(std::numbers::pi * coarse.coordinate(j))) < 1e-3);
        }
    }
    SUBCASE("different intervals are incompatible") {
        const SpaceGrid other = make_grid(0, 2, 10, Layout::NodeCentered, Boundary::DirichletZero);
        CHECK_THROWS_AS(project_pointwise(ScalarField::zeros(fine), other), IncompatibleGrid);
    }
}

TEST_CASE("cell-average projection") {
    const SpaceGrid fine = make_grid(0, 1, 4, Layout::CellCentered, Boundary::Periodic);
    const SpaceGrid coarse = make_grid(0, 1, 2, Layout::CellCentered, Boundary::Periodic);
    const ScalarField c = project_cell_average(ScalarField(fine, {1, 3, 5, 7}), coarse);
    CHECK(c[0] == 2.0);
    CHECK(c[1] == 6.0);

    const SpaceGrid f1000 = make_grid(0, 1, 1000, Layout::CellCentered, Boundary::Periodic);
    const SpaceGrid c10 = make_grid(0, 1, 10, Layout::CellCentered, Boundary::Periodic);
    const ScalarField u = ScalarField::sample(f1000, [](double x) { return std::exp(x) * std::cos(7 * x); });
    const ScalarField p = project_cell_average(u, c10);
    CHECK(p.sum() * c10.spacing == doctest::Approx(u.sum() * f1000.spacing).epsilon(1e-13));

    const ScalarField k = project_cell_average(ScalarField::sample(f1000, [](double) { return 3.5; }), c10);
    for (double v : k.values()) {
        CHECK(v == doctest::Approx(3.5).epsilon(1e-15));
    }
    CHECK_THROWS_AS(project_cell_average(ScalarField::zeros(make_grid(0, 1, 7, Layout::CellCentered, Boundary::Periodic)),
                                         c10),
                    IncompatibleGrid);
}

TEST_CASE("system cell-average projection keeps component totals") {
    const SpaceGrid fine = make_grid(0, 1, 40, Layout::CellCentered, Boundary::Transparent);
    const SpaceGrid coarse = make_grid(0, 1, 10, Layout::CellCentered, Boundary::Transparent);
    std::vector<double> v(40 * 3);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = 1.0 + 0.01 * static_cast<double>(i % 17);
    }
    const SystemField f(fine, 3, v);
    const SystemField c = project_cell_average(f, coarse);
    for (int k = 0; k < 3; ++k) {
        CHECK(c.component_sum(k) * coarse.spacing == doctest::Approx(f.component_sum(k) * fine.spacing).epsilon(1e-13));
    }
}
