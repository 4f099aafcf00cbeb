#pragma once

#include "tscheme/grid.hpp"

#include <array>
#include <string_view>

namespace tscheme {

// (b_-2, b_-1, b_0, b_1, b_2) with the three consistency eliminations applied.
std::array<double, 5> heat_stencil(double b_m2, double b_m1);
// (b_-1, b_0, b_1) with sum zero and b_1 - b_-1 = 1.
std::array<double, 3> adv_stencil(double b_m1);

struct HeatLevelParams {
    double g = 0.5;
    double b_m2 = 0.0;
    double b_m1 = 1.0;

    std::array<double, 5> stencil() const { return heat_stencil(b_m2, b_m1); }
};

struct AdvLevelParams {
    double g = 0.5;
    double b_m1 = -1.0;

    std::array<double, 3> stencil() const { return adv_stencil(b_m1); }
};

// [I - lambda (1-g) B] U^{n+1} = [I + lambda g B] U^n, lambda = c dt / dx^2, zero ghosts.
ScalarField heat_step(const ScalarField& u, const HeatLevelParams& p, double c, double dt);
// [I + mu (1-g) B] U^{n+1} = [I - mu g B] U^n, mu = c dt / dx, periodic.
ScalarField adv_step(const ScalarField& u, const AdvLevelParams& p, double c, double dt);

// Stencil application with the grid's ghost rule (used by the schemes and by tests).
std::vector<double> apply_heat_stencil(const ScalarField& u, const std::array<double, 5>& b);
std::vector<double> apply_adv_stencil(const ScalarField& u, const std::array<double, 3>& b);

enum class NamedScheme { S1, S2, S3, S4 };

inline constexpr std::array<NamedScheme, 4> all_named_schemes{NamedScheme::S1, NamedScheme::S2, NamedScheme::S3,
                                                              NamedScheme::S4};

std::string_view scheme_name(NamedScheme s);
HeatLevelParams heat_named(NamedScheme s);
AdvLevelParams adv_named(NamedScheme s);

}
