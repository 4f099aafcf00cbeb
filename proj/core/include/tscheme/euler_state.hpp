#pragma once

#include <cmath>

namespace tscheme {

enum class SoundSpeed {
    Standard,  // a = sqrt(gamma p / rho)
    AsPrinted  // a = sqrt(p / (gamma rho))
};

struct Gas {
    double gamma = 1.4;
    SoundSpeed sound_speed = SoundSpeed::Standard;

    double sound(double rho, double p) const {
        return sound_speed == SoundSpeed::Standard ? std::sqrt(gamma * p / rho) : std::sqrt(p / (gamma * rho));
    }
};

struct Primitive {
    double rho = 1.0;
    double v = 0.0;
    double p = 1.0;
};

struct Conserved {
    double rho = 1.0;
    double mom = 0.0;
    double energy = 1.0;
};

// Both throw PositivityViolation naming `cell` (-1 when not attached to a grid).
Primitive cons_to_prim(const Conserved& u, double gamma, long cell = -1);
Conserved prim_to_cons(const Primitive& w, double gamma, long cell = -1);

// max(|v_L| + a_L, |v_R| + a_R)
double max_signal_euler(const Primitive& left, const Primitive& right, const Gas& gas);

}
