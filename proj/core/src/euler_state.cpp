#include "tscheme/euler_state.hpp"

#include "tscheme/errors.hpp"

#include <algorithm>
#include <string>

namespace tscheme {

namespace {

std::string where(long cell) {
    return cell < 0 ? std::string() : " in cell " + std::to_string(cell);
}

}

Primitive cons_to_prim(const Conserved& u, double gamma, long cell) {
    if (!(u.rho > 0.0)) {
        throw PositivityViolation("non-positive density" + where(cell), cell);
    }
    const double v = u.mom / u.rho;
    const double p = (gamma - 1.0) * (u.energy - 0.5 * u.rho * v * v);
    if (!(p > 0.0)) {
        throw PositivityViolation("non-positive pressure" + where(cell), cell);
    }
    return {u.rho, v, p};
}

Conserved prim_to_cons(const Primitive& w, double gamma, long cell) {
    if (!(w.rho > 0.0)) {
        throw PositivityViolation("non-positive density" + where(cell), cell);
    }
    if (!(w.p > 0.0)) {
        throw PositivityViolation("non-positive pressure" + where(cell), cell);
    }
    return {w.rho, w.rho * w.v, w.p / (gamma - 1.0) + 0.5 * w.rho * w.v * w.v};
}

double max_signal_euler(const Primitive& left, const Primitive& right, const Gas& gas) {
    if (!(left.rho > 0.0 && left.p > 0.0 && right.rho > 0.0 && right.p > 0.0)) {
        throw PositivityViolation("max_signal_euler: non-positive state", -1);
    }
    return std::max(std::abs(left.v) + gas.sound(left.rho, left.p),
                    std::abs(right.v) + gas.sound(right.rho, right.p));
}

}
