#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace tscheme {

using State = std::vector<double>;

struct OdeProblem {
    int dim = 1;
    std::function<State(std::span<const double>)> rhs;
    // Row-major dim x dim Jacobian of rhs.
    std::function<std::vector<double>(std::span<const double>)> jacobian;
};

OdeProblem zero_problem(int dim);
OdeProblem decay_problem(double c);       // u' = -c u
OdeProblem oscillator_problem(double c);  // u' = -c v, v' = c u
OdeProblem logistic_problem(double c);    // u' = c u (1 - u)

struct NewtonOptions {
    double tol = 1e-12;  // max-norm residual
    int max_iters = 50;
};

// Solves (1+g) U - dt F(U) = (1+2g) U_{n+1} - g U_n by Newton from the guess U_{n+1}.
State bdf_g_step(std::span<const double> u_n, std::span<const double> u_np1, double g, double dt,
                 const OdeProblem& problem, const NewtonOptions& options = {});

// Levels U_0 .. U_{2+g.size()-1}; g[k] drives the step producing level k+2.
std::vector<State> bdf_g_trajectory(const State& u0, const State& u1, std::span<const double> g, double dt,
                                    const OdeProblem& problem, const NewtonOptions& options = {});

double exact_decay(double u0, double c, double t);
std::array<double, 2> exact_oscillator(double u0, double c, double t);
double exact_logistic(double u0, double c, double t);

// Closed-form second level of the decay problem started from U_0 = u0, U_1 = exact.
double decay_second_level(double c, double dt, double u0, double g);
double decay_second_level_error(double c, double dt, double u0, double g);  // signed U_2 - exact

struct ScanPoint {
    double g = 0.0;
    double e2 = 0.0;  // squared error at the second level
};

std::vector<ScanPoint> loss_scan_decay(double c, double dt, double u0, std::span<const double> g_grid);

enum class OscillatorStart {
    ZeroVelocity,  // U_0 = (u0, 0)
    Displaced      // U_0 = (u0, u0)
};

struct OscillatorSetup {
    double c = 1.0;
    double dt = 1.0 / 3.0;
    OscillatorStart start = OscillatorStart::ZeroVelocity;
};

// Levels U_0..U_3 for one initial value.
std::vector<State> oscillator_levels(double g2, double g3, const OscillatorSetup& setup, double u0);
double oscillator_sample_error(double g2, double g3, const OscillatorSetup& setup, double u0);
double loss_oscillator(double g2, double g3, const OscillatorSetup& setup, std::span<const double> train_u0);

struct LogisticSetup {
    double c = 1.0;
    double dt = 0.5;
};

double logistic_second_level(double g2, const LogisticSetup& setup, double u0);
double logistic_sample_error(double g2, const LogisticSetup& setup, double u0);
double loss_logistic(double g2, const LogisticSetup& setup, std::span<const double> train_u0);

}
