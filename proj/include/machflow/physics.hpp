// physics.hpp -- isentropic EOS, conserved-variable containers, and the
// stiff/non-stiff flux split.
#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "machflow/grid.hpp"

namespace machflow {

struct EulerParams {
    double epsilon = 1.0;  // reference Mach number
    double gamma = 2.0;    // EOS exponent, p = rho^gamma
    double cfl = 0.45;     // nu in the advective CFL condition
    double dt_max = 1e30;  // timestep cap

    void validate() const {
        if (!(epsilon > 0.0)) throw std::invalid_argument("EulerParams: epsilon must be > 0");
        if (!(gamma >= 1.0)) throw std::invalid_argument("EulerParams: gamma must be >= 1");
        if (!(cfl > 0.0 && cfl < 1.0)) throw std::invalid_argument("EulerParams: cfl in (0,1)");
    }
};

struct ConservedCell {
    double rho = 1.0;
    double q1 = 0.0;
    double q2 = 0.0;
};

struct PositivityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// p = rho^gamma and its inverse.
double pressure(double rho, double gamma);
double density_from_pressure(double p, double gamma);

// Advective (non-stiff) flux F_dir(W) = (0, q_dir q1/rho, q_dir q2/rho).
std::array<double, 3> flux_nonstiff(const ConservedCell& w, Dir dir);

// Acoustic (stiff) flux G_dir(W) = (q_dir, delta_{dir,1} p/eps^2, delta_{dir,2} p/eps^2).
std::array<double, 3> flux_stiff(const ConservedCell& w, Dir dir, const EulerParams& params);

// |lambda_{dir,3}| = |2 q_dir / rho|, the largest advective eigenvalue.
double max_wave_speed(const ConservedCell& w, Dir dir);

// Local Mach diagnostic M = eps |u| / sqrt(gamma rho^{gamma-1}).
double mach_number(const ConservedCell& w, const EulerParams& params);

}  // namespace machflow
