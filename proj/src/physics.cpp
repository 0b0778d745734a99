#include "machflow/physics.hpp"

#include <cmath>

namespace machflow {

double pressure(double rho, double gamma) {
    if (!(rho > 0.0)) throw PositivityError("pressure: rho <= 0");
    if (gamma == 1.0) return rho;
    if (gamma == 2.0) return rho * rho;
    return std::pow(rho, gamma);
}

double density_from_pressure(double p, double gamma) {
    if (!(p > 0.0)) throw PositivityError("density_from_pressure: p <= 0");
    if (gamma == 1.0) return p;
    if (gamma == 2.0) return std::sqrt(p);
    return std::pow(p, 1.0 / gamma);
}

std::array<double, 3> flux_nonstiff(const ConservedCell& w, Dir dir) {
    if (!(w.rho > 0.0)) throw PositivityError("flux_nonstiff: rho <= 0");
    const double qd = (dir == Dir::X) ? w.q1 : w.q2;
    return {0.0, qd * w.q1 / w.rho, qd * w.q2 / w.rho};
}

std::array<double, 3> flux_stiff(const ConservedCell& w, Dir dir, const EulerParams& params) {
    const double p = pressure(w.rho, params.gamma);
    const double s = p / (params.epsilon * params.epsilon);
    if (dir == Dir::X) return {w.q1, s, 0.0};
    return {w.q2, 0.0, s};
}

double max_wave_speed(const ConservedCell& w, Dir dir) {
    const double qd = (dir == Dir::X) ? w.q1 : w.q2;
    return std::fabs(2.0 * qd / w.rho);
}

double mach_number(const ConservedCell& w, const EulerParams& params) {
    const double u1 = w.q1 / w.rho, u2 = w.q2 / w.rho;
    const double c2 = params.gamma * std::pow(w.rho, params.gamma - 1.0);
    return params.epsilon * std::sqrt((u1 * u1 + u2 * u2) / c2);
}

}  // namespace machflow
