#include "machflow/spatial.hpp"

#include <cmath>
#include <string>

#include "machflow/integrator.hpp"

namespace machflow {

double slope_central(double left, double /*mid*/, double right, double h) {
    return (right - left) / (2.0 * h);
}

double slope_cweno(double a, double b, double delta) {
    const double wa = 1.0 / ((delta + a * a) * (delta + a * a));
    const double wb = 1.0 / ((delta + b * b) * (delta + b * b));
    return (wa * a + wb * b) / (wa + wb);
}

namespace {

// Slopes of one scalar field in one direction on interior + 1 ghost ring.
Field slopes(const Field& f, Dir d, Limiter lim) {
    Field s(f.grid(), 0.0);
    const int nx = f.nx(), ny = f.ny();
    const double h = f.grid().spacing(d);
    const int di = d == Dir::X ? 1 : 0, dj = d == Dir::X ? 0 : 1;
    for (int i = -1; i <= nx; ++i)
        for (int j = -1; j <= ny; ++j) {
            const double fm = f(i - di, j - dj), f0 = f(i, j), fp = f(i + di, j + dj);
            s(i, j) = lim == Limiter::Central ? slope_central(fm, f0, fp, h)
                                              : slope_cweno((fp - f0) / h, (f0 - fm) / h);
        }
    return s;
}

}  // namespace

InterfaceStates reconstruct(const State& state, Dir dir, Limiter limiter) {
    const Grid2D& g = state.grid;
    InterfaceStates out;
    out.dir = dir;
    out.nx = g.nx;
    out.ny = g.ny;
    const int n_ifc = dir == Dir::X ? (g.nx + 1) * g.ny : g.nx * (g.ny + 1);
    out.minus.resize(n_ifc);
    out.plus.resize(n_ifc);

    const Field sr = slopes(state.rho, dir, limiter);
    const Field s1 = slopes(state.q1, dir, limiter);
    const Field s2 = slopes(state.q2, dir, limiter);
    const double h2 = 0.5 * g.spacing(dir);
    const int di = dir == Dir::X ? 1 : 0, dj = dir == Dir::X ? 0 : 1;
    const int ilo = dir == Dir::X ? -1 : 0, ihi = dir == Dir::X ? g.nx : g.nx;
    const int jlo = dir == Dir::X ? 0 : -1, jhi = dir == Dir::X ? g.ny : g.ny;

    for (int i = ilo; i < ihi; ++i)
        for (int j = jlo; j < jhi; ++j) {
            const int k = out.index(i, j);
            ConservedCell wm{state.rho(i, j) + sr(i, j) * h2, state.q1(i, j) + s1(i, j) * h2,
                             state.q2(i, j) + s2(i, j) * h2};
            const int ip = i + di, jp = j + dj;
            ConservedCell wp{state.rho(ip, jp) - sr(ip, jp) * h2,
                             state.q1(ip, jp) - s1(ip, jp) * h2,
                             state.q2(ip, jp) - s2(ip, jp) * h2};
            if (!(wm.rho > 0.0) || !(wp.rho > 0.0))
                throw PositivityError("reconstruct: non-positive density at interface (" +
                                      std::to_string(i) + "," + std::to_string(j) + ") dir " +
                                      (dir == Dir::X ? std::string("x1") : std::string("x2")));
            out.minus[k] = wm;
            out.plus[k] = wp;
        }
    return out;
}

std::array<double, 3> rusanov_flux(const ConservedCell& wl, const ConservedCell& wr, Dir dir) {
    const auto fl = flux_nonstiff(wl, dir);
    const auto fr = flux_nonstiff(wr, dir);
    const double alpha = std::max(max_wave_speed(wl, dir), max_wave_speed(wr, dir));
    return {0.5 * (fl[0] + fr[0]) - 0.5 * alpha * (wr.rho - wl.rho),
            0.5 * (fl[1] + fr[1]) - 0.5 * alpha * (wr.q1 - wl.q1),
            0.5 * (fl[2] + fr[2]) - 0.5 * alpha * (wr.q2 - wl.q2)};
}

std::array<double, 3> central_stiff_flux(const ConservedCell& wi, const ConservedCell& wip1,
                                         Dir dir, const EulerParams& params) {
    const auto gi = flux_stiff(wi, dir, params);
    const auto gp = flux_stiff(wip1, dir, params);
    return {0.5 * (gi[0] + gp[0]), 0.5 * (gi[1] + gp[1]), 0.5 * (gi[2] + gp[2])};
}

FluxDivergence advective_flux_divergence(const State& state, Limiter limiter) {
    const Grid2D& g = state.grid;
    FluxDivergence out{Field(g, 0.0), Field(g, 0.0), Field(g, 0.0)};
    for (Dir dir : {Dir::X, Dir::Y}) {
        const InterfaceStates ifc = reconstruct(state, dir, limiter);
        const double inv_h = 1.0 / g.spacing(dir);
        const int di = dir == Dir::X ? 1 : 0, dj = dir == Dir::X ? 0 : 1;
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j) {
                const int kp = ifc.index(i, j);
                const int km = ifc.index(i - di, j - dj);
                const auto fp = rusanov_flux(ifc.minus[kp], ifc.plus[kp], dir);
                const auto fm = rusanov_flux(ifc.minus[km], ifc.plus[km], dir);
                out.mass(i, j) += (fp[0] - fm[0]) * inv_h;
                out.mom1(i, j) += (fp[1] - fm[1]) * inv_h;
                out.mom2(i, j) += (fp[2] - fm[2]) * inv_h;
            }
    }
    return out;
}

Field pressure_deviation(const State& state, const EulerParams& params) {
    Field p(state.grid, 0.0);
    for (int i = 0; i < state.grid.nx; ++i)
        for (int j = 0; j < state.grid.ny; ++j) p(i, j) = pressure(state.rho(i, j), params.gamma);
    const double pbar = p.mean_interior();
    for (int i = 0; i < state.grid.nx; ++i)
        for (int j = 0; j < state.grid.ny; ++j) p(i, j) -= pbar;
    apply_bc(p);
    return p;
}

FluxDivergence stiff_flux_divergence(const State& state, const Field& pressure_dev,
                                     const EulerParams& params) {
    const double inv_eps2 = 1.0 / (params.epsilon * params.epsilon);
    FluxDivergence out{discrete_divergence(state.q1, state.q2),
                       central_diff(pressure_dev, Dir::X), central_diff(pressure_dev, Dir::Y)};
    for (auto* f : {&out.mom1, &out.mom2})
        for (int i = -1; i <= state.grid.nx; ++i)
            for (int j = -1; j <= state.grid.ny; ++j) (*f)(i, j) *= inv_eps2;
    return out;
}

FluxDivergence stiff_flux_divergence(const State& state, const EulerParams& params) {
    return stiff_flux_divergence(state, pressure_deviation(state, params), params);
}

}  // namespace machflow
