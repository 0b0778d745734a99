// spatial.hpp -- MUSCL reconstruction with central or CWENO slopes, the
// Rusanov flux for the advective part, and the central flux for the stiff
// part, plus the per-cell flux-divergence assembly the integrator consumes.
#pragma once

#include <array>
#include <vector>

#include "machflow/grid.hpp"
#include "machflow/physics.hpp"

namespace machflow {

enum class Limiter { Central, CWENO };

struct State;  // integrator.hpp

// Reconstructed left/right states at the interior interfaces of one
// direction. For Dir::X the interface i+1/2,j is stored at index
// (i+1)*ny + j with i in [-1, nx); Dir::Y analogously with j in [-1, ny).
struct InterfaceStates {
    Dir dir = Dir::X;
    int nx = 0, ny = 0;
    std::vector<ConservedCell> minus;  // state from the lower cell
    std::vector<ConservedCell> plus;   // state from the upper cell

    int count() const { return (int)minus.size(); }
    int index(int i, int j) const {
        return dir == Dir::X ? (i + 1) * ny + j : i * (ny + 1) + (j + 1);
    }
};

double slope_central(double left, double mid, double right, double h);
double slope_cweno(double a, double b, double delta = 1e-6);

// MUSCL piecewise-linear interface states for one direction. Ghost cells of
// the state fields must be current. Throws PositivityError (naming the
// cell) if a reconstructed density is non-positive.
InterfaceStates reconstruct(const State& state, Dir dir, Limiter limiter);

// Rusanov flux: 1/2 (F(WL)+F(WR)) - alpha/2 (WR-WL) with
// alpha = max(|2 u_dir(WL)|, |2 u_dir(WR)|).
std::array<double, 3> rusanov_flux(const ConservedCell& wl, const ConservedCell& wr, Dir dir);

// Central stiff flux: arithmetic mean of G at the two adjacent cell
// averages (no reconstruction).
std::array<double, 3> central_stiff_flux(const ConservedCell& wi, const ConservedCell& wip1,
                                         Dir dir, const EulerParams& params);

// Per-component flux divergences over interior cells (ghosts of the result
// are not filled).
struct FluxDivergence {
    Field mass, mom1, mom2;
};

// Divergence of the Rusanov fluxes of both directions, evaluated on the
// MUSCL-reconstructed interface states.
FluxDivergence advective_flux_divergence(const State& state, Limiter limiter);

// Divergence of the stiff fluxes evaluated as the mu*delta central
// derivative of G on cell averages: mass from the momenta, momentum from
// the given pressure deviation field scaled by 1/eps^2. phi must carry
// current ghosts; it may differ from p(rho) by any constant.
FluxDivergence stiff_flux_divergence(const State& state, const Field& pressure_deviation,
                                     const EulerParams& params);

// Convenience overload building the pressure deviation as
// p(rho) - mean(p(rho)).
FluxDivergence stiff_flux_divergence(const State& state, const EulerParams& params);

// Pressure deviation field of a state: p(rho) - mean_interior(p(rho)),
// ghosts filled.
Field pressure_deviation(const State& state, const EulerParams& params);

}  // namespace machflow
