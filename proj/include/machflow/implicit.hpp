// implicit.hpp -- per-stage elimination of the momentum update into a
// semi-linear elliptic equation for the stage pressure, and its solution by
// Newton iteration with matrix-free conjugate-gradient inner solves.
#pragma once

#include <stdexcept>
#include <vector>

#include "machflow/grid.hpp"
#include "machflow/integrator.hpp"
#include "machflow/physics.hpp"
#include "machflow/spatial.hpp"
#include "machflow/tableaux.hpp"

namespace machflow {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Explicitly known part of stage k: rho_hat and q_hat collect the state at
// t^n minus dt times the coefficient-weighted flux divergences of the
// completed stages.
struct StageContext {
    int k = 0;  // 0-based stage index
    Field rho_hat, q1_hat, q2_hat;
    double akk = 0.0;
    double dt = 0.0;
    EulerParams params;
};

// -coeff * Lap_h p + p^{1/gamma} = rhs with coeff = dt^2 akk^2 / eps^2 and
// rhs = rho_hat - dt akk div_h q_hat. Lap_h is the wide (composed) stencil.
struct EllipticProblem {
    double coeff = 0.0;
    Field rhs;
    double gamma = 2.0;
};

struct PressureSolution {
    Field p;      // stage pressure, ghosts current
    Field phi;    // p - pref; the solver unknown, ghosts current
    double pref = 0.0;
    int newton_iters = 0;
    int cg_iters = 0;
    std::vector<double> residual_history;
};

struct EllipticSolverOptions {
    double tol = 1e-10;        // absolute inf-norm residual target
    int max_iter = 50;         // Newton iterations
    double cg_rel_tol = 1e-12;
    int cg_max_iter = 200000;
    const Field* phi_init = nullptr;  // optional warm start
};

// Builds the stage context from the cached flux divergences of stages
// 0..k-1 (both lists must hold at least k entries).
StageContext assemble_stage(const State& state_n,
                            const std::vector<FluxDivergence>& div_advective,
                            const std::vector<FluxDivergence>& div_stiff,
                            const DoubleTableau& tableau, int k, double dt,
                            const EulerParams& params);

EllipticProblem make_elliptic_problem(const StageContext& ctx);

// Newton with analytic diagonal Jacobian plus the constant-coefficient wide
// Laplacian; inner solves by CG. The unknown is the deviation
// phi = p - pref with pref = pressure(mean(rhs)); working in deviations
// keeps the coeff-scaled Laplacian below the quantisation floor of p, which
// is what makes the absolute tolerance reachable as eps -> 0.
PressureSolution solve_pressure_elliptic(const EllipticProblem& prob,
                                         const EllipticSolverOptions& opts = {});

// Recovers the stage state: rho from the pressure, q from q_hat minus the
// implicit pressure gradient (taken from phi so no constant-mode
// quantisation noise is amplified by 1/eps^2). Verifies the back-substituted
// mass equation to 10x the solver tolerance.
State complete_stage(const StageContext& ctx, const PressureSolution& sol,
                     double tol = 1e-10);

// Spec-facing overload: accepts a plain stage pressure field and derives
// the deviation internally.
State complete_stage(const StageContext& ctx, const Field& p_k, double tol = 1e-10);

}  // namespace machflow
