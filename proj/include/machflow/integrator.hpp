// integrator.hpp -- conserved state, CFL timestep, the IMEX-RK step and the
// time loop.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "machflow/grid.hpp"
#include "machflow/physics.hpp"
#include "machflow/spatial.hpp"
#include "machflow/tableaux.hpp"

namespace machflow {

// Cell-centered conserved fields sharing one grid.
struct State {
    Grid2D grid;
    Field rho, q1, q2;
    double time = 0.0;

    State() = default;
    explicit State(const Grid2D& g)
        : grid(g), rho(g, 1.0), q1(g, 0.0), q2(g, 0.0) {}

    ConservedCell cell(int i, int j) const { return {rho(i, j), q1(i, j), q2(i, j)}; }
};

// Fill all ghost layers (wall mirrors use odd parity for the wall-normal
// momentum component).
void apply_state_bc(State& s);

// Advective CFL timestep: dt = cfl / max_{cells} max(|2 u1|/dx, |2 u2|/dy),
// capped at params.dt_max (which also covers the all-zero-velocity case).
double compute_dt(const State& state, const EulerParams& params);

struct StepStats {
    int stages = 0;
    int elliptic_solves = 0;
    int newton_iters = 0;
    int cg_iters = 0;
    double max_residual = 0.0;  // worst final Newton residual of the step
};

// One fully-discrete IMEX-RK step of size dt. The final update always uses
// the weight rows; for GSA tableaux it coincides with the last stage up to
// solver tolerance.
State imex_step(const State& state, const DoubleTableau& tableau, const EulerParams& params,
                Limiter limiter, double dt, StepStats* stats = nullptr);

struct StepRecord {
    int step = 0;
    double time = 0.0;
    double dt = 0.0;
    StepStats stats;
};

struct RunResult {
    State final_state;
    std::vector<StepRecord> steps;
};

using StepCallback = std::function<void(const State&, const StepRecord&)>;

struct RunOptions {
    std::vector<double> stop_times;  // extra times the loop lands on exactly
    StepCallback on_step;            // called after every accepted step
};

// Repeated imex_step with per-step compute_dt; the last step is shortened
// to land on t_end exactly (same for any requested stop_times).
RunResult run(const State& initial, const DoubleTableau& tableau, const EulerParams& params,
              Limiter limiter, double t_end, const RunOptions& opts = {});

}  // namespace machflow
