#include "machflow/implicit.hpp"

#include <cmath>
#include <sstream>

namespace machflow {

StageContext assemble_stage(const State& state_n,
                            const std::vector<FluxDivergence>& div_advective,
                            const std::vector<FluxDivergence>& div_stiff,
                            const DoubleTableau& tableau, int k, double dt,
                            const EulerParams& params) {
    if (k < 0 || k >= tableau.s)
        throw std::out_of_range("assemble_stage: stage index out of range");
    if ((int)div_advective.size() < k || (int)div_stiff.size() < k)
        throw std::out_of_range("assemble_stage: missing prior stage divergences");

    StageContext ctx;
    ctx.k = k;
    ctx.akk = tableau.a[k][k];
    ctx.dt = dt;
    ctx.params = params;
    ctx.rho_hat = state_n.rho;
    ctx.q1_hat = state_n.q1;
    ctx.q2_hat = state_n.q2;
    for (int l = 0; l < k; ++l) {
        const double ce = dt * tableau.a_tilde[k][l];
        const double ci = dt * tableau.a[k][l];
        for (int i = 0; i < state_n.grid.nx; ++i)
            for (int j = 0; j < state_n.grid.ny; ++j) {
                ctx.rho_hat(i, j) -= ce * div_advective[l].mass(i, j) + ci * div_stiff[l].mass(i, j);
                ctx.q1_hat(i, j) -= ce * div_advective[l].mom1(i, j) + ci * div_stiff[l].mom1(i, j);
                ctx.q2_hat(i, j) -= ce * div_advective[l].mom2(i, j) + ci * div_stiff[l].mom2(i, j);
            }
    }
    apply_bc(ctx.rho_hat);
    apply_bc(ctx.q1_hat, Parity::Odd, Parity::Even);
    apply_bc(ctx.q2_hat, Parity::Even, Parity::Odd);
    return ctx;
}

EllipticProblem make_elliptic_problem(const StageContext& ctx) {
    EllipticProblem prob;
    const double s = ctx.dt * ctx.akk;
    prob.coeff = s * s / (ctx.params.epsilon * ctx.params.epsilon);
    prob.gamma = ctx.params.gamma;
    const Field divq = discrete_divergence(ctx.q1_hat, ctx.q2_hat);
    prob.rhs = Field(ctx.rho_hat.grid(), 0.0);
    for (int i = 0; i < prob.rhs.nx(); ++i)
        for (int j = 0; j < prob.rhs.ny(); ++j)
            prob.rhs(i, j) = ctx.rho_hat(i, j) - ctx.dt * ctx.akk * divq(i, j);
    return prob;
}

namespace {

// rho(p) = p^{1/gamma} and its derivative, with the common exponents fast-pathed.
inline double rho_of_p(double p, double gamma) {
    if (gamma == 1.0) return p;
    if (gamma == 2.0) return std::sqrt(p);
    return std::pow(p, 1.0 / gamma);
}
inline double drho_dp(double p, double gamma) {
    if (gamma == 1.0) return 1.0;
    if (gamma == 2.0) return 0.5 / std::sqrt(p);
    return (1.0 / gamma) * std::pow(p, 1.0 / gamma - 1.0);
}

}  // namespace

PressureSolution solve_pressure_elliptic(const EllipticProblem& prob,
                                         const EllipticSolverOptions& opts) {
    const Grid2D& g = prob.rhs.grid();
    const double gamma = prob.gamma;
    PressureSolution sol;

    if (prob.coeff == 0.0) {
        // No Laplacian term: p = rhs^gamma pointwise.
        sol.p = Field(g, 0.0);
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j) sol.p(i, j) = pressure(prob.rhs(i, j), gamma);
        sol.pref = pressure(prob.rhs.mean_interior(), gamma);
        sol.phi = Field(g, 0.0);
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j) sol.phi(i, j) = sol.p(i, j) - sol.pref;
        apply_bc(sol.p);
        apply_bc(sol.phi);
        return sol;
    }

    const double rhs_mean = prob.rhs.mean_interior();
    if (!(rhs_mean > 0.0))
        throw SolverError("solve_pressure_elliptic: mean of rhs is not positive");
    const double pref = pressure(rhs_mean, gamma);
    sol.pref = pref;

    Field phi(g, 0.0);
    if (opts.phi_init && opts.phi_init->grid().same_layout(g)) {
        phi = *opts.phi_init;
    } else {
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j)
                phi(i, j) = pressure(std::max(prob.rhs(i, j), 1e-14), gamma) - pref;
    }
    apply_bc(phi);

    Field resid(g, 0.0), diag(g, 0.0), delta(g, 0.0);
    Field cg_r(g, 0.0), cg_p(g, 0.0), cg_ap(g, 0.0);

    auto apply_operator = [&](Field& x, Field& out) {
        apply_bc(x);
        const Field lap = wide_laplacian(x);
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j)
                out(i, j) = -prob.coeff * lap(i, j) + diag(i, j) * x(i, j);
    };

    double res_norm = 0.0;
    for (int newton = 0; newton <= opts.max_iter; ++newton) {
        // Residual and Jacobian diagonal at the current iterate.
        const Field lap = wide_laplacian(phi);
        res_norm = 0.0;
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j) {
                const double p = pref + phi(i, j);
                resid(i, j) = -prob.coeff * lap(i, j) + rho_of_p(p, gamma) - prob.rhs(i, j);
                diag(i, j) = drho_dp(p, gamma);
                res_norm = std::max(res_norm, std::fabs(resid(i, j)));
            }
        sol.residual_history.push_back(res_norm);
        if (res_norm <= opts.tol) {
            sol.newton_iters = newton;
            sol.phi = phi;
            apply_bc(sol.phi);
            sol.p = Field(g, 0.0);
            for (int i = 0; i < g.nx; ++i)
                for (int j = 0; j < g.ny; ++j) sol.p(i, j) = pref + phi(i, j);
            apply_bc(sol.p);
            return sol;
        }
        if (newton == opts.max_iter) break;

        // CG on J delta = -resid; J = -coeff Lap_h + diag is SPD.
        delta.fill(0.0);
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j) cg_r(i, j) = -resid(i, j);
        cg_p = cg_r;
        double rr = dot_interior(cg_r, cg_r);
        const double b_norm = std::sqrt(rr);
        const double cg_target = opts.cg_rel_tol * b_norm;
        int it = 0;
        while (std::sqrt(rr) > cg_target && it < opts.cg_max_iter) {
            apply_operator(cg_p, cg_ap);
            const double pap = dot_interior(cg_p, cg_ap);
            if (!(pap > 0.0)) break;  // numerically singular direction
            const double alpha = rr / pap;
            for (int i = 0; i < g.nx; ++i)
                for (int j = 0; j < g.ny; ++j) {
                    delta(i, j) += alpha * cg_p(i, j);
                    cg_r(i, j) -= alpha * cg_ap(i, j);
                }
            const double rr_new = dot_interior(cg_r, cg_r);
            const double beta = rr_new / rr;
            rr = rr_new;
            for (int i = 0; i < g.nx; ++i)
                for (int j = 0; j < g.ny; ++j) cg_p(i, j) = cg_r(i, j) + beta * cg_p(i, j);
            ++it;
        }
        sol.cg_iters += it;

        // Backtrack if the step leaves the positive-pressure domain.
        double lambda = 1.0;
        for (int halving = 0; halving < 30; ++halving) {
            double pmin = 1e300;
            for (int i = 0; i < g.nx; ++i)
                for (int j = 0; j < g.ny; ++j)
                    pmin = std::min(pmin, pref + phi(i, j) + lambda * delta(i, j));
            if (pmin > 0.0) break;
            lambda *= 0.5;
        }
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j) phi(i, j) += lambda * delta(i, j);
        apply_bc(phi);
    }

    std::ostringstream msg;
    msg << "solve_pressure_elliptic: no convergence after " << opts.max_iter
        << " Newton iterations; residual history:";
    for (double r : sol.residual_history) msg << " " << r;
    throw SolverError(msg.str());
}

State complete_stage(const StageContext& ctx, const PressureSolution& sol, double tol) {
    const Grid2D& g = ctx.rho_hat.grid();
    State stage(g);
    const double c = ctx.dt * ctx.akk / (ctx.params.epsilon * ctx.params.epsilon);
    const auto [gx, gy] = discrete_gradient(sol.phi);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            stage.rho(i, j) = density_from_pressure(sol.p(i, j), ctx.params.gamma);
            stage.q1(i, j) = ctx.q1_hat(i, j) - c * gx(i, j);
            stage.q2(i, j) = ctx.q2_hat(i, j) - c * gy(i, j);
        }
    apply_state_bc(stage);

    // Back-substituted mass equation; a mismatch beyond solver tolerance
    // indicates a stencil inconsistency, not a solver failure.
    const Field divq = discrete_divergence(stage.q1, stage.q2);
    double err = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            err = std::max(err, std::fabs(stage.rho(i, j) - (ctx.rho_hat(i, j) -
                                                             ctx.dt * ctx.akk * divq(i, j))));
    if (err > 10.0 * tol) {
        std::ostringstream msg;
        msg << "complete_stage: back-substitution residual " << err << " exceeds " << 10.0 * tol;
        throw SolverError(msg.str());
    }
    return stage;
}

State complete_stage(const StageContext& ctx, const Field& p_k, double tol) {
    PressureSolution sol;
    sol.p = p_k;
    apply_bc(sol.p);
    sol.pref = sol.p.mean_interior();
    sol.phi = Field(p_k.grid(), 0.0);
    for (int i = 0; i < p_k.nx(); ++i)
        for (int j = 0; j < p_k.ny(); ++j) sol.phi(i, j) = sol.p(i, j) - sol.pref;
    apply_bc(sol.phi);
    return complete_stage(ctx, sol, tol);
}

}  // namespace machflow
