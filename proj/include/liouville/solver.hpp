#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liouville/banded.hpp"
#include "liouville/errors.hpp"
#include "liouville/nonlinearity.hpp"
#include "liouville/radial_grid.hpp"

namespace liouville {

struct SolverConfig {
    double newton_tol = 1.0e-10;       // residual sup-norm target
    double monotone_tol = 1.0e-10;     // successive-change sup-norm target
    int newton_max_iter = 200;
    int monotone_max_iter = 100000;
    double blowup_cap = 700.0;         // e^u overflows past here
    double newton_min_step = std::pow(2.0, -20);
};

/// A (candidate) solution of the coupled system at fixed (lambda, mu).
struct SolutionPair {
    const RadialGrid* grid = nullptr;
    Field u, v;
    double lambda = 0.0;
    double mu = 0.0;
    bool converged = false;
    double residual_norm = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool blew_up = false; // the iteration crossed the overflow cap

    double center_u() const { return u[0]; }
    double center_v() const { return v[0]; }
};

/// Sup-norm accuracy actually reachable by the discrete residual: the
/// second-difference stencil amplifies rounding by ~1/h^2, so demanding
/// less than this is asking for noise.
inline double residual_floor(const RadialGrid& grid, const Field& u, const Field& v) {
    const double eps = std::numeric_limits<double>::epsilon();
    return 32.0 * eps / (grid.h * grid.h) * (1.0 + u.sup_norm() + v.sup_norm());
}

inline double effective_newton_tol(const RadialGrid& grid, const Field& u, const Field& v,
                                   const SolverConfig& cfg) {
    return std::max(cfg.newton_tol, residual_floor(grid, u, v));
}

/// (-Delta u - mu g(v), -Delta v - lambda f(u)) at the unknown nodes.
/// Throws blowup_error when the fields exceed the overflow cap.
inline std::pair<Field, Field> residual(const SolutionPair& pair, const Nonlinearity& nl,
                                        const SolverConfig& cfg = {}) {
    const RadialGrid& grid = *pair.grid;
    require_on_grid(grid, pair.u, "residual");
    require_on_grid(grid, pair.v, "residual");
    if (pair.u.max() > cfg.blowup_cap || pair.v.max() > cfg.blowup_cap)
        throw blowup_error("residual: field values exceed the overflow cap " +
                           std::to_string(cfg.blowup_cap) + " (blow-up)");
    Field ru = apply_laplacian(grid, pair.u);
    Field rv = apply_laplacian(grid, pair.v);
    for (int i = 0; i <= grid.n; ++i) {
        ru[i] -= pair.mu * nl.g(pair.v[i]);
        rv[i] -= pair.lambda * nl.f(pair.u[i]);
    }
    ru[grid.n + 1] = 0.0;
    rv[grid.n + 1] = 0.0;
    return {std::move(ru), std::move(rv)};
}

namespace detail {

inline double residual_sup(const RadialGrid& grid, const std::pair<Field, Field>& r) {
    double m = 0.0;
    for (int i = 0; i <= grid.n; ++i) {
        m = std::max(m, std::fabs(r.first[i]));
        m = std::max(m, std::fabs(r.second[i]));
    }
    return m;
}

/// Jacobian of the coupled system in interleaved ordering
/// (u_0, v_0, u_1, v_1, ...): bandwidth 2 both sides.
inline BandedMatrix assemble_jacobian(const RadialGrid& grid, double lambda, double mu,
                                      const Nonlinearity& nl, const Field& u, const Field& v) {
    const int m = grid.n + 1;
    const double h2 = grid.h * grid.h;
    BandedMatrix jac(2 * m, 2, 2);
    const double center = 2.0 * grid.dim / h2;
    jac.at(0, 0) = center;
    jac.at(0, 2) = -center;
    jac.at(1, 1) = center;
    jac.at(1, 3) = -center;
    jac.at(0, 1) = -mu * nl.g_prime(v[0]);
    jac.at(1, 0) = -lambda * nl.f_prime(u[0]);
    for (int i = 1; i <= grid.n; ++i) {
        const double c = (grid.dim - 1) / (2.0 * grid.h * grid.radii[i]);
        const double sub = -1.0 / h2 + c;
        const double dia = 2.0 / h2;
        const double sup = -1.0 / h2 - c;
        const int iu = 2 * i, iv = 2 * i + 1;
        jac.at(iu, iu - 2) = sub;
        jac.at(iu, iu) = dia;
        jac.at(iv, iv - 2) = sub;
        jac.at(iv, iv) = dia;
        if (i < grid.n) {
            jac.at(iu, iu + 2) = sup;
            jac.at(iv, iv + 2) = sup;
        }
        jac.at(iu, iv) = -mu * nl.g_prime(v[i]);
        jac.at(iv, iu) = -lambda * nl.f_prime(u[i]);
    }
    return jac;
}

} // namespace detail

/// Damped Newton iteration on the coupled 2(n+1) system.  Returns the last
/// iterate with the converged flag set iff the residual sup-norm dropped
/// below the effective tolerance; trial steps that would cross the overflow
/// cap are rejected by the line search rather than aborting.
inline SolutionPair newton_solve(const RadialGrid& grid, double lambda, double mu,
                                 const Nonlinearity& nl,
                                 std::pair<Field, Field> initial,
                                 const SolverConfig& cfg = {}) {
    if (lambda <= 0.0 || mu <= 0.0)
        throw std::invalid_argument("newton_solve: lambda and mu must be positive");
    SolutionPair pair;
    pair.grid = &grid;
    pair.u = std::move(initial.first);
    pair.v = std::move(initial.second);
    pair.lambda = lambda;
    pair.mu = mu;
    require_on_grid(grid, pair.u, "newton_solve");
    require_on_grid(grid, pair.v, "newton_solve");

    auto res = residual(pair, nl, cfg); // throws on insane initial data
    double rnorm = detail::residual_sup(grid, res);
    const int m = grid.n + 1;

    for (int it = 0; it < cfg.newton_max_iter; ++it) {
        pair.iterations = it;
        pair.residual_norm = rnorm;
        if (rnorm <= effective_newton_tol(grid, pair.u, pair.v, cfg)) {
            pair.converged = true;
            return pair;
        }
        BandedLU lu(detail::assemble_jacobian(grid, lambda, mu, nl, pair.u, pair.v));
        std::vector<double> rhs(2 * m);
        for (int i = 0; i < m; ++i) {
            rhs[2 * i] = -res.first[i];
            rhs[2 * i + 1] = -res.second[i];
        }
        lu.solve(rhs);

        // backtracking line search on the residual norm
        double step = 1.0;
        bool accepted = false;
        while (step >= cfg.newton_min_step) {
            SolutionPair trial = pair;
            for (int i = 0; i < m; ++i) {
                trial.u[i] = pair.u[i] + step * rhs[2 * i];
                trial.v[i] = pair.v[i] + step * rhs[2 * i + 1];
            }
            if (trial.u.max() > cfg.blowup_cap || trial.v.max() > cfg.blowup_cap) {
                step *= 0.5;
                continue;
            }
            auto trial_res = residual(trial, nl, cfg);
            const double trial_norm = detail::residual_sup(grid, trial_res);
            if (trial_norm < rnorm) {
                pair.u = std::move(trial.u);
                pair.v = std::move(trial.v);
                res = std::move(trial_res);
                rnorm = trial_norm;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break; // line search exhausted: likely at or past the fold
    }
    pair.residual_norm = rnorm;
    pair.converged = rnorm <= effective_newton_tol(grid, pair.u, pair.v, cfg);
    return pair;
}

inline SolutionPair newton_solve(const RadialGrid& grid, double lambda, double mu,
                                 const Nonlinearity& nl, const SolverConfig& cfg = {}) {
    return newton_solve(grid, lambda, mu, nl, {zero_field(grid), zero_field(grid)}, cfg);
}

/// Monotone (minimal-solution) iteration from (0, 0):
///   u_{k+1} = (-Delta)^{-1}(mu g(v_k)),  v_{k+1} = (-Delta)^{-1}(lambda f(u_k)).
/// Iterates increase pointwise toward the minimal solution; values crossing
/// the overflow cap or exhausting max_iter classify (lambda, mu) as beyond
/// the existence curve (converged = false -- information, not failure).
/// On success a Newton polish sharpens the iterate.
///
/// The optional warm start must be a subsolution at (lambda, mu) -- in
/// practice a converged minimal solution at smaller parameters -- so that
/// the iterates remain an increasing sequence below the minimal solution.
inline SolutionPair minimal_solution(const RadialGrid& grid, double lambda, double mu,
                                     const Nonlinearity& nl, const SolverConfig& cfg = {},
                                     const std::optional<std::pair<Field, Field>>& warm_start =
                                         std::nullopt) {
    if (lambda <= 0.0 || mu <= 0.0)
        throw std::invalid_argument("minimal_solution: lambda and mu must be positive");
    SolutionPair pair;
    pair.grid = &grid;
    pair.lambda = lambda;
    pair.mu = mu;
    pair.u = warm_start ? warm_start->first : zero_field(grid);
    pair.v = warm_start ? warm_start->second : zero_field(grid);
    require_on_grid(grid, pair.u, "minimal_solution");
    require_on_grid(grid, pair.v, "minimal_solution");

    const PoissonSolver poisson(grid);
    const int m = grid.n + 1;
    std::vector<double> fu(m), gv(m);

    for (int k = 0; k < cfg.monotone_max_iter; ++k) {
        pair.iterations = k;
        if (pair.u.max() > cfg.blowup_cap || pair.v.max() > cfg.blowup_cap) {
            pair.blew_up = true;
            pair.converged = false;
            return pair;
        }
        for (int i = 0; i < m; ++i) {
            gv[i] = mu * nl.g(pair.v[i]);
            fu[i] = lambda * nl.f(pair.u[i]);
        }
        poisson.solve_unknowns(gv); // becomes u_{k+1}
        poisson.solve_unknowns(fu); // becomes v_{k+1}
        double change = 0.0;
        for (int i = 0; i < m; ++i) {
            change = std::max(change, std::fabs(gv[i] - pair.u[i]));
            change = std::max(change, std::fabs(fu[i] - pair.v[i]));
            pair.u[i] = gv[i];
            pair.v[i] = fu[i];
        }
        if (change < cfg.monotone_tol) {
            // Newton polish; the monotone stopping rule already certifies
            // existence, so a failed polish (possible hard by the fold)
            // falls back to the monotone iterate.
            SolutionPair polished =
                newton_solve(grid, lambda, mu, nl, {pair.u, pair.v}, cfg);
            if (polished.converged) {
                polished.iterations = k + 1;
                return polished;
            }
            pair.converged = true;
            pair.residual_norm = detail::residual_sup(grid, residual(pair, nl, cfg));
            pair.iterations = k + 1;
            return pair;
        }
    }
    pair.converged = false;
    return pair;
}

} // namespace liouville
