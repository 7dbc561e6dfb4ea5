#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "liouville/errors.hpp"
#include "liouville/solver.hpp"
#include "liouville/stability.hpp"

namespace liouville {

struct ContinuationConfig {
    SolverConfig solver;
    EigenConfig eigen;
    double bracket_rel_tol = 1.0e-6; // on s, relative to the bracket top
    int sweep_geometric_steps = 6;
    int sweep_uniform_steps = 24;
    double s_max_growth = 2.0; // trace_curve extends s_max by this factor
    int max_extensions = 24;
    unsigned threads = 1;
};

/// Ray direction t = mu/lambda, arclength parameter s >= 0:
/// (lambda, mu) = s (1, t) / |(1, t)|.
inline std::pair<double, double> ray_parameters(double t, double s) {
    const double norm = std::sqrt(1.0 + t * t);
    return {s / norm, s * t / norm};
}

struct RayPoint {
    double s = 0.0;
    SolutionPair pair;
};

struct SweepResult {
    std::vector<RayPoint> points;          // converged prefix, increasing s
    std::optional<double> first_failure_s; // empty if the whole sweep converged
};

/// A located point of the existence curve: the fold along direction t.
struct CurvePoint {
    double t = 0.0;
    double lambda_star = 0.0;
    double mu_star = 0.0;
    double s_lo = 0.0;            // last s where the monotone iteration converged
    double s_hi = 0.0;            // first s where it failed
    double bracket_width = 0.0;   // s_hi - s_lo
    double lambda1_at_fold = 0.0; // principal eigenvalue at the last converged pair
    SolutionPair pair_at_fold;
};

/// Minimal solutions along the ray on a geometric-then-uniform grid of s
/// values up to s_max.  Each converged pair warm-starts the next solve;
/// the sweep stops at the first nonconvergence (that is the existence
/// boundary making itself known, not an error).
inline SweepResult sweep_ray(const RadialGrid& grid, const Nonlinearity& nl, double t,
                             double s_max, const ContinuationConfig& cfg = {}) {
    if (t <= 0.0) throw std::invalid_argument("sweep_ray: direction t must be positive");
    if (s_max <= 0.0) throw std::invalid_argument("sweep_ray: s_max must be positive");

    std::vector<double> s_values;
    for (int k = cfg.sweep_geometric_steps; k >= 1; --k)
        s_values.push_back(s_max / 2.0 * std::pow(2.0, -(k)));
    for (int j = 0; j <= cfg.sweep_uniform_steps; ++j)
        s_values.push_back(s_max / 2.0 * (1.0 + static_cast<double>(j) / cfg.sweep_uniform_steps));

    SweepResult result;
    std::optional<std::pair<Field, Field>> warm;
    for (double s : s_values) {
        const auto [lambda, mu] = ray_parameters(t, s);
        SolutionPair pair = minimal_solution(grid, lambda, mu, nl, cfg.solver, warm);
        if (!pair.converged) {
            result.first_failure_s = s;
            break;
        }
        warm = std::pair{pair.u, pair.v};
        result.points.push_back(RayPoint{s, std::move(pair)});
    }
    return result;
}

/// Bisection on monotone-iteration existence over the bracket (s_lo, s_hi).
/// The monotone iteration is the arbiter: each probe is a fresh-or-warm
/// monotone solve, never a bare Newton verdict.
inline CurvePoint fold_bisect(const RadialGrid& grid, const Nonlinearity& nl, double t,
                              std::pair<double, double> bracket, double rel_tol,
                              const ContinuationConfig& cfg = {}) {
    double s_lo = bracket.first, s_hi = bracket.second;
    if (!(s_lo > 0.0 && s_hi > s_lo))
        throw invalid_bracket("fold_bisect: need 0 < s_lo < s_hi");

    const auto solve_at = [&](double s, const std::optional<std::pair<Field, Field>>& warm) {
        const auto [lambda, mu] = ray_parameters(t, s);
        return minimal_solution(grid, lambda, mu, nl, cfg.solver, warm);
    };

    SolutionPair best = solve_at(s_lo, std::nullopt);
    if (!best.converged)
        throw invalid_bracket("fold_bisect: monotone iteration does not converge at s_lo");
    if (solve_at(s_hi, std::pair{best.u, best.v}).converged)
        throw invalid_bracket("fold_bisect: monotone iteration converges at s_hi");

    while (s_hi - s_lo > rel_tol * s_hi) {
        const double mid = 0.5 * (s_lo + s_hi);
        SolutionPair probe = solve_at(mid, std::pair{best.u, best.v});
        if (probe.converged) {
            s_lo = mid;
            best = std::move(probe);
        } else {
            s_hi = mid;
        }
    }

    CurvePoint cp;
    cp.t = t;
    cp.s_lo = s_lo;
    cp.s_hi = s_hi;
    cp.bracket_width = s_hi - s_lo;
    const double s_star = 0.5 * (s_lo + s_hi);
    const auto [lambda_star, mu_star] = ray_parameters(t, s_star);
    cp.lambda_star = lambda_star;
    cp.mu_star = mu_star;
    cp.lambda1_at_fold = principal_eigenpair(best, nl, cfg.eigen).lambda1;
    cp.pair_at_fold = std::move(best);
    return cp;
}

/// Convenience: fold along a ray given by direction only; extends the sweep
/// range geometrically until the existence boundary is bracketed.
inline CurvePoint locate_fold(const RadialGrid& grid, const Nonlinearity& nl, double t,
                              const ContinuationConfig& cfg = {}, double s_max_start = 1.0) {
    double s_max = s_max_start;
    for (int ext = 0; ext < cfg.max_extensions; ++ext) {
        const SweepResult sweep = sweep_ray(grid, nl, t, s_max, cfg);
        if (sweep.first_failure_s) {
            if (sweep.points.empty()) {
                // failed below the first sweep value; restart lower
                s_max /= 16.0;
                continue;
            }
            return fold_bisect(grid, nl, t,
                               {sweep.points.back().s, *sweep.first_failure_s},
                               cfg.bracket_rel_tol, cfg);
        }
        s_max *= cfg.s_max_growth;
    }
    throw std::runtime_error("locate_fold: no existence boundary found along t = " +
                             std::to_string(t) + " up to s = " + std::to_string(s_max));
}

struct TraceResult {
    std::vector<CurvePoint> points; // sorted by t
    std::vector<std::pair<double, std::string>> errors;
};

/// Folds along several ray directions; rays are independent work units and
/// run in parallel when cfg.threads > 1.  Per-ray failures are collected,
/// not fatal.
inline TraceResult trace_curve(const RadialGrid& grid, const Nonlinearity& nl,
                               const std::vector<double>& t_values,
                               const ContinuationConfig& cfg = {}) {
    TraceResult result;
    std::vector<std::optional<CurvePoint>> slots(t_values.size());
    std::vector<std::pair<double, std::string>> errors(t_values.size(),
                                                       {0.0, std::string()});

    std::atomic<std::size_t> cursor{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t k = cursor.fetch_add(1);
            if (k >= t_values.size()) return;
            try {
                slots[k] = locate_fold(grid, nl, t_values[k], cfg);
            } catch (const std::exception& e) {
                errors[k] = {t_values[k], e.what()};
            }
        }
    };

    const unsigned nthreads =
        std::max(1u, std::min<unsigned>(cfg.threads, t_values.size()));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (std::size_t k = 0; k < t_values.size(); ++k) {
        if (slots[k])
            result.points.push_back(std::move(*slots[k]));
        else if (!errors[k].second.empty())
            result.errors.push_back(errors[k]);
    }
    std::sort(result.points.begin(), result.points.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.t < b.t; });
    return result;
}

/// The approximation sequence toward the extremal solution:
/// minimal solutions at (lambda_n, mu_n) = (1 - 1/n)(lambda*, mu*).
struct ExtremalApproximation {
    CurvePoint curve_point;
    std::vector<int> n_set;
    std::vector<SolutionPair> pairs;
    std::vector<double> lambda1_per_n;
    double u0_extrapolated = 0.0; // Aitken delta^2 on the center values
    double v0_extrapolated = 0.0;
    bool all_converged = true;
    bool all_stable = true;
    std::string diagnostic; // set on nonconvergence (bracket-quality issue)
};

namespace detail {
inline double aitken_limit(const std::vector<double>& x) {
    if (x.size() < 3) return x.empty() ? 0.0 : x.back();
    const double x0 = x[x.size() - 3], x1 = x[x.size() - 2], x2 = x.back();
    const double denom = (x2 - x1) - (x1 - x0);
    if (std::fabs(denom) < 1e-14 * (1.0 + std::fabs(x2))) return x2;
    return x2 - (x2 - x1) * (x2 - x1) / denom;
}
} // namespace detail

inline ExtremalApproximation extremal_approximation(const RadialGrid& grid,
                                                    const Nonlinearity& nl,
                                                    const CurvePoint& cp,
                                                    const std::vector<int>& n_set,
                                                    const ContinuationConfig& cfg = {}) {
    for (std::size_t k = 0; k < n_set.size(); ++k) {
        if (n_set[k] < 2) throw std::invalid_argument("extremal_approximation: n must be >= 2");
        if (k > 0 && n_set[k] <= n_set[k - 1])
            throw std::invalid_argument("extremal_approximation: n_set must be increasing");
    }
    ExtremalApproximation ea;
    ea.curve_point = cp;
    ea.n_set = n_set;

    std::vector<double> u0s, v0s;
    std::optional<std::pair<Field, Field>> warm;
    for (int n : n_set) {
        const double factor = 1.0 - 1.0 / n;
        SolutionPair pair = minimal_solution(grid, factor * cp.lambda_star,
                                             factor * cp.mu_star, nl, cfg.solver, warm);
        if (!pair.converged) {
            ea.all_converged = false;
            ea.diagnostic = "no convergence at n = " + std::to_string(n) +
                            "; the fold bracket is likely too loose";
            break;
        }
        warm = std::pair{pair.u, pair.v};
        u0s.push_back(pair.center_u());
        v0s.push_back(pair.center_v());
        const double lambda1 = principal_eigenpair(pair, nl, cfg.eigen).lambda1;
        ea.lambda1_per_n.push_back(lambda1);
        if (lambda1 < -1e-8) ea.all_stable = false;
        ea.pairs.push_back(std::move(pair));
    }
    ea.u0_extrapolated = detail::aitken_limit(u0s);
    ea.v0_extrapolated = detail::aitken_limit(v0s);
    return ea;
}

} // namespace liouville
