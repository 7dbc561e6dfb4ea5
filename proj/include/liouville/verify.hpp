#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liouville/continuation.hpp"
#include "liouville/errors.hpp"
#include "liouville/solver.hpp"

namespace liouville {

struct VerifyConfig {
    double rel_slack_tol = 1.0e-8;   // satisfied <=> slack >= -tol (1 + |rhs|)
    double regression_guard = 100.0; // bound on the empirical product-bound ratio
    double blowup_cap = 700.0;
};

struct ReportContext {
    int dim = 0;
    int n = 0;
    double lambda = 0.0;
    double mu = 0.0;
    std::optional<double> alpha;
    std::optional<double> epsilon;
};

/// One audited inequality: lhs <= rhs with relative slack tolerance.
struct InequalityReport {
    std::string label;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0; // rhs - lhs
    bool satisfied = false;
    double ratio = std::numeric_limits<double>::quiet_NaN(); // empirical constant, when meaningful
    ReportContext context;
};

inline InequalityReport make_report(std::string label, double lhs, double rhs,
                                    ReportContext ctx, double rel_slack_tol = 1.0e-8) {
    InequalityReport r;
    r.label = std::move(label);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.satisfied = r.slack >= -rel_slack_tol * (1.0 + std::fabs(rhs));
    r.context = std::move(ctx);
    return r;
}

namespace detail {

inline ReportContext pair_context(const SolutionPair& pair) {
    return {pair.grid->dim, pair.grid->n, pair.lambda, pair.mu, std::nullopt, std::nullopt};
}

/// integrate exp(a u + b v + c) with an overflow guard on the exponent
inline double exp_integral(const SolutionPair& pair, double a, double b, double cap,
                           const char* what) {
    const RadialGrid& grid = *pair.grid;
    double s = 0.0;
    for (int i = 0; i < grid.point_count(); ++i) {
        const double arg = a * pair.u[i] + b * pair.v[i];
        if (arg > cap)
            throw blowup_error(std::string(what) + ": exponent " + std::to_string(arg) +
                               " exceeds the overflow cap");
        s += grid.quad_weights[i] * std::exp(arg);
    }
    return s;
}

} // namespace detail

/// Empirical ratio of int e^{u+v} against |Omega| (lambda/mu + mu/lambda).
inline double product_bound_ratio(const SolutionPair& pair, const VerifyConfig& cfg = {}) {
    const double denom = pair.grid->volume * (pair.lambda / pair.mu + pair.mu / pair.lambda);
    return detail::exp_integral(pair, 1.0, 1.0, cfg.blowup_cap, "product_bound_ratio") / denom;
}

/// Label "l1": int e^{u+v} <= C |Omega| (lambda/mu + mu/lambda) with the
/// configured regression-guard constant; the report carries the empirical
/// ratio so suites can track their running maximum.
inline InequalityReport verify_product_bound(const SolutionPair& pair,
                                             const VerifyConfig& cfg = {}) {
    const double lhs = detail::exp_integral(pair, 1.0, 1.0, cfg.blowup_cap, "verify_product_bound");
    const double denom = pair.grid->volume * (pair.lambda / pair.mu + pair.mu / pair.lambda);
    InequalityReport r = make_report("l1", lhs, cfg.regression_guard * denom,
                                     detail::pair_context(pair), cfg.rel_slack_tol);
    r.ratio = lhs / denom;
    return r;
}

/// The four members of the gradient identity chain
///   lambda int e^{u+v} >= lambda int e^u (e^v - 1)
///                       = int grad v . grad(e^v - 1)
///                       = 4 int |grad(e^{v/2} - 1)|^2.
/// The first equality tests the solve (it integrates -Delta v = lambda e^u
/// by parts); the second is a pointwise chain rule.  Both close at the
/// discretization order, not exactly.
struct GradientIdentityTerms {
    double upper = 0.0;       // lambda int e^{u+v}
    double pde_form = 0.0;    // lambda int e^u (e^v - 1)
    double mixed_form = 0.0;  // int grad v . grad(e^v - 1)
    double energy_form = 0.0; // 4 int |grad(e^{v/2} - 1)|^2
};

inline GradientIdentityTerms gradient_identity_terms(const SolutionPair& pair,
                                                     const VerifyConfig& cfg = {}) {
    const RadialGrid& grid = *pair.grid;
    GradientIdentityTerms t;
    t.upper = pair.lambda *
              detail::exp_integral(pair, 1.0, 1.0, cfg.blowup_cap, "gradient_identity_terms");
    Field ev1(grid.point_count()), ehalf1(grid.point_count());
    double pde = 0.0;
    for (int i = 0; i < grid.point_count(); ++i) {
        ev1[i] = std::expm1(pair.v[i]);
        ehalf1[i] = std::expm1(0.5 * pair.v[i]);
        pde += grid.quad_weights[i] * std::exp(pair.u[i]) * ev1[i];
    }
    t.pde_form = pair.lambda * pde;
    t.mixed_form = dirichlet_form(grid, pair.v, ev1);
    t.energy_form = 4.0 * dirichlet_form(grid, ehalf1, ehalf1);
    return t;
}

/// Label "a1": the inequality end of the chain,
/// 4 int |grad(e^{v/2}-1)|^2 <= lambda int e^{u+v}.
inline InequalityReport verify_gradient_identity(const SolutionPair& pair,
                                                 const VerifyConfig& cfg = {}) {
    const GradientIdentityTerms t = gradient_identity_terms(pair, cfg);
    return make_report("a1", t.energy_form, t.upper, detail::pair_context(pair),
                       cfg.rel_slack_tol);
}

/// Label "young": e^{v/2} <= (1/4) e^v + 1 at every grid point.  The report
/// slack is the worst pointwise margin.
inline InequalityReport verify_pointwise_young(const RadialGrid& grid, const Field& v,
                                               const VerifyConfig& cfg = {}) {
    require_on_grid(grid, v, "verify_pointwise_young");
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid.point_count(); ++i)
        worst = std::min(worst, 0.25 * std::exp(v[i]) + 1.0 - std::exp(0.5 * v[i]));
    ReportContext ctx;
    ctx.dim = grid.dim;
    ctx.n = grid.n;
    return make_report("young", -worst, 0.0, ctx, cfg.rel_slack_tol);
}

/// Label "a7": (int e^{u+v})^2 <= int e^{(u+v)/2} e^u . int e^{(u+v)/2} e^v,
/// which is the Cauchy-Schwarz pairing of e^{(3u+v)/4} and e^{(u+3v)/4};
/// with nonnegative quadrature weights it holds for any fields.
inline InequalityReport verify_integral_cauchy_schwarz(const SolutionPair& pair,
                                                       const VerifyConfig& cfg = {}) {
    const double s = detail::exp_integral(pair, 1.0, 1.0, cfg.blowup_cap, "verify_integral_cs");
    const double a = detail::exp_integral(pair, 1.5, 0.5, cfg.blowup_cap, "verify_integral_cs");
    const double b = detail::exp_integral(pair, 0.5, 1.5, cfg.blowup_cap, "verify_integral_cs");
    return make_report("a7", s * s, a * b, detail::pair_context(pair), cfg.rel_slack_tol);
}

/// The alpha-weighted estimate chain at one (alpha, epsilon):
///   "2161"        sqrt(lm) int e^{(u+v)/2}(e^{au/2}-1)^2 <= (a/4) mu int (e^{au}-1) e^v
///   "2161b"       sqrt(lm) X <= (a/4) mu int e^{au} e^v + 2 sqrt(lm) int e^{(a+1)u/2} e^{v/2}
///   "rhs1"        int e^{au} e^v <= X^{(2a-1)/(2a)} Y^{1/(2a)}            (Hoelder)
///   "rhs2"        int e^{(a+1)u/2} e^{v/2} <= (eps/2) sqrt(mu/lambda) int e^{au} e^v
///                      + 1/(2 eps) sqrt(lambda/mu) C |Omega| (lambda/mu + mu/lambda)
///   "step2-final" (1 - (a/4 + eps)^2) X Y <= C1 (lambda/mu + mu/lambda)^2
///                      (1 + X^{(2a-1)/(2a)} Y^{1/(2a)} + Y^{(2a-1)/(2a)} X^{1/(2a)})
/// with X = int e^{(2a+1)u/2} e^{v/2}, Y the mirror image, C the empirical
/// product-bound ratio of this pair and C1 = C |Omega| (a/4 + eps) / eps.
struct AlphaEstimateReport {
    double alpha = 0.0;
    double epsilon = 0.0;
    double X = 0.0;
    double Y = 0.0;
    double empirical_constant = 0.0; // C above
    std::vector<InequalityReport> reports;

    bool all_satisfied() const {
        for (const auto& r : reports)
            if (!r.satisfied) return false;
        return true;
    }
};

inline AlphaEstimateReport alpha_estimate_report(const SolutionPair& pair, double alpha,
                                                 double epsilon, const VerifyConfig& cfg = {}) {
    if (!(alpha > 0.5 && alpha < 4.0))
        throw std::invalid_argument("alpha_estimate_report: alpha must lie in (1/2, 4)");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("alpha_estimate_report: epsilon must be positive");

    const RadialGrid& grid = *pair.grid;
    const double lambda = pair.lambda, mu = pair.mu;
    const double sqrt_lm = std::sqrt(lambda * mu);
    const double cap = cfg.blowup_cap;

    AlphaEstimateReport out;
    out.alpha = alpha;
    out.epsilon = epsilon;

    // quadratic-in-(e^{au/2}-1) integral needs its own guarded loop
    double sq_integral = 0.0, pde_integral = 0.0;
    for (int i = 0; i < grid.point_count(); ++i) {
        const double au = alpha * pair.u[i];
        if (au > cap || 0.5 * (pair.u[i] + pair.v[i]) + au > cap)
            throw blowup_error("alpha_estimate_report: exponent exceeds the overflow cap");
        const double half_uv = std::exp(0.5 * (pair.u[i] + pair.v[i]));
        const double em = std::expm1(0.5 * au);
        sq_integral += grid.quad_weights[i] * half_uv * em * em;
        pde_integral += grid.quad_weights[i] * std::expm1(au) * std::exp(pair.v[i]);
    }

    const double X =
        detail::exp_integral(pair, 0.5 * (2.0 * alpha + 1.0), 0.5, cap, "alpha_estimate_report");
    const double Y =
        detail::exp_integral(pair, 0.5, 0.5 * (2.0 * alpha + 1.0), cap, "alpha_estimate_report");
    const double E = detail::exp_integral(pair, alpha, 1.0, cap, "alpha_estimate_report");
    const double T =
        detail::exp_integral(pair, 0.5 * (alpha + 1.0), 0.5, cap, "alpha_estimate_report");
    const double C = product_bound_ratio(pair, cfg);
    out.X = X;
    out.Y = Y;
    out.empirical_constant = C;

    ReportContext ctx = detail::pair_context(pair);
    ctx.alpha = alpha;
    ctx.epsilon = epsilon;

    const double tol = cfg.rel_slack_tol;
    out.reports.push_back(
        make_report("2161", sqrt_lm * sq_integral, 0.25 * alpha * mu * pde_integral, ctx, tol));
    out.reports.push_back(make_report("2161b", sqrt_lm * X,
                                      0.25 * alpha * mu * E + 2.0 * sqrt_lm * T, ctx, tol));
    const double a_exp = (2.0 * alpha - 1.0) / (2.0 * alpha);
    const double b_exp = 1.0 / (2.0 * alpha);
    out.reports.push_back(
        make_report("rhs1", E, std::pow(X, a_exp) * std::pow(Y, b_exp), ctx, tol));
    const double bound = C * grid.volume * (lambda / mu + mu / lambda);
    out.reports.push_back(make_report(
        "rhs2", T,
        0.5 * epsilon * std::sqrt(mu / lambda) * E +
            0.5 / epsilon * std::sqrt(lambda / mu) * bound,
        ctx, tol));
    const double p = 0.25 * alpha + epsilon;
    const double c1 = C * grid.volume * p / epsilon;
    const double ratio_sum = lambda / mu + mu / lambda;
    out.reports.push_back(make_report(
        "step2-final", (1.0 - p * p) * X * Y,
        c1 * ratio_sum * ratio_sum *
            (1.0 + std::pow(X, a_exp) * std::pow(Y, b_exp) +
             std::pow(Y, a_exp) * std::pow(X, b_exp)),
        ctx, tol));
    return out;
}

/// Quantities tracked per approximation index and per grid level by the
/// regularity diagnostic.
struct RegularityLevel {
    int grid_n = 0;
    double lambda_star = 0.0;
    double mu_star = 0.0;
    std::vector<int> n_set;
    std::vector<double> center_u;      // u_n(0)
    std::vector<double> sup_u, sup_v;  // sup norms per n
    std::vector<double> step1_energy;  // 4 int |grad(e^{v_n/2}-1)|^2
    std::vector<std::vector<double>> exp_pu; // [p index][n index]: int e^{p u_n}
    double u0_extrapolated = 0.0;
};

struct RegularityReport {
    double t = 0.0;
    std::vector<double> p_values;
    std::vector<RegularityLevel> levels;
    std::vector<std::pair<std::string, std::string>> verdicts; // quantity -> verdict
    // divergence thresholds, fixed so the verdicts are deterministic
    static constexpr double kTailDeltaThreshold = 0.25; // per doubling, log-scale quantities
    static constexpr double kGridGrowthThreshold = 1.0; // across one grid refinement
    static constexpr double kRatioThreshold = 1.5;      // integral quantities

    std::string verdict_for(const std::string& name) const {
        for (const auto& [k, v] : verdicts)
            if (k == name) return v;
        return "";
    }
};

namespace detail {

inline std::string series_verdict_log_scale(const std::vector<double>& finest,
                                            double cross_level_growth) {
    const std::size_t k = finest.size();
    const double tail = k >= 2 ? finest[k - 1] - finest[k - 2] : 0.0;
    const bool diverging = tail >= RegularityReport::kTailDeltaThreshold ||
                           cross_level_growth >= RegularityReport::kGridGrowthThreshold;
    return diverging ? "diverging" : "bounded";
}

inline std::string series_verdict_ratio(const std::vector<double>& finest,
                                        double cross_level_ratio) {
    const std::size_t k = finest.size();
    const double tail = k >= 2 && finest[k - 2] != 0.0 ? finest[k - 1] / finest[k - 2] : 1.0;
    const bool diverging = tail >= RegularityReport::kRatioThreshold ||
                           cross_level_ratio >= RegularityReport::kRatioThreshold;
    return diverging ? "diverging" : "bounded";
}

} // namespace detail

/// Tracks the boundedness of the extremal approximation along the sequence
/// index and across grid refinements.  Sup-type quantities diverge on the
/// logarithmic scale (their per-doubling increments stop decaying), while
/// the exponential integrals are compared by the plain ratio test.
inline RegularityReport regularity_diagnostic(const Nonlinearity& nl,
                                              const ExtremalApproximation& ea,
                                              const std::vector<double>& p_values,
                                              int levels = 2,
                                              const ContinuationConfig& cfg = {},
                                              const VerifyConfig& vcfg = {}) {
    for (double p : p_values)
        if (!(p > 1.0 && p < 5.0))
            throw std::invalid_argument("regularity_diagnostic: p values must lie in (1, 5)");
    if (ea.pairs.empty())
        throw std::invalid_argument("regularity_diagnostic: empty approximation");
    if (levels < 1) throw std::invalid_argument("regularity_diagnostic: need at least one level");

    const RadialGrid& base = *ea.pairs.front().grid;
    RegularityReport report;
    report.t = ea.curve_point.t;
    report.p_values = p_values;

    const auto harvest = [&](const RadialGrid& grid, const ExtremalApproximation& approx) {
        RegularityLevel lvl;
        lvl.grid_n = grid.n;
        lvl.lambda_star = approx.curve_point.lambda_star;
        lvl.mu_star = approx.curve_point.mu_star;
        lvl.n_set = approx.n_set;
        lvl.exp_pu.resize(p_values.size());
        for (const SolutionPair& pair : approx.pairs) {
            lvl.center_u.push_back(pair.center_u());
            lvl.sup_u.push_back(pair.u.max());
            lvl.sup_v.push_back(pair.v.max());
            Field ehalf1(grid.point_count());
            for (int i = 0; i < grid.point_count(); ++i)
                ehalf1[i] = std::expm1(0.5 * pair.v[i]);
            lvl.step1_energy.push_back(4.0 * dirichlet_form(grid, ehalf1, ehalf1));
            for (std::size_t pi = 0; pi < p_values.size(); ++pi)
                lvl.exp_pu[pi].push_back(detail::exp_integral(
                    pair, p_values[pi], 0.0, vcfg.blowup_cap, "regularity_diagnostic"));
        }
        lvl.u0_extrapolated = approx.u0_extrapolated;
        return lvl;
    };

    report.levels.push_back(harvest(base, ea));
    for (int lv = 1; lv < levels; ++lv) {
        const RadialGrid refined = build_radial_grid(base.dim, (base.n + 1) * (1 << lv) - 1);
        const CurvePoint fold =
            locate_fold(refined, nl, ea.curve_point.t, cfg, ea.curve_point.s_hi * 1.1);
        const ExtremalApproximation approx =
            extremal_approximation(refined, nl, fold, ea.n_set, cfg);
        if (!approx.all_converged)
            throw std::runtime_error("regularity_diagnostic: refinement level " +
                                     std::to_string(lv) + " did not converge: " +
                                     approx.diagnostic);
        report.levels.push_back(harvest(refined, approx));
    }

    const RegularityLevel& coarse = report.levels.front();
    const RegularityLevel& fine = report.levels.back();
    const auto cross_growth = [&](auto member) {
        return (fine.*member).back() - (coarse.*member).back();
    };
    const auto cross_ratio = [&](const std::vector<double>& f, const std::vector<double>& c) {
        return c.back() != 0.0 ? f.back() / c.back() : 1.0;
    };

    report.verdicts.emplace_back(
        "center_u", detail::series_verdict_log_scale(fine.center_u,
                                                     cross_growth(&RegularityLevel::center_u)));
    report.verdicts.emplace_back(
        "sup_u",
        detail::series_verdict_log_scale(fine.sup_u, cross_growth(&RegularityLevel::sup_u)));
    report.verdicts.emplace_back(
        "sup_v",
        detail::series_verdict_log_scale(fine.sup_v, cross_growth(&RegularityLevel::sup_v)));
    report.verdicts.emplace_back(
        "step1_energy", detail::series_verdict_ratio(
                            fine.step1_energy, cross_ratio(fine.step1_energy, coarse.step1_energy)));
    for (std::size_t pi = 0; pi < p_values.size(); ++pi) {
        char name[48];
        std::snprintf(name, sizeof(name), "int_exp_pu@p=%g", p_values[pi]);
        report.verdicts.emplace_back(
            name, detail::series_verdict_ratio(fine.exp_pu[pi],
                                               cross_ratio(fine.exp_pu[pi], coarse.exp_pu[pi])));
    }
    return report;
}

} // namespace liouville
