// Command-line front end: batch solves, curve tracing, extremal-sequence
// diagnostics and inequality audits, with bit-stable JSON/CSV artifacts.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "liouville/continuation.hpp"
#include "liouville/report_io.hpp"
#include "liouville/stability.hpp"
#include "liouville/verify.hpp"
#include "liouville/version.hpp"

namespace {

using namespace liouville;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1; // unsatisfied report or failed assertion
constexpr int kExitConfig = 2;
constexpr int kExitOverflow = 3;
constexpr int kExitIo = 4;

struct CommonOptions {
    int dim = 1;
    int n_grid = 1000;
    std::string json_path;
    std::string csv_path;
    unsigned seed = 0;
    unsigned threads = 0; // 0: take LIOUVILLE_THREADS, else 1
    double newton_tol = 1.0e-10;
    double monotone_tol = 1.0e-10;
    int newton_max_iter = 200;
    int monotone_max_iter = 100000;
    double blowup_cap = 700.0;
    double tol_eig = 1.0e-8;
    double bracket_tol = 1.0e-6;
};

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LIOUVILLE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

SolverConfig solver_config(const CommonOptions& o) {
    SolverConfig cfg;
    cfg.newton_tol = o.newton_tol;
    cfg.monotone_tol = o.monotone_tol;
    cfg.newton_max_iter = o.newton_max_iter;
    cfg.monotone_max_iter = o.monotone_max_iter;
    cfg.blowup_cap = o.blowup_cap;
    return cfg;
}

ContinuationConfig continuation_config(const CommonOptions& o) {
    ContinuationConfig cfg;
    cfg.solver = solver_config(o);
    cfg.bracket_rel_tol = o.bracket_tol;
    cfg.threads = resolve_threads(o.threads);
    return cfg;
}

void add_common_options(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--dim", o.dim, "space dimension N >= 1")->required();
    cmd->add_option("--n", o.n_grid, "interior grid point count")->check(CLI::PositiveNumber);
    cmd->add_option("--json", o.json_path, "JSON report path");
    cmd->add_option("--csv", o.csv_path, "CSV table path");
    cmd->add_option("--seed", o.seed, "seed for generated test fields");
    cmd->add_option("--threads", o.threads,
                    "worker threads (default: LIOUVILLE_THREADS or 1)");
    cmd->add_option("--newton-tol", o.newton_tol, "Newton residual tolerance");
    cmd->add_option("--monotone-tol", o.monotone_tol, "monotone successive-change tolerance");
    cmd->add_option("--newton-max-iter", o.newton_max_iter, "Newton iteration cap");
    cmd->add_option("--monotone-max-iter", o.monotone_max_iter, "monotone iteration cap");
    cmd->add_option("--cap", o.blowup_cap, "overflow cap on field values");
    cmd->add_option("--tol-eig", o.tol_eig, "stability predicate tolerance");
    cmd->add_option("--bracket-tol", o.bracket_tol, "fold bisection relative tolerance");
}

void validate_common(const CommonOptions& o) {
    if (o.dim < 1) throw std::invalid_argument("--dim must be >= 1");
    if (o.n_grid < 3) throw std::invalid_argument("--n must be >= 3");
    for (double tol : {o.newton_tol, o.monotone_tol, o.tol_eig, o.bracket_tol})
        if (!(tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
    if (!(o.blowup_cap > 0.0)) throw std::invalid_argument("--cap must be positive");
}

void write_common_config(JsonWriter& w, const std::string& command, const CommonOptions& o) {
    w.key("tool").value(kToolName);
    w.key("version").value(kToolVersion);
    w.key("command").value(command);
    w.key("config").begin_object();
    w.key("dim").value(o.dim);
    w.key("n").value(o.n_grid);
    w.key("seed").value(static_cast<long long>(o.seed));
    w.key("newton_tol").value(o.newton_tol);
    w.key("monotone_tol").value(o.monotone_tol);
    w.key("newton_max_iter").value(o.newton_max_iter);
    w.key("monotone_max_iter").value(o.monotone_max_iter);
    w.key("blowup_cap").value(o.blowup_cap);
    w.key("tol_eig").value(o.tol_eig);
    w.key("bracket_tol").value(o.bracket_tol);
}

void write_report(JsonWriter& w, const InequalityReport& r) {
    w.begin_object();
    w.key("label").value(r.label);
    w.key("lhs").value(r.lhs);
    w.key("rhs").value(r.rhs);
    w.key("slack").value(r.slack);
    w.key("satisfied").value(r.satisfied);
    if (std::isfinite(r.ratio)) w.key("ratio").value(r.ratio);
    w.key("context").begin_object();
    w.key("dim").value(r.context.dim);
    w.key("n").value(r.context.n);
    w.key("lambda").value(r.context.lambda);
    w.key("mu").value(r.context.mu);
    if (r.context.alpha) w.key("alpha").value(*r.context.alpha);
    if (r.context.epsilon) w.key("epsilon").value(*r.context.epsilon);
    w.end_object();
    w.end_object();
}

void write_pair_summary(JsonWriter& w, const SolutionPair& pair) {
    w.begin_object();
    w.key("lambda").value(pair.lambda);
    w.key("mu").value(pair.mu);
    w.key("converged").value(pair.converged);
    w.key("blew_up").value(pair.blew_up);
    w.key("residual_norm").value(pair.residual_norm);
    w.key("iterations").value(pair.iterations);
    w.key("center_u").value(pair.center_u());
    w.key("center_v").value(pair.center_v());
    w.key("sup_u").value(pair.u.max());
    w.key("sup_v").value(pair.v.max());
    w.end_object();
}

std::string fields_csv(const RadialGrid& grid, const SolutionPair& pair) {
    CsvWriter csv({"r", "u", "v"});
    for (int i = 0; i < grid.point_count(); ++i)
        csv.row(std::vector<double>{grid.radii[i], pair.u[i], pair.v[i]});
    return csv.str();
}

void write_artifacts(const std::string& json_path, const std::string& json_content,
                     const std::string& csv_path, const std::string& csv_content) {
    try {
        atomic_write_file(json_path, json_content);
        if (!csv_path.empty()) atomic_write_file(csv_path, csv_content);
    } catch (const std::exception& e) {
        std::cerr << "io error: " << e.what() << "\n";
        std::exit(kExitIo);
    }
}

// ---------------------------------------------------------------- solve ----

struct SolveOptions {
    CommonOptions common;
    double lambda = 0.0;
    double mu = 0.0;
};

int run_solve(const SolveOptions& opt) {
    validate_common(opt.common);
    if (!(opt.lambda > 0.0 && opt.mu > 0.0))
        throw std::invalid_argument("--lambda and --mu must be positive");

    const RadialGrid grid = build_radial_grid(opt.common.dim, opt.common.n_grid);
    const Nonlinearity nl = Nonlinearity::exponential();
    const SolutionPair pair =
        minimal_solution(grid, opt.lambda, opt.mu, nl, solver_config(opt.common));

    JsonWriter w;
    w.begin_object();
    write_common_config(w, "solve", opt.common);
    w.key("lambda").value(opt.lambda);
    w.key("mu").value(opt.mu);
    w.end_object(); // config
    w.key("result");
    write_pair_summary(w, pair);
    if (pair.converged) {
        const EigenPair ep = principal_eigenpair(pair, nl);
        w.key("lambda1").value(ep.lambda1);
        w.key("stable").value(ep.lambda1 >= -opt.common.tol_eig);
    }
    w.end_object();

    const std::string json_path =
        opt.common.json_path.empty() ? "solve_report.json" : opt.common.json_path;
    const std::string csv_path = opt.common.csv_path.empty() ? "fields.csv" : opt.common.csv_path;
    write_artifacts(json_path, w.str(), csv_path, fields_csv(grid, pair));

    if (pair.blew_up) return kExitOverflow;
    return pair.converged ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------- trace ----

struct TraceOptions {
    CommonOptions common;
    std::vector<double> rays = {1.0};
    double s_max = 0.0; // 0: automatic extension
};

int run_trace(const TraceOptions& opt) {
    validate_common(opt.common);
    for (double t : opt.rays)
        if (!(t > 0.0)) throw std::invalid_argument("--rays entries must be positive");

    const RadialGrid grid = build_radial_grid(opt.common.dim, opt.common.n_grid);
    const Nonlinearity nl = Nonlinearity::exponential();
    ContinuationConfig cfg = continuation_config(opt.common);

    TraceResult trace;
    if (opt.s_max > 0.0) {
        // fixed range: sweep + bisect per ray, errors collected
        for (double t : opt.rays) {
            try {
                const SweepResult sweep = sweep_ray(grid, nl, t, opt.s_max, cfg);
                if (!sweep.first_failure_s || sweep.points.empty())
                    throw std::runtime_error("no existence boundary below --s-max");
                trace.points.push_back(fold_bisect(
                    grid, nl, t, {sweep.points.back().s, *sweep.first_failure_s},
                    cfg.bracket_rel_tol, cfg));
            } catch (const std::exception& e) {
                trace.errors.emplace_back(t, e.what());
            }
        }
        std::sort(trace.points.begin(), trace.points.end(),
                  [](const CurvePoint& a, const CurvePoint& b) { return a.t < b.t; });
    } else {
        trace = trace_curve(grid, nl, opt.rays, cfg);
    }

    JsonWriter w;
    w.begin_object();
    write_common_config(w, "trace", opt.common);
    w.key("rays").begin_array();
    for (double t : opt.rays) w.value(t);
    w.end_array();
    w.key("s_max").value(opt.s_max);
    w.end_object();
    w.key("curve").begin_array();
    for (const CurvePoint& cp : trace.points) {
        w.begin_object();
        w.key("t").value(cp.t);
        w.key("lambda_star").value(cp.lambda_star);
        w.key("mu_star").value(cp.mu_star);
        w.key("s_lo").value(cp.s_lo);
        w.key("s_hi").value(cp.s_hi);
        w.key("bracket_width").value(cp.bracket_width);
        w.key("lambda1_at_fold").value(cp.lambda1_at_fold);
        w.key("pair_at_fold");
        write_pair_summary(w, cp.pair_at_fold);
        w.end_object();
    }
    w.end_array();
    w.key("errors").begin_array();
    for (const auto& [t, msg] : trace.errors) {
        w.begin_object();
        w.key("t").value(t);
        w.key("message").value(msg);
        w.end_object();
    }
    w.end_array();
    w.end_object();

    CsvWriter csv({"t", "lambda_star", "mu_star", "bracket_width", "lambda1_at_fold"});
    for (const CurvePoint& cp : trace.points)
        csv.row(std::vector<double>{cp.t, cp.lambda_star, cp.mu_star, cp.bracket_width,
                                    cp.lambda1_at_fold});

    const std::string json_path =
        opt.common.json_path.empty() ? "trace_report.json" : opt.common.json_path;
    const std::string csv_path = opt.common.csv_path.empty() ? "curve.csv" : opt.common.csv_path;
    write_artifacts(json_path, w.str(), csv_path, csv.str());

    return trace.points.empty() ? kExitViolation : kExitOk;
}

// ------------------------------------------------------------- extremal ----

struct ExtremalOptions {
    CommonOptions common;
    double t = 1.0;
    std::vector<int> n_set = {2, 4, 8, 16, 32, 64, 128, 256};
    std::vector<double> p_values = {2.0, 3.0, 4.5};
    int levels = 2;
};

int run_extremal(const ExtremalOptions& opt) {
    validate_common(opt.common);
    if (!(opt.t > 0.0)) throw std::invalid_argument("--t must be positive");
    if (opt.levels < 1) throw std::invalid_argument("--levels must be >= 1");

    const RadialGrid grid = build_radial_grid(opt.common.dim, opt.common.n_grid);
    const Nonlinearity nl = Nonlinearity::exponential();
    const ContinuationConfig cfg = continuation_config(opt.common);

    const CurvePoint cp = locate_fold(grid, nl, opt.t, cfg);
    const ExtremalApproximation ea = extremal_approximation(grid, nl, cp, opt.n_set, cfg);
    const RegularityReport reg = regularity_diagnostic(nl, ea, opt.p_values, opt.levels, cfg);

    JsonWriter w;
    w.begin_object();
    write_common_config(w, "extremal", opt.common);
    w.key("t").value(opt.t);
    w.key("n_set").begin_array();
    for (int n : opt.n_set) w.value(n);
    w.end_array();
    w.key("p_values").begin_array();
    for (double p : opt.p_values) w.value(p);
    w.end_array();
    w.key("levels").value(opt.levels);
    w.end_object();

    w.key("fold").begin_object();
    w.key("t").value(cp.t);
    w.key("lambda_star").value(cp.lambda_star);
    w.key("mu_star").value(cp.mu_star);
    w.key("bracket_width").value(cp.bracket_width);
    w.key("lambda1_at_fold").value(cp.lambda1_at_fold);
    w.end_object();

    w.key("approximation").begin_object();
    w.key("all_converged").value(ea.all_converged);
    w.key("all_stable").value(ea.all_stable);
    if (!ea.diagnostic.empty()) w.key("diagnostic").value(ea.diagnostic);
    w.key("u0_extrapolated").value(ea.u0_extrapolated);
    w.key("v0_extrapolated").value(ea.v0_extrapolated);
    w.key("sequence").begin_array();
    for (std::size_t k = 0; k < ea.pairs.size(); ++k) {
        w.begin_object();
        w.key("index_n").value(ea.n_set[k]);
        w.key("lambda1").value(ea.lambda1_per_n[k]);
        w.key("pair");
        write_pair_summary(w, ea.pairs[k]);
        w.end_object();
    }
    w.end_array();
    w.end_object();

    w.key("regularity").begin_object();
    w.key("levels").begin_array();
    for (const RegularityLevel& lvl : reg.levels) {
        w.begin_object();
        w.key("grid_n").value(lvl.grid_n);
        w.key("lambda_star").value(lvl.lambda_star);
        w.key("mu_star").value(lvl.mu_star);
        w.key("u0_extrapolated").value(lvl.u0_extrapolated);
        w.key("center_u").begin_array();
        for (double x : lvl.center_u) w.value(x);
        w.end_array();
        w.key("sup_u").begin_array();
        for (double x : lvl.sup_u) w.value(x);
        w.end_array();
        w.key("sup_v").begin_array();
        for (double x : lvl.sup_v) w.value(x);
        w.end_array();
        w.key("step1_energy").begin_array();
        for (double x : lvl.step1_energy) w.value(x);
        w.end_array();
        w.key("int_exp_pu").begin_array();
        for (std::size_t pi = 0; pi < reg.p_values.size(); ++pi) {
            w.begin_object();
            w.key("p").value(reg.p_values[pi]);
            w.key("values").begin_array();
            for (double x : lvl.exp_pu[pi]) w.value(x);
            w.end_array();
            w.end_object();
        }
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.key("verdicts").begin_object();
    for (const auto& [name, verdict] : reg.verdicts) w.key(name).value(verdict);
    w.end_object();
    w.end_object();
    w.end_object();

    CsvWriter csv({"index_n", "lambda_n", "mu_n", "center_u", "center_v", "sup_u", "sup_v",
                   "lambda1"});
    for (std::size_t k = 0; k < ea.pairs.size(); ++k) {
        const SolutionPair& pair = ea.pairs[k];
        csv.row(std::vector<double>{static_cast<double>(ea.n_set[k]), pair.lambda, pair.mu,
                                    pair.center_u(), pair.center_v(), pair.u.max(),
                                    pair.v.max(), ea.lambda1_per_n[k]});
    }

    const std::string json_path =
        opt.common.json_path.empty() ? "extremal_report.json" : opt.common.json_path;
    const std::string csv_path =
        opt.common.csv_path.empty() ? "extremal.csv" : opt.common.csv_path;
    write_artifacts(json_path, w.str(), csv_path, csv.str());

    return (ea.all_converged && ea.all_stable) ? kExitOk : kExitViolation;
}

// --------------------------------------------------------------- verify ----

struct VerifyOptions {
    CommonOptions common;
    double lambda = 0.0;
    double mu = 0.0;
    std::vector<double> alphas = {0.6, 1.0, 2.0, 3.0, 3.9};
    std::vector<double> epsilons = {0.01, 0.1};
    int random_fields = 100;
};

int run_verify(const VerifyOptions& opt) {
    validate_common(opt.common);
    if (!(opt.lambda > 0.0 && opt.mu > 0.0))
        throw std::invalid_argument("--lambda and --mu must be positive");
    if (opt.random_fields < 0) throw std::invalid_argument("--fields must be >= 0");

    const RadialGrid grid = build_radial_grid(opt.common.dim, opt.common.n_grid);
    const Nonlinearity nl = Nonlinearity::exponential();
    const SolutionPair pair =
        minimal_solution(grid, opt.lambda, opt.mu, nl, solver_config(opt.common));
    if (!pair.converged) {
        std::cerr << "verify: no minimal solution at (" << opt.lambda << ", " << opt.mu
                  << ")\n";
        return pair.blew_up ? kExitOverflow : kExitViolation;
    }

    VerifyConfig vcfg;
    vcfg.blowup_cap = opt.common.blowup_cap;

    std::vector<InequalityReport> reports;
    reports.push_back(verify_product_bound(pair, vcfg));
    reports.push_back(verify_gradient_identity(pair, vcfg));
    reports.push_back(verify_pointwise_young(grid, pair.v, vcfg));
    reports.push_back(verify_integral_cauchy_schwarz(pair, vcfg));

    // quadratic-form audit: proof fields plus seeded random Dirichlet fields
    std::vector<Field> test_fields = {exp_half_test_field(pair)};
    for (double alpha : opt.alphas) test_fields.push_back(exp_alpha_test_field(pair, alpha));
    const auto random_fields = random_dirichlet_fields(grid, opt.random_fields, opt.common.seed);
    test_fields.insert(test_fields.end(), random_fields.begin(), random_fields.end());
    for (const Field& phi : test_fields) {
        const QuadraticForm q = stability_quadratic_form(pair, nl, phi);
        reports.push_back(
            make_report("stability", q.lhs, q.rhs, detail::pair_context(pair), 1.0e-6));
    }

    std::vector<AlphaEstimateReport> alpha_reports;
    for (double alpha : opt.alphas)
        for (double eps : opt.epsilons)
            alpha_reports.push_back(alpha_estimate_report(pair, alpha, eps, vcfg));

    const GradientIdentityTerms terms = gradient_identity_terms(pair, vcfg);
    const EigenPair ep = principal_eigenpair(pair, nl);

    bool all_ok = true;
    double max_ratio = 0.0;
    for (const InequalityReport& r : reports) {
        all_ok = all_ok && r.satisfied;
        if (std::isfinite(r.ratio)) max_ratio = std::max(max_ratio, r.ratio);
    }
    for (const AlphaEstimateReport& ar : alpha_reports) all_ok = all_ok && ar.all_satisfied();

    JsonWriter w;
    w.begin_object();
    write_common_config(w, "verify", opt.common);
    w.key("lambda").value(opt.lambda);
    w.key("mu").value(opt.mu);
    w.key("alpha").begin_array();
    for (double a : opt.alphas) w.value(a);
    w.end_array();
    w.key("epsilon").begin_array();
    for (double e : opt.epsilons) w.value(e);
    w.end_array();
    w.key("random_fields").value(opt.random_fields);
    w.end_object();

    w.key("pair");
    write_pair_summary(w, pair);
    w.key("lambda1").value(ep.lambda1);
    w.key("stable").value(ep.lambda1 >= -opt.common.tol_eig);
    w.key("gradient_identity").begin_object();
    w.key("upper").value(terms.upper);
    w.key("pde_form").value(terms.pde_form);
    w.key("mixed_form").value(terms.mixed_form);
    w.key("energy_form").value(terms.energy_form);
    w.key("pde_equality_gap").value(std::fabs(terms.pde_form - terms.mixed_form));
    w.key("chain_equality_gap").value(std::fabs(terms.mixed_form - terms.energy_form));
    w.end_object();

    w.key("reports").begin_array();
    for (const InequalityReport& r : reports) write_report(w, r);
    w.end_array();

    w.key("alpha_chains").begin_array();
    for (const AlphaEstimateReport& ar : alpha_reports) {
        w.begin_object();
        w.key("alpha").value(ar.alpha);
        w.key("epsilon").value(ar.epsilon);
        w.key("X").value(ar.X);
        w.key("Y").value(ar.Y);
        w.key("empirical_constant").value(ar.empirical_constant);
        w.key("all_satisfied").value(ar.all_satisfied());
        w.key("reports").begin_array();
        for (const InequalityReport& r : ar.reports) write_report(w, r);
        w.end_array();
        w.end_object();
    }
    w.end_array();

    w.key("summary").begin_object();
    w.key("all_satisfied").value(all_ok);
    w.key("max_ratio").value(max_ratio);
    w.end_object();
    w.end_object();

    const std::string json_path =
        opt.common.json_path.empty() ? "verify_report.json" : opt.common.json_path;
    const std::string csv_path = opt.common.csv_path.empty() ? "fields.csv" : opt.common.csv_path;
    write_artifacts(json_path, w.str(), csv_path, fields_csv(grid, pair));

    return all_ok ? kExitOk : kExitViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolName) +
                 ": minimal branches, the existence curve, extremal approximations and "
                 "inequality audits for the coupled exponential system"};
    app.require_subcommand(1);

    SolveOptions solve_opt;
    auto* solve_cmd = app.add_subcommand("solve", "minimal solution at fixed (lambda, mu)");
    add_common_options(solve_cmd, solve_opt.common);
    solve_cmd->add_option("--lambda", solve_opt.lambda, "lambda > 0")->required();
    solve_cmd->add_option("--mu", solve_opt.mu, "mu > 0")->required();

    TraceOptions trace_opt;
    auto* trace_cmd = app.add_subcommand("trace", "existence-curve folds along rays t = mu/lambda");
    add_common_options(trace_cmd, trace_opt.common);
    trace_cmd->add_option("--rays", trace_opt.rays, "ray directions t")->delimiter(',');
    trace_cmd->add_option("--s-max", trace_opt.s_max, "sweep range (0: extend automatically)");

    ExtremalOptions extremal_opt;
    auto* extremal_cmd =
        app.add_subcommand("extremal", "extremal approximation sequence and regularity verdicts");
    add_common_options(extremal_cmd, extremal_opt.common);
    extremal_cmd->add_option("--t", extremal_opt.t, "ray direction t = mu/lambda");
    extremal_cmd->add_option("--n-set", extremal_opt.n_set, "approximation indices")
        ->delimiter(',');
    extremal_cmd->add_option("--p", extremal_opt.p_values, "exponents p in (1, 5)")
        ->delimiter(',');
    extremal_cmd->add_option("--levels", extremal_opt.levels, "grid refinement levels");

    VerifyOptions verify_opt;
    auto* verify_cmd =
        app.add_subcommand("verify", "inequality audits at one converged (lambda, mu)");
    add_common_options(verify_cmd, verify_opt.common);
    verify_cmd->add_option("--lambda", verify_opt.lambda, "lambda > 0")->required();
    verify_cmd->add_option("--mu", verify_opt.mu, "mu > 0")->required();
    verify_cmd->add_option("--alpha", verify_opt.alphas, "alpha weights in (1/2, 4)")
        ->delimiter(',');
    verify_cmd->add_option("--epsilon", verify_opt.epsilons, "epsilon weights > 0")
        ->delimiter(',');
    verify_cmd->add_option("--fields", verify_opt.random_fields, "random test field count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(solve_opt);
        if (trace_cmd->parsed()) return run_trace(trace_opt);
        if (extremal_cmd->parsed()) return run_extremal(extremal_opt);
        if (verify_cmd->parsed()) return run_verify(verify_opt);
        std::cerr << "no subcommand given\n";
        return kExitConfig;
    } catch (const blowup_error& e) {
        std::cerr << "overflow abort: " << e.what() << "\n";
        return kExitOverflow;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const iteration_stall& e) {
        std::cerr << "eigen iteration stall: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
}
