#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "liouville/stability.hpp"
#include "oracle/shooting_oracle.hpp"

using namespace liouville;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOracleFold1d = 0.878457679774;
const Nonlinearity kExp = Nonlinearity::exponential();

SolutionPair zero_pair(const RadialGrid& g, double lambda, double mu) {
    SolutionPair pair;
    pair.grid = &g;
    pair.u = zero_field(g);
    pair.v = zero_field(g);
    pair.lambda = lambda;
    pair.mu = mu;
    pair.converged = true;
    pair.residual_norm = 0.0;
    return pair;
}

// bisection on monotone-iteration existence along lambda = mu, for the
// fold-adjacent stability checks (the continuation module has the full
// featured version; this keeps the module tests self-contained)
double scalar_fold(const RadialGrid& g, double lo, double hi, double rel_tol) {
    while (hi - lo > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (minimal_solution(g, mid, mid, kExp).converged)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

} // namespace

TEST_CASE("principal eigenpair of the decoupled operator") {
    const RadialGrid g = build_radial_grid(1, 2000);
    const double eta1 = 0.25 * kPi * kPi; // principal Dirichlet eigenvalue on (-1, 1)

    SECTION("unit parameters") {
        const EigenPair ep = principal_eigenpair(zero_pair(g, 1.0, 1.0), kExp);
        REQUIRE(ep.lambda1 == Approx(eta1 - 1.0).margin(1e-4));
        REQUIRE(ep.residual_sup <= 1e-8);
    }
    SECTION("vanishing coupling recovers the Laplacian eigenvalue") {
        const EigenPair ep = principal_eigenpair(zero_pair(g, 1e-5, 1e-5), kExp);
        REQUIRE(ep.lambda1 == Approx(eta1).margin(1e-4));
    }
    SECTION("asymmetric parameters couple through sqrt(lambda mu)") {
        const EigenPair ep = principal_eigenpair(zero_pair(g, 4.0, 1.0), kExp);
        REQUIRE(ep.lambda1 == Approx(eta1 - 2.0).margin(1e-4));
    }
}

TEST_CASE("eigenpair normalization, positivity and residual") {
    for (int dim : {1, 3, 10}) {
        const RadialGrid g = build_radial_grid(dim, 500);
        const double lam = dim == 1 ? 0.5 : (dim == 3 ? 2.0 : 9.0);
        const SolutionPair pair = minimal_solution(g, lam, 0.8 * lam, kExp);
        REQUIRE(pair.converged);
        const EigenPair ep = principal_eigenpair(pair, kExp);
        REQUIRE(ep.lambda1 > 0.0);
        for (int i = 0; i <= g.n; ++i) {
            REQUIRE(ep.phi1[i] > 0.0);
            REQUIRE(ep.psi1[i] > 0.0);
        }
        Field sq(g.point_count(), 0.0);
        for (int i = 0; i < g.point_count(); ++i)
            sq[i] = ep.phi1[i] * ep.phi1[i] + ep.psi1[i] * ep.psi1[i];
        REQUIRE(integrate(g, sq) == Approx(1.0).margin(1e-10));
        REQUIRE(ep.residual_sup <= ep.residual_tol);
        if (dim <= 3) REQUIRE(ep.residual_sup <= 1e-8);
        REQUIRE(ep.residual_tol <= 4e-8); // rounding floor at this resolution
        // the two linearized equations hold in sup norm
        Field r1 = apply_laplacian(g, ep.phi1);
        Field r2 = apply_laplacian(g, ep.psi1);
        for (int i = 0; i <= g.n; ++i) {
            r1[i] -= pair.mu * std::exp(pair.v[i]) * ep.psi1[i] + ep.lambda1 * ep.phi1[i];
            r2[i] -= pair.lambda * std::exp(pair.u[i]) * ep.phi1[i] + ep.lambda1 * ep.psi1[i];
        }
        for (int i = 0; i <= g.n; ++i) {
            REQUIRE(std::fabs(r1[i]) <= 2e-8);
            REQUIRE(std::fabs(r2[i]) <= 2e-8);
        }
    }
}

TEST_CASE("eigenvalue is invariant under the parameter swap") {
    const RadialGrid g = build_radial_grid(2, 400);
    const SolutionPair pair = minimal_solution(g, 1.2, 0.5, kExp);
    REQUIRE(pair.converged);
    SolutionPair swapped;
    swapped.grid = &g;
    swapped.u = pair.v;
    swapped.v = pair.u;
    swapped.lambda = pair.mu;
    swapped.mu = pair.lambda;
    const EigenPair a = principal_eigenpair(pair, kExp);
    const EigenPair b = principal_eigenpair(swapped, kExp);
    REQUIRE(a.lambda1 == Approx(b.lambda1).margin(1e-8));
    for (int i = 0; i < g.point_count(); ++i) {
        REQUIRE(a.phi1[i] == Approx(b.psi1[i]).margin(1e-8));
        REQUIRE(a.psi1[i] == Approx(b.phi1[i]).margin(1e-8));
    }
}

TEST_CASE("stability predicate along the symmetric branch") {
    const RadialGrid g = build_radial_grid(1, 1000);
    SECTION("zero fields at unit parameters are stable") {
        REQUIRE(is_stable(zero_pair(g, 1.0, 1.0), kExp));
    }
    SECTION("half-fold minimal solution is stable") {
        const double lam = 0.5 * kOracleFold1d;
        const SolutionPair pair = minimal_solution(g, lam, lam, kExp);
        REQUIRE(pair.converged);
        REQUIRE(is_stable(pair, kExp));
    }
    SECTION("eigenvalue nearly vanishes at the fold") {
        const double fold = scalar_fold(g, 0.5, 1.05, 3e-8);
        const SolutionPair pair = minimal_solution(g, fold, fold, kExp);
        REQUIRE(pair.converged);
        const EigenPair ep = principal_eigenpair(pair, kExp);
        REQUIRE(std::fabs(ep.lambda1) <= 1e-3);
    }
}

TEST_CASE("iteration stall is reported, not swallowed") {
    const RadialGrid g = build_radial_grid(1, 200);
    EigenConfig cfg;
    cfg.max_iter = 1;
    cfg.tol = 1e-15;
    REQUIRE_THROWS_AS(principal_eigenpair(zero_pair(g, 1.0, 1.0), kExp, cfg), iteration_stall);
}

TEST_CASE("stability quadratic form") {
    const RadialGrid g = build_radial_grid(2, 800);
    const SolutionPair pair = minimal_solution(g, 1.0, 1.4, kExp);
    REQUIRE(pair.converged);

    SECTION("zero test field") {
        const QuadraticForm q = stability_quadratic_form(pair, kExp, zero_field(g));
        REQUIRE(q.lhs == 0.0);
        REQUIRE(q.rhs == 0.0);
    }
    SECTION("integrand reduces to sqrt(lambda mu) e^{(u+v)/2} phi^2") {
        const Field phi = exp_half_test_field(pair);
        const QuadraticForm q = stability_quadratic_form(pair, kExp, phi);
        Field direct(g.point_count(), 0.0);
        for (int i = 0; i < g.point_count(); ++i)
            direct[i] = std::sqrt(pair.lambda * pair.mu) *
                        std::exp(0.5 * (pair.u[i] + pair.v[i])) * phi[i] * phi[i];
        REQUIRE(q.lhs == Approx(integrate(g, direct)).epsilon(1e-12));
    }
    SECTION("holds on the proof fields and seeded random fields") {
        std::vector<Field> fields = random_dirichlet_fields(g, 100, 0);
        fields.push_back(exp_half_test_field(pair));
        for (double alpha : {0.6, 1.0, 2.0, 3.0, 3.9})
            fields.push_back(exp_alpha_test_field(pair, alpha));
        for (const Field& phi : fields) {
            const QuadraticForm q = stability_quadratic_form(pair, kExp, phi);
            REQUIRE(q.lhs <= q.rhs + 1e-6 * (1.0 + q.rhs));
        }
    }
}

TEST_CASE("random Dirichlet fields are reproducible and Dirichlet") {
    const RadialGrid g = build_radial_grid(3, 100);
    const auto a = random_dirichlet_fields(g, 5, 42);
    const auto b = random_dirichlet_fields(g, 5, 42);
    const auto c = random_dirichlet_fields(g, 5, 43);
    REQUIRE(a.size() == 5);
    for (std::size_t k = 0; k < a.size(); ++k) {
        REQUIRE(a[k][g.n + 1] == 0.0);
        for (int i = 0; i < g.point_count(); ++i) REQUIRE(a[k][i] == b[k][i]);
    }
    bool any_different = false;
    for (int i = 0; i < g.point_count(); ++i)
        if (a[0][i] != c[0][i]) any_different = true;
    REQUIRE(any_different);
}
