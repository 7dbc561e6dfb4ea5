#pragma once

#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liouville/banded.hpp"

namespace liouville {

/// Uniform radial discretization of the unit ball in R^N.
///
/// Nodes are r_i = i*h, i = 0..n+1 with h = 1/(n+1); the n "interior"
/// nodes sit strictly between the center r_0 = 0 and the boundary
/// r_{n+1} = 1.  The center is an unknown of every Dirichlet solve (it is
/// an interior point of the ball), handled by the symmetry limit of the
/// Laplacian.  Quadrature weights integrate the piecewise-linear
/// interpolant against the exact measure omega_{N-1} r^{N-1} dr, so
/// constants are integrated exactly and the weights sum to |Omega|.
struct RadialGrid {
    int dim = 0;                      // N >= 1
    int n = 0;                        // interior node count
    double h = 0.0;                   // mesh width 1/(n+1)
    double volume = 0.0;              // |Omega| of the unit ball
    double sphere_area = 0.0;         // omega_{N-1} = |S^{N-1}|
    std::vector<double> radii;        // n+2 nodes, 0 = r_0 < ... < r_{n+1} = 1
    std::vector<double> quad_weights; // n+2 nonnegative weights
    std::vector<double> cell_mass;    // n+1 values omega * int_{r_i}^{r_{i+1}} r^{N-1} dr

    int point_count() const { return n + 2; }
};

/// Nodal values on a RadialGrid, including center and boundary.
struct Field {
    std::vector<double> values;

    Field() = default;
    explicit Field(std::size_t count, double fill = 0.0) : values(count, fill) {}

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    auto begin() { return values.begin(); }
    auto end() { return values.end(); }
    auto begin() const { return values.begin(); }
    auto end() const { return values.end(); }

    double max() const {
        double m = values.front();
        for (double x : values) m = std::max(m, x);
        return m;
    }
    double min() const {
        double m = values.front();
        for (double x : values) m = std::min(m, x);
        return m;
    }
    double sup_norm() const {
        double m = 0.0;
        for (double x : values) m = std::max(m, std::fabs(x));
        return m;
    }
};

inline void require_on_grid(const RadialGrid& grid, const Field& w, const char* what) {
    if (static_cast<int>(w.size()) != grid.point_count())
        throw std::invalid_argument(std::string(what) + ": field size " +
                                    std::to_string(w.size()) + " does not match grid with " +
                                    std::to_string(grid.point_count()) + " points");
}

inline Field make_field(const RadialGrid& grid, const std::function<double(double)>& f) {
    Field w(grid.point_count());
    for (int i = 0; i < grid.point_count(); ++i) w[i] = f(grid.radii[i]);
    return w;
}

inline Field zero_field(const RadialGrid& grid) { return Field(grid.point_count(), 0.0); }

inline RadialGrid build_radial_grid(int dim, int n) {
    if (dim < 1) throw std::invalid_argument("build_radial_grid: dim must be >= 1");
    if (n < 3) throw std::invalid_argument("build_radial_grid: n must be >= 3");

    RadialGrid g;
    g.dim = dim;
    g.n = n;
    g.h = 1.0 / (n + 1);
    g.sphere_area = 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
    g.volume = g.sphere_area / dim;

    g.radii.resize(n + 2);
    for (int i = 0; i <= n + 1; ++i) g.radii[i] = i * g.h;
    g.radii[n + 1] = 1.0;

    // weights: w_i = omega * int hat_i(r) r^{N-1} dr, in closed form via
    // the antiderivatives P = r^N/N and Q = r^{N+1}/(N+1)
    const auto P = [dim](double r) { return std::pow(r, dim) / dim; };
    const auto Q = [dim](double r) { return std::pow(r, dim + 1) / (dim + 1); };

    g.quad_weights.assign(n + 2, 0.0);
    g.cell_mass.assign(n + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
        const double a = g.radii[i], b = g.radii[i + 1];
        const double mass = P(b) - P(a);  // int_a^b r^{N-1} dr
        const double first = Q(b) - Q(a); // int_a^b r^N dr
        g.cell_mass[i] = g.sphere_area * mass;
        g.quad_weights[i] += g.sphere_area * (b * mass - first) / g.h;
        g.quad_weights[i + 1] += g.sphere_area * (first - a * mass) / g.h;
    }
    return g;
}

/// -Delta w in radial form -(w'' + (N-1)/r w'), second-order central
/// differences; the center row is the symmetry limit -2N (w_1 - w_0)/h^2.
/// The boundary entry of the result is set to zero.
inline Field apply_laplacian(const RadialGrid& grid, const Field& w) {
    require_on_grid(grid, w, "apply_laplacian");
    const int n = grid.n;
    const double h2 = grid.h * grid.h;
    Field out(grid.point_count(), 0.0);
    out[0] = -2.0 * grid.dim * (w[1] - w[0]) / h2;
    for (int i = 1; i <= n; ++i) {
        const double c = (grid.dim - 1) / (2.0 * grid.h * grid.radii[i]);
        out[i] = -(w[i + 1] - 2.0 * w[i] + w[i - 1]) / h2 - c * (w[i + 1] - w[i - 1]);
    }
    out[n + 1] = 0.0;
    return out;
}

/// Quadrature-weighted integral over the ball.
inline double integrate(const RadialGrid& grid, const Field& w) {
    require_on_grid(grid, w, "integrate");
    double s = 0.0;
    for (int i = 0; i < grid.point_count(); ++i) s += grid.quad_weights[i] * w[i];
    return s;
}

/// Integral of f(node values) without materializing a Field.
inline double integrate(const RadialGrid& grid, const Field& w,
                        const std::function<double(double)>& f) {
    require_on_grid(grid, w, "integrate");
    double s = 0.0;
    for (int i = 0; i < grid.point_count(); ++i) s += grid.quad_weights[i] * f(w[i]);
    return s;
}

/// Discrete mixed Dirichlet form int grad(a) . grad(b) dx using one-sided
/// difference quotients on cell midpoints against the exact cell masses.
/// This is the single gradient convention used by every energy and
/// gradient identity in the library.
inline double dirichlet_form(const RadialGrid& grid, const Field& a, const Field& b) {
    require_on_grid(grid, a, "dirichlet_form");
    require_on_grid(grid, b, "dirichlet_form");
    const double inv_h2 = 1.0 / (grid.h * grid.h);
    double s = 0.0;
    for (int i = 0; i <= grid.n; ++i)
        s += grid.cell_mass[i] * (a[i + 1] - a[i]) * (b[i + 1] - b[i]) * inv_h2;
    return s;
}

/// int |grad w|^2 dx.  Warns (once per call) when w is not a Dirichlet field.
inline double dirichlet_energy(const RadialGrid& grid, const Field& w) {
    require_on_grid(grid, w, "dirichlet_energy");
    if (std::fabs(w[grid.n + 1]) > 1e-12 * (1.0 + w.sup_norm()))
        std::cerr << "dirichlet_energy: field has nonzero boundary value "
                  << w[grid.n + 1] << "\n";
    return dirichlet_form(grid, w, w);
}

/// Prefactored direct solver for -Delta w = rhs, w = 0 on the boundary.
/// The matrix over the n+1 unknowns (center + interior) is tridiagonal;
/// it never changes for a given grid, so factor once and reuse.
class PoissonSolver {
public:
    explicit PoissonSolver(const RadialGrid& grid)
        : grid_(&grid), lu_(assemble(grid)) {}

    /// rhs given at grid nodes; boundary entry ignored. Result has zero boundary value.
    Field solve(const Field& rhs) const {
        require_on_grid(*grid_, rhs, "PoissonSolver::solve");
        std::vector<double> b(rhs.values.begin(), rhs.values.begin() + grid_->n + 1);
        lu_.solve(b);
        Field w(grid_->point_count(), 0.0);
        std::copy(b.begin(), b.end(), w.values.begin());
        return w;
    }

    /// In-place variant over raw unknown vectors (n+1 entries), for hot loops.
    void solve_unknowns(std::vector<double>& b) const { lu_.solve(b); }

private:
    static BandedLU assemble(const RadialGrid& grid) {
        const int m = grid.n + 1;
        const double h2 = grid.h * grid.h;
        BandedMatrix a(m, 1, 1);
        a.at(0, 0) = 2.0 * grid.dim / h2;
        a.at(0, 1) = -2.0 * grid.dim / h2;
        for (int i = 1; i <= grid.n; ++i) {
            const double c = (grid.dim - 1) / (2.0 * grid.h * grid.radii[i]);
            a.at(i, i - 1) = -1.0 / h2 + c;
            a.at(i, i) = 2.0 / h2;
            if (i < grid.n) a.at(i, i + 1) = -1.0 / h2 - c;
        }
        try {
            return BandedLU(std::move(a));
        } catch (const std::runtime_error& e) {
            // the discrete Dirichlet Laplacian is positive definite; a
            // singular factorization here is a program bug
            throw std::logic_error(std::string("PoissonSolver: ") + e.what());
        }
    }

    const RadialGrid* grid_;
    BandedLU lu_;
};

inline Field solve_poisson(const RadialGrid& grid, const Field& rhs) {
    return PoissonSolver(grid).solve(rhs);
}

} // namespace liouville
