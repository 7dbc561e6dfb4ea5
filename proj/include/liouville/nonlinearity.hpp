#pragma once

#include <cmath>
#include <functional>
#include <string>

namespace liouville {

/// The pair of nondecreasing C^1 profiles driving the coupled system
///
///     -Delta u = mu  * g(v),   -Delta v = lambda * f(u).
///
/// f and g are stored unscaled; the parameters lambda and mu multiply them
/// at every use site, so one descriptor serves the whole (lambda, mu)
/// quadrant.  The canonical instance is f = g = exp.
struct Nonlinearity {
    std::function<double(double)> f;
    std::function<double(double)> f_prime;
    std::function<double(double)> g;
    std::function<double(double)> g_prime;
    std::string label;

    static Nonlinearity exponential() {
        auto e = [](double s) { return std::exp(s); };
        return Nonlinearity{e, e, e, e, "exp"};
    }
};

/// Largest relative mismatch between the stored derivatives and centered
/// finite differences of the values, sampled on [lo, hi].
inline double derivative_consistency_error(const Nonlinearity& nl, double lo, double hi,
                                           int samples = 64) {
    const double step = 1.0e-6;
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double s = lo + (hi - lo) * k / (samples - 1);
        const double df = (nl.f(s + step) - nl.f(s - step)) / (2.0 * step);
        const double dg = (nl.g(s + step) - nl.g(s - step)) / (2.0 * step);
        worst = std::max(worst, std::fabs(df - nl.f_prime(s)) / (1.0 + std::fabs(df)));
        worst = std::max(worst, std::fabs(dg - nl.g_prime(s)) / (1.0 + std::fabs(dg)));
    }
    return worst;
}

} // namespace liouville
