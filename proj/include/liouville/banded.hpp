#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace liouville {

/// General banded matrix with kl sub- and ku super-diagonals, stored
/// LAPACK-style in band format with kl extra rows for pivoting fill-in.
/// Entry (i, j) is valid when |i - j| is within the band.
class BandedMatrix {
public:
    BandedMatrix(int n, int kl, int ku)
        : n_(n), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1),
          a_(static_cast<std::size_t>(ld_) * n, 0.0) {}

    int size() const { return n_; }
    int lower_bandwidth() const { return kl_; }
    int upper_bandwidth() const { return ku_; }

    double& at(int i, int j) {
        assert(j - i <= ku_ && i - j <= kl_);
        return a_[static_cast<std::size_t>(j) * ld_ + (kl_ + ku_ + i - j)];
    }
    double at(int i, int j) const {
        assert(j - i <= ku_ && i - j <= kl_);
        return a_[static_cast<std::size_t>(j) * ld_ + (kl_ + ku_ + i - j)];
    }

    /// y = A x
    std::vector<double> multiply(const std::vector<double>& x) const {
        assert(static_cast<int>(x.size()) == n_);
        std::vector<double> y(x.size(), 0.0);
        for (int i = 0; i < n_; ++i) {
            const int j0 = std::max(0, i - kl_);
            const int j1 = std::min(n_ - 1, i + ku_);
            double s = 0.0;
            for (int j = j0; j <= j1; ++j) s += at(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

private:
    friend class BandedLU;
    int n_, kl_, ku_, ld_;
    std::vector<double> a_;
};

/// LU factorization of a banded matrix with partial pivoting.
/// Factor once, solve many right-hand sides.
class BandedLU {
public:
    explicit BandedLU(BandedMatrix m) : m_(std::move(m)), piv_(m_.n_) {
        factorize();
    }

    /// Solve A x = b in place.
    void solve(std::vector<double>& b) const {
        const int n = m_.n_, kl = m_.kl_, ku = m_.ku_;
        assert(static_cast<int>(b.size()) == n);
        // forward substitution with the recorded row interchanges
        for (int j = 0; j < n - 1; ++j) {
            const int jp = piv_[j];
            if (jp != j) std::swap(b[j], b[jp]);
            const int im = std::min(n - 1, j + kl);
            for (int i = j + 1; i <= im; ++i) b[i] -= band(i, j) * b[j];
        }
        // back substitution
        for (int j = n - 1; j >= 0; --j) {
            b[j] /= band(j, j);
            const int i0 = std::max(0, j - kl - ku);
            for (int i = i0; i < j; ++i) b[i] -= band(i, j) * b[j];
        }
    }

    std::vector<double> solved(std::vector<double> b) const {
        solve(b);
        return b;
    }

private:
    // after factorization the band holds U in rows <= j and L multipliers below
    double& band(int i, int j) {
        return m_.a_[static_cast<std::size_t>(j) * m_.ld_ + (m_.kl_ + m_.ku_ + i - j)];
    }
    double band(int i, int j) const {
        return m_.a_[static_cast<std::size_t>(j) * m_.ld_ + (m_.kl_ + m_.ku_ + i - j)];
    }

    void factorize() {
        const int n = m_.n_, kl = m_.kl_, ku = m_.ku_;
        const int kv = kl + ku; // width of U after pivoting fill-in
        for (int j = 0; j < n; ++j) {
            const int im = std::min(n - 1, j + kl);
            int p = j;
            double pmax = std::fabs(band(j, j));
            for (int i = j + 1; i <= im; ++i) {
                const double v = std::fabs(band(i, j));
                if (v > pmax) { pmax = v; p = i; }
            }
            piv_[j] = p;
            if (pmax == 0.0)
                throw std::runtime_error("banded LU: singular matrix at column " + std::to_string(j));
            if (p != j) {
                const int jm = std::min(n - 1, j + kv);
                for (int c = j; c <= jm; ++c) std::swap(band(j, c), band(p, c));
            }
            const double d = band(j, j);
            for (int i = j + 1; i <= im; ++i) {
                const double l = band(i, j) / d;
                band(i, j) = l;
                const int jm = std::min(n - 1, j + kv);
                for (int c = j + 1; c <= jm; ++c) band(i, c) -= l * band(j, c);
            }
        }
    }

    BandedMatrix m_;
    std::vector<int> piv_;
};

} // namespace liouville
