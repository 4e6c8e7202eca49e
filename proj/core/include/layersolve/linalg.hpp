#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "layersolve/errors.hpp"

namespace layersolve {

/// Solve a tridiagonal system in-place with partial pivoting (LAPACK dgtsv
/// style). Robust for the indefinite operators that show up once the
/// potential has negative eigenvalues. `lower`, `diag`, `upper` have sizes
/// n-1, n, n-1; `rhs` has size n and receives the solution.
inline void solve_tridiagonal(std::vector<double> lower, std::vector<double> diag,
                              std::vector<double> upper, std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    if (n == 0) return;
    std::vector<double> extra(n > 2 ? n - 2 : 0, 0.0);  // second superdiagonal fill
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(diag[i]) >= std::abs(lower[i])) {
            if (diag[i] == 0.0) throw NearSingular("tridiagonal pivot is exactly zero");
            const double m = lower[i] / diag[i];
            diag[i + 1] -= m * upper[i];
            rhs[i + 1] -= m * rhs[i];
            lower[i] = 0.0;
        } else {
            // swap rows i and i+1
            const double m = diag[i] / lower[i];
            diag[i] = lower[i];
            double tmp = diag[i + 1];
            diag[i + 1] = upper[i] - m * tmp;
            upper[i] = tmp;
            if (i + 2 < n) {
                extra[i] = upper[i + 1];
                upper[i + 1] = -m * extra[i];
            }
            std::swap(rhs[i], rhs[i + 1]);
            rhs[i + 1] -= m * rhs[i];
            lower[i] = 0.0;
        }
    }
    if (diag[n - 1] == 0.0) throw NearSingular("tridiagonal pivot is exactly zero");
    rhs[n - 1] /= diag[n - 1];
    if (n >= 2) {
        rhs[n - 2] = (rhs[n - 2] - upper[n - 2] * rhs[n - 1]) / diag[n - 2];
    }
    for (std::size_t k = n; k-- > 2;) {
        const std::size_t i = k - 2;
        double v = rhs[i] - upper[i] * rhs[i + 1];
        if (i < extra.size()) v -= extra[i] * rhs[i + 2];
        rhs[i] = v / diag[i];
    }
}

/// Dense banded LU with partial pivoting, LAPACK-free. Bandwidths are small
/// (<= 3) everywhere in this project, so the O(n b^2) cost is negligible.
class BandedMatrix {
public:
    BandedMatrix(std::size_t n, int kl, int ku)
        : n_(n), kl_(kl), ku_(ku), stride_(2 * kl + ku + 1), a_(stride_ * n, 0.0) {}

    double& at(std::size_t i, std::size_t j) {
        // stored with row offset kl (extra kl rows for pivot fill)
        return a_[j * stride_ + (kl_ + ku_ + static_cast<int>(i) - static_cast<int>(j))];
    }

    /// Factor and solve A x = b; b is overwritten with x.
    void solve(std::vector<double>& b) {
        const int n = static_cast<int>(n_);
        const int kl = kl_, ku = ku_, kv = kl + ku;
        std::vector<int> piv(n_);
        for (int j = 0; j < n; ++j) {
            const int i_end = std::min(n - 1, j + kl);
            int p = j;
            double pmax = std::abs(entry(j, j));
            for (int i = j + 1; i <= i_end; ++i) {
                const double v = std::abs(entry(i, j));
                if (v > pmax) { pmax = v; p = i; }
            }
            if (pmax == 0.0) throw NearSingular("banded pivot is exactly zero");
            piv[j] = p;
            const int j_end = std::min(n - 1, j + kv);
            if (p != j) {
                for (int c = j; c <= j_end; ++c) std::swap(entry(j, c), entry(p, c));
            }
            const double d = entry(j, j);
            for (int i = j + 1; i <= i_end; ++i) {
                const double m = entry(i, j) / d;
                entry(i, j) = m;
                for (int c = j + 1; c <= j_end; ++c) entry(i, c) -= m * entry(j, c);
            }
        }
        for (int j = 0; j < n; ++j) {
            if (piv[j] != j) std::swap(b[j], b[piv[j]]);
            const int i_end = std::min(n - 1, j + kl);
            for (int i = j + 1; i <= i_end; ++i) b[i] -= entry(i, j) * b[j];
        }
        for (int i = n - 1; i >= 0; --i) {
            const int j_end = std::min(n - 1, i + kv);
            double v = b[i];
            for (int j = i + 1; j <= j_end; ++j) v -= entry(i, j) * b[j];
            b[i] = v / entry(i, i);
        }
    }

private:
    double& entry(int i, int j) { return at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }

    std::size_t n_;
    int kl_, ku_, stride_;
    std::vector<double> a_;
};

}  // namespace layersolve
