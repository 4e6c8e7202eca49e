#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "layersolve/errors.hpp"

namespace layersolve {

/// Composite Simpson on a (possibly nonuniform) grid: per node pair a
/// quadratic is fitted through three consecutive nodes. Exact for cubics on
/// uniform spacing, fourth-order on smoothly graded grids. A trapezoid rule
/// closes the last cell when the number of cells is odd.
inline double simpson_nonuniform(std::span<const double> x, std::span<const double> f) {
    const std::size_t n = x.size();
    if (n != f.size()) throw GridMismatch("quadrature grid/value size mismatch");
    if (n < 2) return 0.0;
    double total = 0.0;
    std::size_t i = 0;
    while (i + 2 < n) {
        const double h0 = x[i + 1] - x[i];
        const double h1 = x[i + 2] - x[i + 1];
        const double hs = h0 + h1;
        // exact integral of the quadratic through (x_i, x_{i+1}, x_{i+2})
        total += hs / 6.0 *
                 ((2.0 - h1 / h0) * f[i] + hs * hs / (h0 * h1) * f[i + 1] + (2.0 - h0 / h1) * f[i + 2]);
        i += 2;
    }
    if (i + 1 < n) total += 0.5 * (x[i + 1] - x[i]) * (f[i] + f[i + 1]);
    return total;
}

}  // namespace layersolve
