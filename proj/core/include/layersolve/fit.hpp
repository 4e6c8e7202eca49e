#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "layersolve/errors.hpp"

namespace layersolve {

/// Least-squares power-law fit through (A, value) pairs on log-log axes.
/// `centered_constant` is the fitted value at the geometric center of the
/// A range divided by A_c^slope_expected -- callers compare it against a
/// theoretical coefficient without extrapolating the line to A = 1.
struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;   // of log10(value) vs log10(A)
    double r_squared = 0.0;
    double log_a_center = 0.0;

    /// Coefficient c in value ~ c * A^expected, read off at the center of
    /// the fitted window.
    double coefficient_at_center(double expected_slope) const {
        const double logv = intercept + slope * log_a_center;
        return std::pow(10.0, logv - expected_slope * log_a_center);
    }
};

inline ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 4) throw NoFitPossible("exponent fit needs at least 4 points");
    for (const auto& [a, v] : points) {
        if (!(a > 0.0) || !(v > 0.0))
            throw NonPositiveValue("exponent fit requires positive A and values");
    }
    const std::size_t n = points.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (const auto& [a, v] : points) {
        const double x = std::log10(a), y = std::log10(v);
        sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
    }
    const double nn = static_cast<double>(n);
    const double den = nn * sxx - sx * sx;
    ExponentFit fit;
    fit.slope = (nn * sxy - sx * sy) / den;
    fit.intercept = (sy - fit.slope * sx) / nn;
    fit.log_a_center = sx / nn;
    double ss_res = 0.0, ss_tot = 0.0;
    const double ybar = sy / nn;
    for (const auto& [a, v] : points) {
        const double x = std::log10(a), y = std::log10(v);
        const double e = y - (fit.intercept + fit.slope * x);
        ss_res += e * e;
        ss_tot += (y - ybar) * (y - ybar);
    }
    fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
    return fit;
}

}  // namespace layersolve
