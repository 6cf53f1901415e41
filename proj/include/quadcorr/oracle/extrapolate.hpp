#pragma once

// Width extrapolation of cylinder data.

#include "../error.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace quadcorr::oracle {

struct Extrapolation {
    double limit = 0;
    double error = 0;
};

/// Fits v(W) = limit + B e^{-cW} through the last three of evenly spaced
/// widths (Aitken's delta-squared). The error estimate is the distance from
/// the widest value to the limit, inflated by 4.
///
/// Differences below `noise_floor` count as converged. Throws
/// estimation_error when the tail is not monotone or c <= 0.
inline Extrapolation extrapolate(const std::vector<int>& widths, const std::vector<double>& values,
                                 double noise_floor = 1e-13) {
    const std::size_t n = values.size();
    if (n < 3 || widths.size() != n) throw estimation_error("extrapolate: need at least 3 widths");
    const int step = widths[1] - widths[0];
    for (std::size_t i = 1; i < n; ++i)
        if (widths[i] - widths[i - 1] != step || step <= 0)
            throw estimation_error("extrapolate: widths must be increasing and evenly spaced");

    const double v1 = values[n - 3], v2 = values[n - 2], v3 = values[n - 1];
    const double d1 = v2 - v1, d2 = v3 - v2;
    if (std::abs(d2) <= noise_floor) return {v3, 4 * std::abs(d2)};

    int sign = 0;
    for (std::size_t i = 1; i < n; ++i) {
        const double d = values[i] - values[i - 1];
        if (std::abs(d) <= noise_floor) continue;
        const int s = d > 0 ? 1 : -1;
        if (sign != 0 && s != sign) {
            std::ostringstream os;
            os << "extrapolate: non-monotone tail at W = " << widths[i];
            throw estimation_error(os.str());
        }
        sign = s;
    }
    const double r = d2 / d1;
    if (!(r > 0) || !(r < 1)) {
        std::ostringstream os;
        os << "extrapolate: successive differences do not contract (ratio " << r << ")";
        throw estimation_error(os.str());
    }
    const double limit = v3 + d2 * r / (1 - r);
    return {limit, 4 * std::abs(v3 - limit)};
}

} // namespace quadcorr::oracle
