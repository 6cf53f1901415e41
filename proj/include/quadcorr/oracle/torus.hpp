#pragma once

// Exact correlations on a W x L torus from traces of transfer-matrix products.

#include "cylinder.hpp"

#include <vector>

namespace quadcorr::oracle {

/// Tr(s_0 T^dy s_dx T^{L-dy}) / Tr(T^L), uniform coupling K, 0 <= dy < L.
inline double torus_correlation(int W, int L, double K, int dx, int dy) {
    if (L < 1 || dy < 0 || dy >= L) throw domain_error("torus_correlation: need 0 <= dy < L");
    if (W > 10) throw capacity_error("torus_correlation: trace by basis vectors limited to W <= 10");
    const Cylinder cyl(uniform_cylinder(W, K));
    const std::size_t dim = std::size_t{1} << W;
    double num = 0, den = 0;
    for (std::size_t s = 0; s < dim; ++s) {
        std::vector<double> a(dim, 0.0), d(dim, 0.0);
        a[s] = d[s] = 1;
        cyl.multiply_spin(a, dx);
        for (int t = 0; t < dy; ++t) {
            cyl.apply_layer(a, 0);
            cyl.apply_layer(d, 0);
        }
        cyl.multiply_spin(a, 0);
        for (int t = dy; t < L; ++t) {
            cyl.apply_layer(a, 0);
            cyl.apply_layer(d, 0);
        }
        num += a[s];
        den += d[s];
    }
    return num / den;
}

} // namespace quadcorr::oracle
