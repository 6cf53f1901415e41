#pragma once

// Quadratic and bilinear relations tying the correlations C (disordered model,
// sinh 2K = sqrt(k)) to those of its Kramers-Wannier dual C_bar
// (sinh 2K* = 1/sqrt(k)) on the isotropic square lattice.
//
// Each function returns the signed residual; the relation holds when it is 0.
// `C` and `Cb` are callables (int m, int n) -> Real that honor the lattice
// symmetries, so negative indices are allowed.

#include <cmath>
#include <string_view>

namespace quadcorr::identity {

inline constexpr std::string_view axial_n_name = "axial-n";
inline constexpr std::string_view axial_m_name = "axial-m";
inline constexpr std::string_view plaquette_name = "plaquette";
inline constexpr std::string_view cross_name = "cross";
inline constexpr std::string_view seed_name = "seed";

/// k [C(m,n+1) C(m,n-1) - C(m,n)^2] + [Cb(m+1,n) Cb(m-1,n) - Cb(m,n)^2].
/// Not valid at the origin.
template <class Real, class F, class G>
Real axial_n(const F& C, const G& Cb, const Real& k, int m, int n) {
    return k * (C(m, n + 1) * C(m, n - 1) - C(m, n) * C(m, n)) +
           (Cb(m + 1, n) * Cb(m - 1, n) - Cb(m, n) * Cb(m, n));
}

/// Transpose of axial_n. Not valid at the origin.
template <class Real, class F, class G>
Real axial_m(const F& C, const G& Cb, const Real& k, int m, int n) {
    return k * (C(m + 1, n) * C(m - 1, n) - C(m, n) * C(m, n)) +
           (Cb(m, n + 1) * Cb(m, n - 1) - Cb(m, n) * Cb(m, n));
}

/// [Cb(m,n) Cb(m+1,n+1) - Cb(m+1,n) Cb(m,n+1)] - k [same for C]. Valid everywhere.
template <class Real, class F, class G>
Real plaquette(const F& C, const G& Cb, const Real& k, int m, int n) {
    return (Cb(m, n) * Cb(m + 1, n + 1) - Cb(m + 1, n) * Cb(m, n + 1)) -
           k * (C(m, n) * C(m + 1, n + 1) - C(m + 1, n) * C(m, n + 1));
}

/// sqrt(k) [C(m+1,n)Cb(m-1,n) + C(m-1,n)Cb(m+1,n) + C(m,n+1)Cb(m,n-1) + C(m,n-1)Cb(m,n+1)]
///   - 2 (k+1) C(m,n) Cb(m,n). Not valid at the origin.
template <class Real, class F, class G>
Real cross(const F& C, const G& Cb, const Real& k, int m, int n) {
    using std::sqrt;
    const Real sk = sqrt(k);
    return sk * (C(m + 1, n) * Cb(m - 1, n) + C(m - 1, n) * Cb(m + 1, n) + C(m, n + 1) * Cb(m, n - 1) +
                 C(m, n - 1) * Cb(m, n + 1)) -
           2 * (k + 1) * C(m, n) * Cb(m, n);
}

/// sqrt(k) C(1,0) + Cb(0,1) - sqrt(1+k).
template <class Real>
Real seed(const Real& c10, const Real& cbar01, const Real& k) {
    using std::sqrt;
    return sqrt(k) * c10 + cbar01 - sqrt(1 + k);
}

} // namespace quadcorr::identity
