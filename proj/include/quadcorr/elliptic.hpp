#pragma once

// Complete elliptic integrals and Jacobi elliptic functions by the
// arithmetic-geometric mean, generic over the floating type so the same code
// serves double and MPFR evaluations.

#include "error.hpp"
#include "precision.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <sstream>
#include <vector>

namespace quadcorr {

/// Distance from k = 1 below which tables and tails are refused.
inline constexpr double criticality_guard = 1e-6;

namespace detail {

template <class Real>
Real agm_tolerance() {
    using std::ldexp;
    return ldexp(Real(1), -(precision_bits<Real>() - 4));
}

/// AGM sequence starting from (1, k'), with c_0 = k. Stops when
/// |a_n - b_n| < 2^-(p-4) a_n.
template <class Real>
struct agm_sequence {
    std::vector<Real> a, b, c;

    agm_sequence(const Real& k, const Real& k_prime) {
        using std::abs;
        using std::sqrt;
        a.push_back(Real(1));
        b.push_back(k_prime);
        c.push_back(k);
        const Real tol = agm_tolerance<Real>();
        for (int it = 0; it < 200; ++it) {
            const Real& an = a.back();
            const Real& bn = b.back();
            if (abs(an - bn) < tol * an) break;
            Real a1 = (an + bn) / 2;
            Real b1 = sqrt(an * bn);
            Real c1 = (an - bn) / 2;
            a.push_back(a1);
            b.push_back(b1);
            c.push_back(c1);
        }
    }

    const Real& mean() const { return a.back(); }
};

template <class Real>
Real complementary(const Real& k) {
    using std::sqrt;
    return sqrt((1 - k) * (1 + k));
}

template <class Real>
void check_modulus(const Real& k, const char* op) {
    if (!(k >= 0) || !(k < 1)) {
        std::ostringstream os;
        os << op << ": modulus must lie in [0,1), got " << to_double(k);
        throw domain_error(os.str());
    }
}

} // namespace detail

/// K(k) = \int_0^{pi/2} d\theta / sqrt(1 - k^2 sin^2\theta), with k the modulus.
template <class Real>
Real complete_elliptic_K(const Real& k) {
    detail::check_modulus(k, "complete_elliptic_K");
    const Real pi = boost::math::constants::pi<Real>();
    detail::agm_sequence<Real> s(k, detail::complementary(k));
    return pi / (2 * s.mean());
}

inline double complete_elliptic_K(double k) { return complete_elliptic_K<double>(k); }

/// E(k) = \int_0^{pi/2} sqrt(1 - k^2 sin^2\theta) d\theta.
template <class Real>
Real complete_elliptic_E(const Real& k) {
    using std::ldexp;
    detail::check_modulus(k, "complete_elliptic_E");
    const Real pi = boost::math::constants::pi<Real>();
    detail::agm_sequence<Real> s(k, detail::complementary(k));
    Real sum = ldexp(s.c[0] * s.c[0], -1);
    for (std::size_t n = 1; n < s.c.size(); ++n)
        sum += ldexp(s.c[n] * s.c[n], static_cast<int>(n) - 1);
    return pi / (2 * s.mean()) * (1 - sum);
}

inline double complete_elliptic_E(double k) { return complete_elliptic_E<double>(k); }

/// Modulus k in (0,1) together with k', K(k) and K(k').
template <class Real = double>
struct BasicModulus {
    Real k;
    Real k_prime;
    Real big_K;
    Real big_K_prime;

    explicit BasicModulus(const Real& modulus) : k(modulus) {
        if (!(modulus > 0) || !(modulus < 1)) {
            std::ostringstream os;
            os << "Modulus: k must lie in (0,1), got " << to_double(modulus);
            throw domain_error(os.str());
        }
        k_prime = detail::complementary(k);
        big_K = complete_elliptic_K(k);
        big_K_prime = complete_elliptic_K(k_prime);
    }
};

using Modulus = BasicModulus<double>;

/// (sn, cn, dn) at one argument; sc and cs are derived.
template <class Real>
struct JacobiTriple {
    Real sn;
    Real cn;
    Real dn;
    Real u;

    Real sc() const {
        using std::abs;
        if (abs(cn) <= 8 * std::numeric_limits<Real>::epsilon()) {
            std::ostringstream os;
            os << "sc has a pole at u = " << to_double(u);
            throw pole_error(os.str(), to_double(u));
        }
        return sn / cn;
    }

    Real cs() const {
        using std::abs;
        if (abs(sn) <= 8 * std::numeric_limits<Real>::epsilon()) {
            std::ostringstream os;
            os << "cs has a pole at u = " << to_double(u);
            throw pole_error(os.str(), to_double(u));
        }
        return cn / sn;
    }
};

/// Jacobi elliptic functions by descending Landen transformation.
template <class Real>
JacobiTriple<Real> jacobi_elliptic(const Real& u, const Real& k) {
    using std::asin;
    using std::cos;
    using std::ldexp;
    using std::sin;
    using std::sqrt;
    detail::check_modulus(k, "jacobi_elliptic");
    if (k == 0) return {sin(u), cos(u), Real(1), u};

    detail::agm_sequence<Real> s(k, detail::complementary(k));
    const int n_steps = static_cast<int>(s.a.size()) - 1;
    Real phi = ldexp(s.a.back() * u, n_steps);
    for (int n = n_steps; n >= 1; --n) phi = (phi + asin(s.c[n] / s.a[n] * sin(phi))) / 2;
    Real sn = sin(phi);
    Real cn = cos(phi);
    // dn > 0 for real u and k < 1; the square root is more accurate than
    // the Landen ratio cn / cos(phi_1 - phi_0).
    Real dn = sqrt(1 - k * k * sn * sn);
    return {sn, cn, dn, u};
}

inline JacobiTriple<double> jacobi_elliptic(double u, double k) {
    return jacobi_elliptic<double>(u, k);
}

} // namespace quadcorr
