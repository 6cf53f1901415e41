#pragma once

// Rapidity parameterization of the Z-invariant Ising couplings and the
// Kramers-Wannier dual coupling.

#include "elliptic.hpp"
#include "error.hpp"

#include <cmath>
#include <sstream>

namespace quadcorr {

/// Dimensionless couplings: horizontal K = beta J, vertical K_bar = beta J_bar.
struct CouplingPair {
    double K;
    double K_bar;
};

/// An oriented rapidity line. A reversed line carries effective rapidity
/// u + K(k'); the stored u is never shifted.
struct RapidityLine {
    int id = 0;
    double u = 0.0;
    bool reversed = false;

    double effective(const Modulus& mod) const { return reversed ? u + mod.big_K_prime : u; }
};

/// sinh 2K = k sc(u1 - u2, k'), sinh 2K_bar = cs(u1 - u2, k').
///
/// Restricted to the ferromagnetic strip 0 < u1 - u2 < K(k').
inline CouplingPair coupling_pair(double u1, double u2, const Modulus& mod) {
    const double v = u1 - u2;
    if (!(v > 0)) {
        std::ostringstream os;
        os << "coupling_pair: rapidity difference " << v << " violates lower bound 0 < u1 - u2";
        throw domain_error(os.str());
    }
    if (!(v < mod.big_K_prime)) {
        std::ostringstream os;
        os << "coupling_pair: rapidity difference " << v << " violates upper bound u1 - u2 < K(k') = "
           << mod.big_K_prime;
        throw domain_error(os.str());
    }
    const auto t = jacobi_elliptic(v, mod.k_prime);
    return {0.5 * std::asinh(mod.k * t.sc()), 0.5 * std::asinh(t.cs())};
}

/// Coupling mediated by two rapidity lines.
///
/// When exactly one line is reversed the coupling changes orientation with
/// respect to the pair, so the roles of the two lines are exchanged; the
/// difference is then reduced modulo the period 2K(k') of sc(., k').
inline CouplingPair coupling_between(const RapidityLine& first, const RapidityLine& second,
                                     const Modulus& mod) {
    double v = first.effective(mod) - second.effective(mod);
    if (first.reversed != second.reversed) v = -v;
    const double period = 2.0 * mod.big_K_prime;
    v = std::fmod(v, period);
    if (v <= -mod.big_K_prime) v += period;
    if (v > mod.big_K_prime) v -= period;
    return coupling_pair(v, 0.0, mod);
}

inline RapidityLine orientation_flip(const RapidityLine& line, const Modulus& /*mod*/) {
    RapidityLine out = line;
    out.reversed = !line.reversed;
    return out;
}

/// K* with sinh 2K sinh 2K* = 1.
inline double kw_dual(double K) {
    if (!(K > 0)) {
        std::ostringstream os;
        os << "kw_dual: coupling must be positive, got " << K;
        throw domain_error(os.str());
    }
    return 0.5 * std::asinh(1.0 / std::sinh(2.0 * K));
}

} // namespace quadcorr
