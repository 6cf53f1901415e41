#pragma once

// Fully frustrated square-lattice Ising model at sinh(2J/kT) = S.
//
// Decimating every other spin of the checkerboard leaves a free-fermion
// eight-vertex model; flipping the sign of the diagonal pair products makes
// it a pair of decoupled Ising models at mutually dual temperatures. Pair
// correlations of the original spins are products of C and Cbar from a
// table at the resulting modulus.
//
// Coordinates: k is the column (horizontal bonds all ferromagnetic), l the
// row. Version (b), columnar: the vertical bonds of column k carry sign
// (-1)^k. Version (a), checkerboard: the vertical bond leaving (k,l) upward is
// antiferromagnetic iff k + l is even. The two are related by flipping whole
// rows, see row_gauge.

#include "corr_engine.hpp"
#include "error.hpp"
#include "io.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

namespace quadcorr {

enum class LatticeVersion { checkerboard, columnar };

inline const char* to_string(LatticeVersion v) { return v == LatticeVersion::checkerboard ? "a" : "b"; }

struct FrustratedModel {
    double S;
    LatticeVersion version = LatticeVersion::columnar;
};

struct EightVertexWeights {
    double a, b, c, d;
    double k_hat, k_hat_prime, k_hat4;
};

struct PartialDualCouplings {
    double k_tilde, k_tilde_prime, k_tilde4;
};

struct DualPair {
    double k_sigma;
    double k_tau;
    double k; // sqrt(k) = sinh 2 K_sigma
};

enum class SeparationClass { even_even, odd_odd, odd_even, even_odd };

inline const char* to_string(SeparationClass c) {
    switch (c) {
    case SeparationClass::even_even: return "even-even";
    case SeparationClass::odd_odd: return "odd-odd";
    case SeparationClass::odd_even: return "odd-even";
    case SeparationClass::even_odd: return "even-odd";
    }
    return "?";
}

inline SeparationClass separation_class(int dx, int dy) {
    const bool ox = (dx % 2) != 0, oy = (dy % 2) != 0;
    if (ox) return oy ? SeparationClass::odd_odd : SeparationClass::odd_even;
    return oy ? SeparationClass::even_odd : SeparationClass::even_even;
}

namespace detail {
inline void check_S(double S, const char* op) {
    if (!(S > 0) || !std::isfinite(S)) {
        std::ostringstream os;
        os << op << ": S must be positive and finite, got " << S;
        throw domain_error(os.str());
    }
}

inline int floor_div2(int x) { return (x >= 0 ? x : x - 1) / 2; }
} // namespace detail

inline EightVertexWeights eight_vertex_weights(double S) {
    detail::check_S(S, "eight_vertex_weights");
    const double s2 = S * S;
    const double r = std::sqrt(2 * s2 + 1);
    EightVertexWeights w;
    w.a = w.b = std::sqrt(s2 + 1);
    w.c = 1;
    w.d = r;
    w.k_hat = -0.25 * std::log(r);
    w.k_hat_prime = 0.25 * std::log(r);
    w.k_hat4 = 0.25 * std::log((s2 + 1) / r);
    return w;
}

/// Thermal average of a decimated spin given its four neighbours; s4 sits
/// across the antiferromagnetic bond.
inline double decimated_spin(double S, int s1, int s2, int s3, int s4) {
    detail::check_S(S, "decimated_spin");
    for (int s : {s1, s2, s3, s4})
        if (s != 1 && s != -1) {
            std::ostringstream os;
            os << "decimated_spin: spins must be +1 or -1, got " << s;
            throw domain_error(os.str());
        }
    const double s2q = S * S;
    return S * (s1 + s3 + s2 - s4) / (2 * std::sqrt(s2q + 1)) *
           (1 - s2q * (1 - s1 * s3 * s2 * s4) / (2 * (2 * s2q + 1)));
}

inline PartialDualCouplings partial_dual(double S) {
    detail::check_S(S, "partial_dual");
    const double s2 = S * S;
    const double r = std::sqrt(2 * s2 + 1);
    return {0.25 * std::log(r), 0.25 * std::log(r), 0.25 * std::log(r / (s2 + 1))};
}

inline DualPair dual_pair(double S) {
    detail::check_S(S, "dual_pair");
    const double s2 = S * S;
    const double sk = s2 / (s2 + 1 + std::sqrt(2 * s2 + 1));
    return {0.5 * std::asinh(sk), 0.5 * std::asinh(1 / sk), sk * sk};
}

/// Sign relating the two versions: flipping rows l with
/// (-1)^floor((l+1)/2) = -1 maps version (b) onto version (a), so
/// <s(k,l) s(k',l+dy)>_a = row_gauge(l, dy) <...>_b.
inline int row_gauge(int l, int dy) {
    auto eps = [](int row) { return (detail::floor_div2(row + 1) % 2 == 0) ? 1 : -1; };
    return eps(l) * eps(l + dy);
}

/// <s(k,l) s(k+dx,l+dy)>.
///
/// base_parity is the parity of k + l for version (a) and of the column k
/// for version (b); only the even-odd class depends on it.
inline double ff_correlation(const FrustratedModel& model, const CorrelationTable& table, int dx, int dy,
                             int base_parity) {
    const DualPair dp = dual_pair(model.S);
    if (std::abs(table.k() - dp.k) > 1e-12 * dp.k) {
        std::ostringstream os;
        os << "ff_correlation: table modulus " << table.k() << " does not match k = " << dp.k << " at S = "
           << model.S;
        throw configuration_error(os.str());
    }
    const int R = table.radius();
    if (std::abs(dx) > 2 * R || std::abs(dy) > 2 * R) {
        std::ostringstream os;
        os << "ff_correlation: separation (" << dx << "," << dy << ") beyond twice the table radius " << R;
        throw range_error(os.str());
    }
    const bool a_version = model.version == LatticeVersion::checkerboard;
    const double amp = model.S / (2 * std::sqrt(2 * model.S * model.S + 1));
    auto C = [&](int m, int n) { return table.C(m, n); };
    auto Cb = [&](int m, int n) { return table.Cbar(m, n); };
    auto alt = [&](int n) { return (a_version && (n % 2 != 0)) ? -1.0 : 1.0; };

    switch (separation_class(dx, dy)) {
    case SeparationClass::even_even: {
        const int m = dx / 2, n = dy / 2;
        return alt(n) * C(m, n) * Cb(m, n);
    }
    case SeparationClass::odd_odd: return 0.0;
    case SeparationClass::odd_even: {
        const int m = detail::floor_div2(dx + 1), n = dy / 2;
        return alt(n) * amp * (C(m - 1, n) * Cb(m, n) + C(m, n) * Cb(m - 1, n));
    }
    case SeparationClass::even_odd: {
        const int m = dx / 2, n = detail::floor_div2(dy + 1);
        const double sign = (base_parity % 2 == 0) ? 1.0 : -1.0;
        return sign * alt(n) * amp * (C(m, n - 1) * Cb(m, n) + C(m, n) * Cb(m, n - 1));
    }
    }
    return 0.0;
}

/// `dx,dy,value,class` for |dx|, |dy| <= extent, dy outer, at base parity 0.
inline void write_ff_csv(std::ostream& os, const FrustratedModel& model, const CorrelationTable& table,
                         int extent) {
    os << "dx,dy,value,class\n";
    for (int dy = -extent; dy <= extent; ++dy)
        for (int dx = -extent; dx <= extent; ++dx)
            os << dx << ',' << dy << ',' << io::format_real(ff_correlation(model, table, dx, dy, 0)) << ','
               << to_string(separation_class(dx, dy)) << '\n';
}

} // namespace quadcorr
