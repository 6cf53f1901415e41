#pragma once

// Pair-correlation tables of the isotropic square-lattice Ising model.
//
// C(m,n) is the correlation of the disordered model, sinh 2K = sqrt(k);
// Cbar(m,n) that of its Kramers-Wannier dual, sinh 2K* = 1/sqrt(k).
// Diagonals come from Toeplitz determinants, C(1,0) from the closed
// nearest-neighbour form, the first off-diagonal from a march along the
// diagonal, and everything else from sweeps of the quadratic recurrences.

#include "elliptic.hpp"
#include "error.hpp"
#include "identities.hpp"
#include "io.hpp"
#include "precision.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace quadcorr {

enum class Which { C, Cbar };

inline const char* to_string(Which w) { return w == Which::C ? "C" : "Cbar"; }

/// Default arithmetic precision of build_table.
inline constexpr int default_precision_bits = 256;

/// Minimum significant bits an entry may retain, measured against a shadow
/// sweep carried at higher precision, before the build gives up.
inline constexpr double min_significant_bits = 8.0;

/// Toeplitz index convention, fixed against the transfer-matrix oracle:
///   Cbar(N,N) = det[a_{i-j}],  C(N,N) = (-1)^N det[a_{i-j+shift}],
/// with a_n = b_n - k b_{n-1} and b_n the Fourier coefficients of
/// [(1 - k e^{it})(1 - k e^{-it})]^{-1/2}.
inline constexpr int toeplitz_disordered_shift = 1;

/// Worst residuals of the two relations the sweep does not use.
struct ResidualReport {
    double plaquette = 0;
    int plaquette_m = 0, plaquette_n = 0;
    double cross = 0;
    int cross_m = 0, cross_n = 0;

    double worst() const { return std::max(plaquette, cross); }
};

template <class Real>
struct DiagonalSeeds {
    std::vector<Real> c;    // C(n,n), n = 0..n_max
    std::vector<Real> cbar; // Cbar(n,n)
};

template <class Real>
struct NextDiagonalSeeds {
    std::vector<Real> c;      // C(m,m+1), m = 0..n_max-1
    std::vector<Real> cbar;   // Cbar(m,m+1)
};

template <class Real>
struct SeedSet {
    Real c10;
    Real cbar01;
    DiagonalSeeds<Real> diag;
    NextDiagonalSeeds<Real> next_diag;
};

namespace detail {

inline void check_open_unit(double k, const char* op) {
    if (!(k > 0) || !(k < 1)) {
        std::ostringstream os;
        os << op << ": modulus k must lie in (0,1), got " << k;
        throw domain_error(os.str());
    }
}

/// Extra bits for the unstable forward recurrence of the symbol coefficients
/// and for the cancellation in the small disordered determinants.
inline int toeplitz_guard_bits(double k, int n_max) {
    const double per_step = std::log2(1.0 / k);
    return 64 + static_cast<int>(std::ceil((n_max + 3) * (3.0 * per_step + 2.0)));
}

/// Copy of `x` at the current MPFR default precision. Copies and assignments
/// of MPFR numbers otherwise keep the precision the value was created with.
template <class Real>
real_mp lift(const Real& x) {
    if constexpr (std::is_same_v<Real, real_mp>)
        return real_mp(x, real_mp::default_precision());
    else
        return real_mp(x);
}

/// Rounds an MPFR value to the current precision of `Real`.
template <class Real>
Real round_to(const real_mp& x) {
    if constexpr (std::is_same_v<Real, real_mp>)
        return real_mp(x, real_mp::default_precision());
    else
        return static_cast<Real>(x);
}

/// Leading principal minors D_1..D_N of an N x N matrix, by elimination
/// without pivoting (D_j is the product of the first j pivots).
inline std::vector<real_mp> leading_minors(std::vector<std::vector<real_mp>> a) {
    const std::size_t n = a.size();
    std::vector<real_mp> minors;
    real_mp det = 1;
    for (std::size_t j = 0; j < n; ++j) {
        const real_mp pivot = a[j][j];
        det *= pivot;
        minors.push_back(det);
        if (pivot == 0) {
            minors.resize(n, real_mp(0));
            break;
        }
        for (std::size_t i = j + 1; i < n; ++i) {
            const real_mp f = a[i][j] / pivot;
            for (std::size_t c = j; c < n; ++c) a[i][c] -= f * a[j][c];
        }
    }
    return minors;
}

/// Symbol coefficients b_0..b_{n_max+1} at the current MPFR precision.
inline std::vector<real_mp> symbol_coefficients(const real_mp& k, int count) {
    const real_mp pi = boost::math::constants::pi<real_mp>();
    const real_mp bigK = complete_elliptic_K(k);
    const real_mp bigE = complete_elliptic_E(k);
    std::vector<real_mp> b(static_cast<std::size_t>(std::max(count, 2)));
    b[0] = 2 * bigK / pi;
    b[1] = 2 * (bigK - bigE) / (pi * k);
    const real_mp kk = 1 + k * k;
    for (int n = 1; n + 1 < count; ++n) {
        const real_mp h = real_mp(n) - real_mp(0.5);
        b[n + 1] = (kk * n * b[n] - k * h * b[n - 1]) / (k * (real_mp(n) + real_mp(0.5)));
    }
    b.resize(static_cast<std::size_t>(count));
    return b;
}

} // namespace detail

/// C(1,0) = 1/2 sqrt((1+k)/k) [1 + (2/pi) (k-1)/(k+1) K(2 sqrt(k)/(1+k))],
/// evaluated through the Landen form K(2 sqrt(k)/(1+k)) = (1+k) K(k).
template <class Real>
Real onsager_nn(const Real& k) {
    using std::sqrt;
    detail::check_open_unit(to_double(k), "onsager_nn");
    const Real pi = boost::math::constants::pi<Real>();
    return sqrt((1 + k) / k) / 2 * (1 + 2 / pi * (k - 1) * complete_elliptic_K(k));
}

/// Double-precision C(1,0); evaluated with guard bits because the bracket
/// cancels to O(k) as k -> 0.
inline double onsager_nn(double k) {
    detail::check_open_unit(k, "onsager_nn");
    scoped_precision guard(53 + 64 + static_cast<int>(std::ceil(std::log2(1.0 / k))));
    return static_cast<double>(onsager_nn<real_mp>(real_mp(k)));
}

inline double onsager_nn(const Modulus& mod) { return onsager_nn(mod.k); }

/// Spontaneous magnetization of the dual (ordered) model, (1-k^2)^{1/8}.
inline double dual_magnetization(double k) {
    detail::check_open_unit(k, "dual_magnetization");
    return std::pow((1 - k) * (1 + k), 0.125);
}

inline double dual_magnetization(const Modulus& mod) { return dual_magnetization(mod.k); }

/// C(n,n) and Cbar(n,n) for n = 0..n_max from Toeplitz determinants.
///
/// Evaluated in MPFR with guard bits and rounded to the precision of Real.
template <class Real>
DiagonalSeeds<Real> diagonal_seeds(const Real& k, int n_max) {
    const double kd = to_double(k);
    detail::check_open_unit(kd, "diagonal_seeds");
    if (n_max < 1) throw domain_error("diagonal_seeds: n_max must be >= 1");

    const int target = std::max(precision_bits<Real>(), 53);
    std::vector<real_mp> c_mp, cbar_mp;
    {
        scoped_precision guard(static_cast<unsigned>(target + detail::toeplitz_guard_bits(kd, n_max)));
        const real_mp km = detail::lift(k);
        const auto b = detail::symbol_coefficients(km, n_max + 3);
        auto a = [&](int n) -> real_mp {
            const auto bb = [&](int i) -> const real_mp& { return b[static_cast<std::size_t>(std::abs(i))]; };
            return bb(n) - km * bb(n - 1);
        };
        const auto N = static_cast<std::size_t>(n_max);
        std::vector<std::vector<real_mp>> ordered(N, std::vector<real_mp>(N));
        std::vector<std::vector<real_mp>> disordered(N, std::vector<real_mp>(N));
        for (int i = 0; i < n_max; ++i)
            for (int j = 0; j < n_max; ++j) {
                ordered[i][j] = a(i - j);
                disordered[i][j] = a(i - j + toeplitz_disordered_shift);
            }
        const auto d_ord = detail::leading_minors(std::move(ordered));
        const auto d_dis = detail::leading_minors(std::move(disordered));
        c_mp.push_back(real_mp(1));
        cbar_mp.push_back(real_mp(1));
        for (int n = 1; n <= n_max; ++n) {
            const real_mp cn = (n % 2 == 0 ? 1 : -1) * d_dis[n - 1];
            const real_mp cbn = d_ord[n - 1];
            if (!(cn > 0) || !(cbn > 0) || !(cn < c_mp.back()) || !(cbn < cbar_mp.back())) {
                std::ostringstream os;
                os << "diagonal_seeds: Toeplitz determinant lost positivity or monotonicity at n = " << n
                   << "; increase precision_bits";
                throw precision_error(os.str(), n, n);
            }
            c_mp.push_back(cn);
            cbar_mp.push_back(cbn);
        }
    }
    DiagonalSeeds<Real> out;
    for (const auto& x : c_mp) out.c.push_back(detail::round_to<Real>(x));
    for (const auto& x : cbar_mp) out.cbar.push_back(detail::round_to<Real>(x));
    return out;
}

/// C(m,m+1) and Cbar(m,m+1) for m = 0..n_max-1.
///
/// At each m the cross relation at (m,m) is linear in the two unknowns and
/// the plaquette relation at (m,m) quadratic; the root in (0,1) nearest the
/// previous C(m-1,m) is kept. The axial relation at (m,m), not used in the
/// solve, is checked afterwards.
template <class Real>
NextDiagonalSeeds<Real> next_diagonal_seeds(const Real& k, const DiagonalSeeds<Real>& diag, const Real& c10,
                                            const Real& cbar01, int n_max) {
    using std::abs;
    using std::sqrt;
    if (n_max < 1 || diag.c.size() < static_cast<std::size_t>(n_max) + 1 ||
        diag.cbar.size() < static_cast<std::size_t>(n_max) + 1)
        throw domain_error("next_diagonal_seeds: diagonal lists shorter than n_max + 1");

    const int bits = precision_bits<Real>();
    const double tol = std::pow(10.0, -bits / 4.0);
    const Real sk = sqrt(k);

    NextDiagonalSeeds<Real> out;
    out.c.push_back(c10);
    out.cbar.push_back(cbar01);
    for (int m = 1; m < n_max; ++m) {
        const Real& cp = out.c.back();
        const Real& cbp = out.cbar.back();
        const Real& cm = diag.c[m];
        const Real& cbm = diag.cbar[m];
        const Real& cm1 = diag.c[m + 1];
        const Real& cbm1 = diag.cbar[m + 1];

        // y = alpha - beta x from the linear relation.
        const Real alpha = (k + 1) * cm * cbm / (sk * cp);
        const Real beta = cbp / cp;
        const Real q_bar = cbm * cbm1;
        const Real q = cm * cm1;
        const Real a2 = k - beta * beta;
        const Real b2 = 2 * alpha * beta;
        const Real c2 = q_bar - alpha * alpha - k * q;
        const Real disc = b2 * b2 - 4 * a2 * c2;
        if (disc < 0) {
            std::ostringstream os;
            os << "next_diagonal_seeds: no real root at m = " << m << "; increase precision_bits";
            throw precision_error(os.str(), m, m + 1);
        }
        const Real sq = sqrt(disc);
        const Real qq = -(b2 + (b2 < 0 ? -sq : sq)) / 2;
        std::vector<Real> roots;
        if (a2 != 0) roots.push_back(qq / a2);
        if (qq != 0) roots.push_back(c2 / qq);

        std::optional<Real> best;
        for (const Real& x : roots) {
            const Real y = alpha - beta * x;
            if (!(x > 0 && x < 1 && y > 0 && y < 1)) continue;
            if (!best) {
                best = x;
                continue;
            }
            const Real dx = abs(x - cp), db = abs(*best - cp);
            if (dx < db || (dx == db && x > *best)) best = x;
        }
        if (!best) {
            std::ostringstream os;
            os << "next_diagonal_seeds: no admissible root in (0,1) at m = " << m << "; increase precision_bits";
            throw precision_error(os.str(), m, m + 1);
        }
        const Real x = *best;
        const Real y = alpha - beta * x;

        const Real axial = k * (x * cp - cm * cm) + (y * cbp - cbm * cbm);
        const Real scale = k * cm * cm + cbm * cbm;
        const double rel = to_double(abs(axial) / scale);
        if (rel > tol) {
            std::ostringstream os;
            os << "next_diagonal_seeds: axial relation violated at m = " << m << " (relative residual " << rel
               << ")";
            throw inconsistency_error(os.str(), m, rel);
        }

        out.c.push_back(x);
        out.cbar.push_back(y);
    }
    return out;
}

/// All seeds for a table of radius n_max, rounded to the precision of Real.
///
/// Computed in MPFR with guard bits: the diagonal march roughly doubles its
/// error at every step.
template <class Real>
SeedSet<Real> make_seeds(const Real& k, int n_max) {
    using std::sqrt;
    const double kd = to_double(k);
    detail::check_open_unit(kd, "make_seeds");
    const int target = std::max(precision_bits<Real>(), 53);
    std::optional<SeedSet<real_mp>> mp;
    {
        scoped_precision guard(static_cast<unsigned>(target + 64 + n_max + std::ceil(std::log2(1.0 / kd))));
        const real_mp km = detail::lift(k);
        real_mp c10 = onsager_nn<real_mp>(km);
        real_mp cbar01 = sqrt(1 + km) - sqrt(km) * c10;
        auto diag = diagonal_seeds(km, n_max);
        auto next = next_diagonal_seeds(km, diag, c10, cbar01, n_max);
        mp.emplace(SeedSet<real_mp>{std::move(c10), std::move(cbar01), std::move(diag), std::move(next)});
    }
    auto round_all = [](const std::vector<real_mp>& v) {
        std::vector<Real> r;
        for (const auto& x : v) r.push_back(detail::round_to<Real>(x));
        return r;
    };
    SeedSet<Real> out;
    out.c10 = detail::round_to<Real>(mp->c10);
    out.cbar01 = detail::round_to<Real>(mp->cbar01);
    out.diag = {round_all(mp->diag.c), round_all(mp->diag.cbar)};
    out.next_diag = {round_all(mp->next_diag.c), round_all(mp->next_diag.cbar)};
    return out;
}

/// Immutable octant table of C and Cbar.
class CorrelationTable {
public:
    CorrelationTable(double k, int radius, int precision_bits, std::vector<real_mp> c, std::vector<real_mp> cbar,
                     ResidualReport report)
        : k_(k), radius_(radius), bits_(precision_bits), c_exact_(std::move(c)), cbar_exact_(std::move(cbar)),
          report_(report) {
        c_.reserve(c_exact_.size());
        cbar_.reserve(cbar_exact_.size());
        for (const auto& x : c_exact_) c_.push_back(static_cast<double>(x));
        for (const auto& x : cbar_exact_) cbar_.push_back(static_cast<double>(x));
    }

    double k() const { return k_; }
    int radius() const { return radius_; }
    int precision_bits() const { return bits_; }
    const ResidualReport& residual_report() const { return report_; }

    /// Symmetry-reduced value; |m|, |n| <= radius.
    double lookup(int m, int n, Which w) const {
        const auto i = index(m, n);
        return w == Which::C ? c_[i] : cbar_[i];
    }
    double C(int m, int n) const { return lookup(m, n, Which::C); }
    double Cbar(int m, int n) const { return lookup(m, n, Which::Cbar); }

    /// Stored value at full build precision.
    const real_mp& exact(int m, int n, Which w) const {
        const auto i = index(m, n);
        return w == Which::C ? c_exact_[i] : cbar_exact_[i];
    }

    /// Copy with one entry replaced (sensitivity checks of verifiers).
    CorrelationTable with_entry(int m, int n, Which w, double value) const {
        CorrelationTable t = *this;
        const auto i = index(m, n);
        (w == Which::C ? t.c_ : t.cbar_)[i] = value;
        (w == Which::C ? t.c_exact_ : t.cbar_exact_)[i] = real_mp(value);
        return t;
    }

    /// `m,n,C,Cbar` over 0 <= m <= n <= radius, ordered by (n-m, m).
    void write_csv(std::ostream& os) const {
        os << "m,n,C,Cbar\n";
        for (int d = 0; d <= radius_; ++d)
            for (int m = 0; m + d <= radius_; ++m)
                os << m << ',' << m + d << ',' << io::format_real(C(m, m + d)) << ','
                   << io::format_real(Cbar(m, m + d)) << '\n';
    }

    static std::size_t octant_index(int m, int n) {
        if (m > n) std::swap(m, n);
        return static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1) / 2 + static_cast<std::size_t>(m);
    }

private:
    std::size_t index(int m, int n) const {
        m = std::abs(m);
        n = std::abs(n);
        if (m > radius_ || n > radius_) {
            std::ostringstream os;
            os << "lookup (" << m << "," << n << ") outside table radius " << radius_;
            throw range_error(os.str());
        }
        return octant_index(m, n);
    }

    double k_;
    int radius_;
    int bits_;
    std::vector<real_mp> c_exact_, cbar_exact_;
    std::vector<double> c_, cbar_;
    ResidualReport report_;
};

namespace detail {

/// Extra bits carried by the shadow sweep that measures the primary's error.
inline constexpr int shadow_extra_bits = 64;

template <class Real>
struct Octant {
    int radius;
    std::vector<Real> c, cbar;

    explicit Octant(int r) : radius(r), c(size(r)), cbar(size(r)) {}

    static std::size_t size(int r) { return CorrelationTable::octant_index(r, r) + 1; }
    static std::size_t at(int m, int n) { return CorrelationTable::octant_index(std::abs(m), std::abs(n)); }

    const Real& C(int m, int n) const { return c[at(m, n)]; }
    const Real& Cb(int m, int n) const { return cbar[at(m, n)]; }
};

/// Seeds plus sweeps over diagonals d = n - m >= 2, m ascending, each entry
/// from the axial relations centred at (m, n-1). No validation.
template <class Real>
Octant<Real> sweep(const Real& k, int R) {
    const auto seeds = make_seeds(k, R);
    Octant<Real> t(R);
    for (int n = 0; n <= R; ++n) {
        t.c[t.at(n, n)] = seeds.diag.c[n];
        t.cbar[t.at(n, n)] = seeds.diag.cbar[n];
    }
    for (int m = 0; m < R; ++m) {
        t.c[t.at(m, m + 1)] = seeds.next_diag.c[m];
        t.cbar[t.at(m, m + 1)] = seeds.next_diag.cbar[m];
    }
    for (int d = 2; d <= R; ++d)
        for (int m = 0; m + d <= R; ++m) {
            const int n = m + d, j = n - 1;
            t.c[t.at(m, n)] =
                (t.C(m, j) * t.C(m, j) - (t.Cb(m + 1, j) * t.Cb(m - 1, j) - t.Cb(m, j) * t.Cb(m, j)) / k) /
                t.C(m, j - 1);
            t.cbar[t.at(m, n)] =
                (t.Cb(m, j) * t.Cb(m, j) - k * (t.C(m + 1, j) * t.C(m - 1, j) - t.C(m, j) * t.C(m, j))) /
                t.Cb(m, j - 1);
        }
    return t;
}

/// Significant bits of `x` relative to the reference `ref`.
inline double agreeing_bits(const real_mp& x, const real_mp& ref) {
    using std::abs;
    if (ref == 0) return x == 0 ? std::numeric_limits<double>::infinity() : 0.0;
    const double rel = static_cast<double>(abs((x - ref) / ref));
    if (rel == 0) return std::numeric_limits<double>::infinity();
    return -std::log2(rel);
}

/// Walks the octant in sweep order and throws at the first entry that left
/// (0,1] or agrees with the shadow to fewer than min_significant_bits.
template <class Real>
void validate(const Octant<Real>& t, const Octant<real_mp>& shadow) {
    const int R = t.radius;
    auto check = [&](int m, int n) {
        for (Which w : {Which::C, Which::Cbar}) {
            const Real& v = w == Which::C ? t.C(m, n) : t.Cb(m, n);
            const real_mp& ref = w == Which::C ? shadow.C(m, n) : shadow.Cb(m, n);
            const double vd = to_double(v);
            std::ostringstream os;
            if (!(vd > 0) || !(vd <= 1)) {
                os << "build_table: " << to_string(w) << "(" << m << "," << n << ") = " << vd
                   << " left (0,1]; increase precision_bits";
                throw precision_error(os.str(), m, n);
            }
            const double bits = agreeing_bits(real_mp(v), ref);
            if (bits < min_significant_bits) {
                os << "build_table: " << to_string(w) << "(" << m << "," << n << ") retains ~"
                   << std::max(bits, 0.0) << " significant bits; increase precision_bits";
                throw precision_error(os.str(), m, n);
            }
        }
    };
    for (int d = 0; d <= R; ++d)
        for (int m = 0; m + d <= R; ++m) check(m, m + d);
}

template <class Real>
CorrelationTable build_octant(double k_in, int R, int bits_requested) {
    const Real k = Real(k_in);
    const Octant<Real> t = sweep(k, R);
    {
        const int shadow_bits = std::max(precision_bits<Real>(), 53) + shadow_extra_bits;
        scoped_precision guard(static_cast<unsigned>(shadow_bits));
        validate(t, sweep(real_mp(k_in), R));
    }

    ResidualReport rep;
    auto C = [&](int m, int n) -> const Real& { return t.C(m, n); };
    auto Cb = [&](int m, int n) -> const Real& { return t.Cb(m, n); };
    using std::abs;
    for (int n = 0; n + 1 <= R; ++n)
        for (int m = 0; m <= n; ++m) {
            const double p = to_double(abs(identity::plaquette<Real>(C, Cb, k, m, n)));
            if (p > rep.plaquette) {
                rep.plaquette = p;
                rep.plaquette_m = m;
                rep.plaquette_n = n;
            }
            if (m == 0 && n == 0) continue;
            const double x = to_double(abs(identity::cross<Real>(C, Cb, k, m, n)));
            if (x > rep.cross) {
                rep.cross = x;
                rep.cross_m = m;
                rep.cross_n = n;
            }
        }

    std::vector<real_mp> c_out, cbar_out;
    c_out.reserve(t.c.size());
    cbar_out.reserve(t.cbar.size());
    for (const auto& v : t.c) c_out.emplace_back(v);
    for (const auto& v : t.cbar) cbar_out.emplace_back(v);
    return CorrelationTable(k_in, R, bits_requested, std::move(c_out), std::move(cbar_out), rep);
}

inline CorrelationTable swap_roles(const CorrelationTable& t, double k) {
    std::vector<real_mp> c, cbar;
    for (int n = 0; n <= t.radius(); ++n)
        for (int m = 0; m <= n; ++m) {
            c.push_back(t.exact(m, n, Which::Cbar));
            cbar.push_back(t.exact(m, n, Which::C));
        }
    return CorrelationTable(k, t.radius(), t.precision_bits(), std::move(c), std::move(cbar), t.residual_report());
}

} // namespace detail

/// Builds C and Cbar on 0 <= m <= n <= R.
///
/// precision_bits <= 53 runs the sweep in double (seeds are still computed
/// in MPFR and rounded). A modulus k > 1 is served from the table at 1/k with
/// the roles of C and Cbar exchanged. Moduli within criticality_guard of 1
/// are refused.
inline CorrelationTable build_table(double k, int R, int precision_bits = default_precision_bits) {
    if (!(k > 0) || !std::isfinite(k)) {
        std::ostringstream os;
        os << "build_table: modulus k must be positive, got " << k;
        throw domain_error(os.str());
    }
    if (std::abs(k - 1) <= criticality_guard || (k > 1 && std::abs(1 / k - 1) <= criticality_guard)) {
        std::ostringstream os;
        os << "build_table: k = " << k << " is within " << criticality_guard << " of criticality";
        throw domain_error(os.str());
    }
    if (R < 2) throw domain_error("build_table: radius must be >= 2");
    if (precision_bits < 24) throw domain_error("build_table: precision_bits must be >= 24");

    if (k > 1) return detail::swap_roles(build_table(1 / k, R, precision_bits), k);

    if (precision_bits <= 53) return detail::build_octant<double>(k, R, 53);
    scoped_precision guard(static_cast<unsigned>(precision_bits));
    return detail::build_octant<real_mp>(k, R, precision_bits);
}

inline CorrelationTable build_table(const Modulus& mod, int R, int precision_bits = default_precision_bits) {
    return build_table(mod.k, R, precision_bits);
}

} // namespace quadcorr
