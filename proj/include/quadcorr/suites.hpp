#pragma once

// Self-checks behind `quadcorr verify <suite>`. Rows comparing against the
// transfer-matrix oracle use the caller's tolerance; exact algebraic
// identities keep their fixed tight tolerances.

#include "chi.hpp"
#include "corr_engine.hpp"
#include "couplings.hpp"
#include "elliptic.hpp"
#include "frustrated.hpp"
#include "oracle/verify.hpp"
#include "quasiperiodic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace quadcorr::suites {

using oracle::VerificationReport;

inline constexpr std::uint64_t default_seed = 20240611;

namespace detail {

inline std::string loc(double a, double b) {
    std::ostringstream os;
    os.precision(6);
    os << '(' << a << ',' << b << ')';
    return os.str();
}

inline std::string loc(double a, double b, double c) {
    std::ostringstream os;
    os.precision(6);
    os << '(' << a << ',' << b << ',' << c << ')';
    return os.str();
}

} // namespace detail

/// K(k) by adaptive Gauss-Kronrod quadrature of the defining integral.
inline double elliptic_K_quadrature(double k) {
    auto f = [k](double t) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, std::numbers::pi / 2, 15, 1e-15);
}

inline VerificationReport elliptic(std::uint64_t seed = default_seed) {
    VerificationReport rep;
    rep.target = "elliptic";
    rep.record("K(0)", 1e-15, complete_elliptic_K(0.0) - std::numbers::pi / 2, "k=0");
    for (int i = 0; i < 20; ++i) {
        const double k = 0.05 * i + 0.01 * (i % 3);
        if (k >= 1) continue;
        const double K = complete_elliptic_K(k);
        rep.record("K-quadrature", 1e-12, (K - elliptic_K_quadrature(k)) / K, detail::loc(k, 0));
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ud(-20.0, 20.0), kd(0.0, 0.999);
    for (int i = 0; i < 1000; ++i) {
        const double u = ud(rng), k = kd(rng);
        const auto t = jacobi_elliptic(u, k);
        rep.record("sn^2+cn^2", 1e-12, t.sn * t.sn + t.cn * t.cn - 1, detail::loc(u, k));
        rep.record("dn^2+k^2sn^2", 1e-12, t.dn * t.dn + k * k * t.sn * t.sn - 1, detail::loc(u, k));
        const double K = complete_elliptic_K(k);
        rep.record("sn-period-4K", 1e-10, jacobi_elliptic(u + 4 * K, k).sn - t.sn, detail::loc(u, k));
        if (std::abs(t.cn) > 1e-3 && std::abs(t.sn) > 1e-3)
            rep.record("sc*cs", 1e-12, t.sc() * t.cs() - 1, detail::loc(u, k));
    }
    for (double k : {0.0, 0.3, 0.7, 0.99}) rep.record("sn(K)=1", 1e-12, jacobi_elliptic(complete_elliptic_K(k), k).sn - 1, detail::loc(k, 0));
    for (double k : {0.1, 0.5, 0.9}) {
        const Modulus mod(k);
        const auto t = jacobi_elliptic(mod.big_K_prime / 2, mod.k_prime);
        rep.record("sc(K'/2,k')", 1e-12, t.sc() * std::sqrt(k) - 1, detail::loc(k, 0));
    }
    return rep;
}

inline VerificationReport couplings(std::uint64_t seed = default_seed) {
    VerificationReport rep;
    rep.target = "couplings";
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> kd(0.01, 0.99), fd(0.01, 0.99), ud(-5.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const Modulus mod(kd(rng));
        const double u2 = ud(rng);
        const double u1 = u2 + fd(rng) * mod.big_K_prime;
        const auto p = coupling_pair(u1, u2, mod);
        rep.record("product-rule", 1e-12, std::sinh(2 * p.K) * std::sinh(2 * p.K_bar) - mod.k, detail::loc(u1 - u2, mod.k));

        const RapidityLine a{0, u1, false}, b{1, u2, false};
        const auto direct = coupling_between(a, b, mod);
        const auto flipped = coupling_between(a, orientation_flip(b, mod), mod);
        const double scale = std::max(1.0, std::max(direct.K, direct.K_bar));
        rep.record("flip-swaps", 1e-12,
                   std::max(std::abs(flipped.K - direct.K_bar), std::abs(flipped.K_bar - direct.K)) / scale,
                   detail::loc(u1 - u2, mod.k));
        rep.record("flip-involution", 0.0, orientation_flip(orientation_flip(b, mod), mod).effective(mod) - b.effective(mod),
                   detail::loc(u1 - u2, mod.k));

        const double K = p.K;
        rep.record("kw-involution", 1e-14, (kw_dual(kw_dual(K)) - K) / std::max(1.0, K), detail::loc(K, 0));
    }
    for (double k : {0.1, 0.5, 0.9}) {
        const Modulus mod(k);
        const auto p = coupling_pair(mod.big_K_prime / 2, 0, mod);
        rep.record("isotropic-point", 1e-12, std::max(std::abs(std::sinh(2 * p.K) - std::sqrt(k)),
                                                      std::abs(std::sinh(2 * p.K_bar) - std::sqrt(k))),
                   detail::loc(k, 0));
    }
    return rep;
}

/// Seeds, tables and identities of the uniform model at modulus k.
inline VerificationReport recurrence(double tol, double k = 0.5) {
    VerificationReport rep;
    rep.target = "recurrence";
    const auto seeds = make_seeds<double>(k, 8);
    rep.record("seed-relation", 1e-12, identity::seed(seeds.c10, seeds.cbar01, k), detail::loc(k, 0));

    const oracle::UniformOracle nn(k, {8, 10, 12, 14});
    try {
        rep.record("onsager-vs-oracle", tol, onsager_nn(k) - nn.C(1, 0).limit, detail::loc(k, 0));
    } catch (const error& e) {
        rep.failures.push_back(std::string("onsager-vs-oracle: ") + e.what());
    }
    rep.record("onsager-near-critical", 2e-3, onsager_nn(0.999) - std::sqrt(0.5), "k=0.999");

    const auto t6 = build_table(k, 6);
    rep.merge(oracle::verify_identities(oracle::UniformTarget{k}, 5, {tol, tol}, &t6));

    const auto t40 = build_table(k, 40, 256);
    rep.record("table-residual-256bit", 1e-20, t40.residual_report().worst(), "R=40");
    const auto t12 = build_table(k, 12, 53);
    rep.record("table-residual-double", 1e-12, t12.residual_report().worst(), "R=12");
    rep.record("dual-magnetization-tail", 1e-3, t40.Cbar(30, 30) - std::pow(1 - k * k, 0.25), "(30,30)");
    return rep;
}

inline VerificationReport frustrated(double tol, std::uint64_t seed = default_seed) {
    VerificationReport rep;
    rep.target = "frustrated";
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> sd(0.01, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const double S = sd(rng);
        const auto w = eight_vertex_weights(S);
        rep.record("free-fermion", 1e-12, (w.a * w.a + w.b * w.b - w.c * w.c - w.d * w.d) / (w.a * w.a),
                   detail::loc(S, 0));
    }

    const FrustratedModel b{1.0, LatticeVersion::columnar}, a{1.0, LatticeVersion::checkerboard};
    const auto table = build_table(dual_pair(1.0).k, 8);
    std::uniform_int_distribution<int> half(-4, 4), sep(-8, 8);
    std::uniform_real_distribution<double> qd(-std::numbers::pi, std::numbers::pi);
    for (int i = 0; i < 1000; ++i) {
        const int m = half(rng), n = half(rng);
        for (const auto* model : {&a, &b}) {
            rep.record("odd-odd-zero", 0.0, ff_correlation(*model, table, 2 * m - 1, 2 * n - 1, 0),
                       detail::loc(2 * m - 1, 2 * n - 1));
            const double avg =
                ff_correlation(*model, table, 2 * m, 2 * n - 1, 0) + ff_correlation(*model, table, 2 * m, 2 * n - 1, 1);
            const double q = qd(rng);
            rep.record("even-odd-parity-average", 0.0, avg * std::cos(q * (2 * m)), detail::loc(2 * m, 2 * n - 1, q));
        }
        const int dx = sep(rng), dy = sep(rng), l = sep(rng);
        rep.record("gauge-a-b", 0.0,
                   ff_correlation(a, table, dx, dy, ((l % 2) + 2) % 2) -
                       row_gauge(l, dy) * ff_correlation(b, table, dx, dy, 0),
                   detail::loc(dx, dy, l));
    }
    for (auto v : {LatticeVersion::columnar, LatticeVersion::checkerboard}) {
        auto r = oracle::verify_identities(oracle::FrustratedTarget{1.0, v}, 3, {tol, tol});
        for (auto& row : r.rows) row.identity = std::string(to_string(v)) + ":" + row.identity;
        rep.merge(r);
    }
    return rep;
}

inline VerificationReport chi(std::uint64_t seed = default_seed) {
    VerificationReport rep;
    rep.target = "chi";
    const auto table = build_table(0.5, 30);
    const auto g = chi_grid(UniformSource{&table}, 64, 64, 30);
    rep.record("sum-rule", 1e-3, g.mean() - table.C(0, 0), "64x64,R=30");
    double lo = INFINITY;
    for (double v : g.values) lo = std::min(lo, v);
    rep.record("non-negative", g.tail_bound + 1e-10, std::min(0.0, lo), "grid");
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            rep.record("evenness", 1e-12, g.at(i, j) - g.at((g.nx - i) % g.nx, (g.ny - j) % g.ny), detail::loc(g.qx(i), g.qy(j)));

    std::vector<double> alt(31);
    for (int d = 0; d <= 30; ++d) alt[d] = (d % 2 == 0) ? 1.0 : -1.0;
    const FrustratedModel fa{1.0, LatticeVersion::checkerboard}, fb{1.0, LatticeVersion::columnar};
    const auto ftable = build_table(dual_pair(1.0).k, 8);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> qd(-std::numbers::pi, std::numbers::pi);
    for (int i = 0; i < 200; ++i) {
        const Wavevector q{qd(rng), qd(rng)};
        const double c = chi_uniform(table, q, 30);
        rep.record("periodicity", 1e-12, chi_uniform(table, {q.qx + 2 * std::numbers::pi, q.qy - 2 * std::numbers::pi}, 30) - c,
                   detail::loc(q.qx, q.qy));
        rep.record("gauge-shift", 1e-12, chi_column_gauge(table, alt, q, 30) - chi_uniform(table, {q.qx, q.qy + std::numbers::pi}, 30),
                   detail::loc(q.qx, q.qy));
        rep.record("frustrated-a-b-shift", 1e-12,
                   chi_frustrated(fa, ftable, q, 14) - chi_frustrated(fb, ftable, {q.qx, q.qy + std::numbers::pi / 2}, 14),
                   detail::loc(q.qx, q.qy));
    }
    return rep;
}

inline const std::vector<std::string>& names() {
    static const std::vector<std::string> n{"elliptic", "couplings", "recurrence", "frustrated", "chi", "all"};
    return n;
}

/// Runs a named suite; `all` concatenates every suite.
inline VerificationReport run(const std::string& name, double tol) {
    if (name == "elliptic") return elliptic();
    if (name == "couplings") return couplings();
    if (name == "recurrence") return recurrence(tol);
    if (name == "frustrated") return frustrated(tol);
    if (name == "chi") return chi();
    if (name == "all") {
        VerificationReport rep;
        rep.target = "all";
        for (const auto& n : names())
            if (n != "all") {
                auto r = run(n, tol);
                for (auto& row : r.rows) row.identity = n + ":" + row.identity;
                rep.merge(r);
            }
        return rep;
    }
    throw configuration_error("unknown verification suite '" + name + "'");
}

} // namespace quadcorr::suites
