#pragma once

// Identity residuals and oracle agreement, reported per identity as the
// worst residual and where it occurred.

#include "../corr_engine.hpp"
#include "../frustrated.hpp"
#include "../identities.hpp"
#include "../io.hpp"
#include "correlations.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace quadcorr::oracle {

struct IdentityResult {
    std::string identity;
    std::string location;
    double residual = 0;
    double tolerance = 0;
    std::size_t checked = 0;

    bool pass() const { return checked > 0 && residual <= tolerance; }
};

struct VerificationReport {
    std::string target;
    std::vector<IdentityResult> rows;
    std::vector<std::string> failures; // oracle evaluations that could not be completed

    bool passed() const {
        if (!failures.empty() || rows.empty()) return false;
        for (const auto& r : rows)
            if (!r.pass()) return false;
        return true;
    }

    /// Starts a row, or returns the existing one of that name.
    IdentityResult& row(const std::string& identity, double tolerance) {
        for (auto& r : rows)
            if (r.identity == identity) return r;
        rows.push_back({identity, "-", 0.0, tolerance, 0});
        return rows.back();
    }

    void record(const std::string& identity, double tolerance, double residual, const std::string& location) {
        auto& r = row(identity, tolerance);
        ++r.checked;
        const double a = std::isnan(residual) ? INFINITY : std::abs(residual);
        if (r.checked == 1 || a > r.residual) {
            r.residual = a;
            r.location = location;
        }
    }

    void merge(const VerificationReport& other) {
        for (const auto& r : other.rows) rows.push_back(r);
        for (const auto& f : other.failures) failures.push_back(f);
    }

    void write_text(std::ostream& os) const {
        if (!target.empty()) os << "target " << target << '\n';
        for (const auto& r : rows)
            os << (r.pass() ? "PASS " : "FAIL ") << r.identity << " worst " << io::format_real(r.residual) << " at "
               << r.location << " (tolerance " << io::format_real(r.tolerance) << ", " << r.checked << " checks)\n";
        for (const auto& f : failures) os << "INCOMPLETE " << f << '\n';
        os << (passed() ? "verification passed" : "verification failed") << '\n';
    }

    void write_csv(std::ostream& os) const {
        os << "identity,location,residual,tolerance,pass\n";
        for (const auto& r : rows)
            os << r.identity << ",\"" << r.location << "\"," << io::format_real(r.residual) << ','
               << io::format_real(r.tolerance) << ',' << (r.pass() ? "true" : "false") << '\n';
        for (const auto& f : failures) os << "incomplete,\"" << f << "\",nan,nan,false\n";
    }
};

struct Tolerances {
    double identity = 1e-6; // relations evaluated on oracle or table values
    double match = 1e-6;    // table against oracle
};

struct UniformTarget {
    double k = 0.5;
};

struct FrustratedTarget {
    double S = 1.0;
    LatticeVersion version = LatticeVersion::columnar;
};

using Target = std::variant<UniformTarget, FrustratedTarget>;

namespace detail {

inline std::string at(int m, int n) {
    std::ostringstream os;
    os << '(' << m << ',' << n << ')';
    return os.str();
}

inline std::string at(int dx, int dy, int xp, int lp) {
    std::ostringstream os;
    os << '(' << dx << ',' << dy << ")@(" << xp << ',' << lp << ')';
    return os.str();
}

} // namespace detail

/// Uniform model at modulus k. Correlations come from `table` when given
/// (its radius must be at least radius + 1), otherwise from the oracle.
/// With a table, every entry up to radius + 1 is also matched against the
/// oracle.
inline VerificationReport verify_identities(const UniformTarget& target, int radius, const Tolerances& tol,
                                            const CorrelationTable* table = nullptr,
                                            const std::vector<int>& widths = default_widths()) {
    if (radius < 1) throw domain_error("verify_identities: radius must be at least 1");
    if (table) {
        if (table->radius() < radius + 1) throw configuration_error("verify_identities: table radius below radius + 1");
        if (std::abs(table->k() - target.k) > 1e-12 * target.k)
            throw configuration_error("verify_identities: table modulus does not match the target");
    }
    VerificationReport rep;
    {
        std::ostringstream os;
        os << "uniform k=" << target.k << " radius=" << radius << (table ? " source=table" : " source=oracle");
        rep.target = os.str();
    }
    const UniformOracle oracle(target.k, widths);
    const int N = radius + 1;
    std::map<std::pair<int, int>, double> oc, ocb;
    bool complete = true;
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= n; ++m) {
            try {
                oc[{m, n}] = oracle.C(m, n).limit;
            } catch (const error& e) {
                rep.failures.push_back("C" + detail::at(m, n) + ": " + e.what());
                complete = false;
            }
            try {
                ocb[{m, n}] = oracle.Cbar(m, n).limit;
            } catch (const error& e) {
                rep.failures.push_back("Cbar" + detail::at(m, n) + ": " + e.what());
                complete = false;
            }
        }

    auto key = [](int m, int n) {
        m = std::abs(m);
        n = std::abs(n);
        return m <= n ? std::make_pair(m, n) : std::make_pair(n, m);
    };
    auto C = [&](int m, int n) { return table ? table->C(m, n) : oc.at(key(m, n)); };
    auto Cb = [&](int m, int n) { return table ? table->Cbar(m, n) : ocb.at(key(m, n)); };

    if (table) {
        for (int n = 0; n <= N; ++n)
            for (int m = 0; m <= n; ++m) {
                if (auto it = oc.find({m, n}); it != oc.end())
                    rep.record("match-C", tol.match, table->C(m, n) - it->second, detail::at(m, n));
                if (auto it = ocb.find({m, n}); it != ocb.end())
                    rep.record("match-Cbar", tol.match, table->Cbar(m, n) - it->second, detail::at(m, n));
            }
    }
    if (!table && !complete) return rep;

    const double k = target.k;
    for (int n = 0; n <= radius; ++n)
        for (int m = 0; m <= n; ++m) {
            const auto loc = detail::at(m, n);
            rep.record(std::string(identity::plaquette_name), tol.identity, identity::plaquette(C, Cb, k, m, n), loc);
            if (m == 0 && n == 0) continue;
            rep.record(std::string(identity::axial_n_name), tol.identity, identity::axial_n(C, Cb, k, m, n), loc);
            rep.record(std::string(identity::axial_m_name), tol.identity, identity::axial_m(C, Cb, k, m, n), loc);
            rep.record(std::string(identity::cross_name), tol.identity, identity::cross(C, Cb, k, m, n), loc);
        }
    rep.record(std::string(identity::seed_name), tol.identity, identity::seed(C(1, 0), Cb(0, 1), k), "(1,0)");
    return rep;
}

/// Fully frustrated model: the assembled correlations against the oracle of
/// the mixed-sign lattice itself, grouped by separation class, for
/// |dx|, |dy| <= radius and every base-site parity. Version (a) also checks
/// the row gauge against the oracle of version (b).
inline VerificationReport verify_identities(const FrustratedTarget& target, int radius, const Tolerances& tol,
                                            const CorrelationTable* table = nullptr,
                                            const std::vector<int>& widths = {8, 10, 12}) {
    if (radius < 1) throw domain_error("verify_identities: radius must be at least 1");
    const FrustratedModel model{target.S, target.version};
    const DualPair dp = dual_pair(target.S);
    std::optional<CorrelationTable> own;
    if (!table) {
        own.emplace(build_table(dp.k, std::max(2, (radius + 1) / 2 + 1)));
        table = &*own;
    }
    VerificationReport rep;
    {
        std::ostringstream os;
        os << "frustrated S=" << target.S << " version=" << to_string(target.version) << " radius=" << radius;
        rep.target = os.str();
    }
    const bool a_version = target.version == LatticeVersion::checkerboard;
    const FrustratedOracle oracle(target.S, target.version, widths);
    std::optional<FrustratedOracle> columnar;
    if (a_version) columnar.emplace(target.S, LatticeVersion::columnar, widths);

    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            for (int xp = 0; xp < 2; ++xp)
                for (int lp = 0; lp < (a_version ? 2 : 1); ++lp) {
                    const auto loc = detail::at(dx, dy, xp, lp);
                    const int base_parity = a_version ? (xp + lp) % 2 : xp;
                    double o = 0;
                    try {
                        o = oracle.correlation(xp, lp, dx, dy).limit;
                    } catch (const error& e) {
                        rep.failures.push_back("frustrated" + loc + ": " + e.what());
                        continue;
                    }
                    const double v = ff_correlation(model, *table, dx, dy, base_parity);
                    rep.record(std::string("ff-") + to_string(separation_class(dx, dy)), tol.match, v - o, loc);
                    if (a_version) {
                        try {
                            const double ob = columnar->correlation(xp, 0, dx, dy).limit;
                            rep.record("row-gauge", tol.match, o - row_gauge(lp, dy) * ob, loc);
                        } catch (const error& e) {
                            rep.failures.push_back("frustrated-b" + loc + ": " + e.what());
                        }
                    }
                }
    return rep;
}

inline VerificationReport verify_identities(const Target& target, int radius, const Tolerances& tol,
                                            const CorrelationTable* table = nullptr) {
    return std::visit([&](const auto& t) { return verify_identities(t, radius, tol, table); }, target);
}

} // namespace quadcorr::oracle
