#pragma once

// Wavevector-dependent susceptibility
//   chi(q) = sum_D e^{i q.D} <s_0 s_D>
// over a square window |Dx|, |Dy| <= R, for the uniform model, the column
// gauge model and the fully frustrated model. Every correlation used here is
// even in Dx and in Dy separately, so the sums reduce to cosine products and
// no imaginary parts are ever formed.

#include "corr_engine.hpp"
#include "error.hpp"
#include "frustrated.hpp"
#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace quadcorr {

struct Wavevector {
    double qx = 0, qy = 0;
};

/// Maps q into [-pi, pi).
inline double wrap_q(double q) {
    constexpr double two_pi = 2 * std::numbers::pi;
    double r = std::fmod(q + std::numbers::pi, two_pi);
    if (r < 0) r += two_pi;
    return r - std::numbers::pi;
}

/// Correlations on the folded quadrant 0 <= Dx, Dy <= R; entry (x,y) at y*(R+1)+x.
struct FoldedCorrelation {
    int R = 0;
    std::vector<double> values;

    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * (R + 1) + x]; }
};

namespace detail {

inline void check_window(const CorrelationTable& table, int R, const char* op) {
    if (R < 0 || R > table.radius()) {
        std::ostringstream os;
        os << op << ": window R = " << R << " exceeds table radius " << table.radius();
        throw range_error(os.str());
    }
}

inline void check_disordered(const CorrelationTable& table, const char* op) {
    if (!(table.k() < 1)) {
        std::ostringstream os;
        os << op << ": table at k = " << table.k() << " is in the ordered phase; connected correlations "
           << "would need the magnetization subtracted";
        throw domain_error(os.str());
    }
}

/// w_0 = 1, w_d = 2 (folding D and -D).
inline double fold_weight(int d) { return d == 0 ? 1.0 : 2.0; }

inline double folded_sum(const FoldedCorrelation& f, const Wavevector& q) {
    const double qx = wrap_q(q.qx), qy = wrap_q(q.qy);
    double total = 0;
    for (int y = 0; y <= f.R; ++y) {
        double row = 0;
        for (int x = 0; x <= f.R; ++x) row += fold_weight(x) * std::cos(qx * x) * f.at(x, y);
        total += fold_weight(y) * std::cos(qy * y) * row;
    }
    return total;
}

} // namespace detail

inline FoldedCorrelation fold_uniform(const CorrelationTable& table, int R) {
    detail::check_window(table, R, "chi_uniform");
    detail::check_disordered(table, "chi_uniform");
    FoldedCorrelation f{R, {}};
    for (int y = 0; y <= R; ++y)
        for (int x = 0; x <= R; ++x) f.values.push_back(table.C(x, y));
    return f;
}

/// C(Dx,Dy) kappa(|Dy|): translation average of eps(y) eps(y') C for row signs eps.
inline FoldedCorrelation fold_column_gauge(const CorrelationTable& table, const std::vector<double>& kappa, int R) {
    detail::check_window(table, R, "chi_column_gauge");
    detail::check_disordered(table, "chi_column_gauge");
    if (kappa.size() < static_cast<std::size_t>(R) + 1) {
        std::ostringstream os;
        os << "chi_column_gauge: autocorrelation known to lag " << static_cast<long>(kappa.size()) - 1
           << ", window needs lag " << R;
        throw range_error(os.str());
    }
    FoldedCorrelation f{R, {}};
    for (int y = 0; y <= R; ++y)
        for (int x = 0; x <= R; ++x) f.values.push_back(table.C(x, y) * kappa[y]);
    return f;
}

/// Even-even and odd-even classes only: odd-odd vanishes and even-odd
/// cancels between the two base parities of the sublattice average.
inline FoldedCorrelation fold_frustrated(const FrustratedModel& model, const CorrelationTable& table, int R) {
    if (R < 0 || (R + 1) / 2 > table.radius()) {
        std::ostringstream os;
        os << "chi_frustrated: lattice window R = " << R << " needs table radius " << (R + 1) / 2 << ", have "
           << table.radius();
        throw range_error(os.str());
    }
    FoldedCorrelation f{R, {}};
    for (int y = 0; y <= R; ++y)
        for (int x = 0; x <= R; ++x) {
            const auto cls = separation_class(x, y);
            const bool kept = cls == SeparationClass::even_even || cls == SeparationClass::odd_even;
            f.values.push_back(kept ? ff_correlation(model, table, x, y, 0) : 0.0);
        }
    return f;
}

inline double chi_uniform(const CorrelationTable& table, const Wavevector& q, int R) {
    return detail::folded_sum(fold_uniform(table, R), q);
}

inline double chi_column_gauge(const CorrelationTable& table, const std::vector<double>& kappa,
                               const Wavevector& q, int R) {
    return detail::folded_sum(fold_column_gauge(table, kappa, R), q);
}

/// R counts lattice spacings of the original model.
inline double chi_frustrated(const FrustratedModel& model, const CorrelationTable& table, const Wavevector& q,
                             int R) {
    return detail::folded_sum(fold_frustrated(model, table, R), q);
}

/// Omitted mass sum_{max(|Dx|,|Dy|) > R} |<s_0 s_D>|, bounded with a
/// geometric envelope A e^{s r} fitted to log C(0,n) over n in [R/2, R].
/// Since C(m,n) <= C(0,max(m,n)) and a shell of radius r holds 8r sites,
/// the bound is 8 A sum_{r>R} r e^{s r}.
///
/// `stride` > 1 measures r in units of the original lattice when table
/// index n corresponds to separation stride*n (fully frustrated model).
inline double tail_estimate(const CorrelationTable& table, int R, int stride = 1) {
    const int n_hi = R / stride;
    if (n_hi > table.radius()) {
        std::ostringstream os;
        os << "tail_estimate: window R = " << R << " exceeds table range";
        throw range_error(os.str());
    }
    const int n_lo = n_hi / 2;
    if (n_hi - n_lo < 2) throw estimation_error("tail_estimate: window too small to fit a decay rate");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int n = n_lo; n <= n_hi; ++n) {
        const double y = std::log(table.C(0, n));
        sx += n;
        sy += y;
        sxx += double(n) * n;
        sxy += n * y;
        ++cnt;
    }
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    if (!(slope < -1.0 / std::max(n_hi, 1))) {
        std::ostringstream os;
        os << "tail_estimate: correlations do not decay over the window (fitted slope " << slope
           << "); k is too close to criticality for R = " << R;
        throw estimation_error(os.str());
    }
    double logA = -std::numeric_limits<double>::infinity();
    for (int n = n_lo; n <= n_hi; ++n) logA = std::max(logA, std::log(table.C(0, n)) - slope * n);

    // Envelope in lattice units: |corr(r)| <= A e^{s (r - stride + 1)/stride}.
    const double s = slope / stride;
    const double x = std::exp(s);
    const double amp = std::exp(logA - s * (stride - 1));
    const double r0 = R + 1;
    const double shell_sum = std::exp(s * r0) * (r0 - R * x) / ((1 - x) * (1 - x));
    return 8 * amp * shell_sum;
}

struct UniformSource {
    const CorrelationTable* table;
};
struct GaugeSource {
    const CorrelationTable* table;
    std::vector<double> kappa;
};
struct FrustratedSource {
    FrustratedModel model;
    const CorrelationTable* table;
};
using ChiSource = std::variant<UniformSource, GaugeSource, FrustratedSource>;

inline std::string describe(const ChiSource& src) {
    std::ostringstream os;
    os.precision(17);
    if (auto* u = std::get_if<UniformSource>(&src)) os << "uniform k=" << u->table->k();
    if (auto* g = std::get_if<GaugeSource>(&src)) os << "gauge k=" << g->table->k();
    if (auto* f = std::get_if<FrustratedSource>(&src))
        os << "frustrated S=" << f->model.S << " version=" << to_string(f->model.version);
    return os.str();
}

struct ChiGrid {
    int nx = 0, ny = 0;
    std::vector<double> values; // row-major, qy outer: values[j*nx + i]
    int window_radius = 0;
    double tail_bound = 0;
    std::string source;

    static double q_at(int i, int n) { return 2 * std::numbers::pi * i / n - std::numbers::pi; }
    double qx(int i) const { return q_at(i, nx); }
    double qy(int j) const { return q_at(j, ny); }
    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }

    double mean() const {
        double s = 0;
        for (double v : values) s += v;
        return s / static_cast<double>(values.size());
    }
};

inline FoldedCorrelation fold(const ChiSource& src, int R) {
    if (auto* u = std::get_if<UniformSource>(&src)) return fold_uniform(*u->table, R);
    if (auto* g = std::get_if<GaugeSource>(&src)) return fold_column_gauge(*g->table, g->kappa, R);
    const auto& f = std::get<FrustratedSource>(src);
    return fold_frustrated(f.model, *f.table, R);
}

/// Samples chi on q = (2 pi i/nx - pi, 2 pi j/ny - pi).
///
/// Row sums A(i, y) = sum_x w_x cos(qx_i x) F(x, y) are formed once, so the
/// cost is O(nx R^2 + nx ny R) instead of O(nx ny R^2).
inline ChiGrid chi_grid(const ChiSource& src, int nx, int ny, int R, unsigned threads = 1) {
    if (nx < 2 || ny < 2) throw domain_error("chi_grid: grid dimensions must be >= 2");
    const FoldedCorrelation f = fold(src, R);

    ChiGrid g;
    g.nx = nx;
    g.ny = ny;
    g.window_radius = R;
    g.source = describe(src);
    g.values.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    if (auto* fs = std::get_if<FrustratedSource>(&src))
        g.tail_bound = tail_estimate(*fs->table, R, 2);
    else
        g.tail_bound = tail_estimate(std::holds_alternative<UniformSource>(src) ? *std::get<UniformSource>(src).table
                                                                              : *std::get<GaugeSource>(src).table,
                                     R);

    const int W = R + 1;
    std::vector<double> cy(static_cast<std::size_t>(ny) * W);
    for (int j = 0; j < ny; ++j)
        for (int y = 0; y < W; ++y) cy[static_cast<std::size_t>(j) * W + y] = detail::fold_weight(y) * std::cos(g.qy(j) * y);

    auto work = [&](int i_begin, int i_end) {
        std::vector<double> row(W);
        for (int i = i_begin; i < i_end; ++i) {
            const double qx = g.qx(i);
            std::vector<double> cx(W);
            for (int x = 0; x < W; ++x) cx[x] = detail::fold_weight(x) * std::cos(qx * x);
            for (int y = 0; y < W; ++y) {
                double s = 0;
                for (int x = 0; x < W; ++x) s += cx[x] * f.at(x, y);
                row[y] = s;
            }
            for (int j = 0; j < ny; ++j) {
                double s = 0;
                const double* c = &cy[static_cast<std::size_t>(j) * W];
                for (int y = 0; y < W; ++y) s += c[y] * row[y];
                g.values[static_cast<std::size_t>(j) * nx + i] = s;
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(nx)));
    if (threads == 1) {
        work(0, nx);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work, static_cast<int>(nx * t / threads), static_cast<int>(nx * (t + 1) / threads));
        for (auto& th : pool) th.join();
    }
    return g;
}

struct Peak {
    Wavevector q;
    double value;
    bool commensurate;
};

/// Strict local maxima over the periodic grid (8-neighbourhood). A peak is
/// commensurate when both components lie within one grid cell of a multiple
/// of 2 pi / denominator.
inline std::vector<Peak> find_peaks(const ChiGrid& g, int denominator = 4) {
    if (denominator < 1) throw domain_error("find_peaks: denominator must be positive");
    double scale = 0;
    for (double v : g.values) scale = std::max(scale, std::abs(v));
    const double tol = 1e-12 * scale;
    auto near_multiple = [&](double q, int n) {
        const double step = 2 * std::numbers::pi / denominator;
        const double cell = 2 * std::numbers::pi / n;
        const double r = q - step * std::round(q / step);
        return std::abs(r) <= cell * (1 + 1e-9);
    };
    std::vector<Peak> out;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double v = g.at(i, j);
            bool is_max = true;
            for (int dj = -1; dj <= 1 && is_max; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0) continue;
                    const int ii = (i + di + g.nx) % g.nx, jj = (j + dj + g.ny) % g.ny;
                    if (ii == i && jj == j) continue;
                    if (!(v > g.at(ii, jj) + tol)) {
                        is_max = false;
                        break;
                    }
                }
            if (is_max)
                out.push_back({{g.qx(i), g.qy(j)}, v, near_multiple(g.qx(i), g.nx) && near_multiple(g.qy(j), g.ny)});
        }
    return out;
}

inline void write_chi_csv(std::ostream& os, const ChiGrid& g) {
    os << "qx,qy,chi\n";
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            os << io::format_real(g.qx(i)) << ',' << io::format_real(g.qy(j)) << ',' << io::format_real(g.at(i, j))
               << '\n';
}

inline void write_peaks_csv(std::ostream& os, const std::vector<Peak>& peaks) {
    os << "qx,qy,value,commensurate\n";
    for (const auto& p : peaks)
        os << io::format_real(p.q.qx) << ',' << io::format_real(p.q.qy) << ',' << io::format_real(p.value) << ','
           << (p.commensurate ? 1 : 0) << '\n';
}

} // namespace quadcorr
