#include <quadcorr/chi.hpp>
#include <quadcorr/quasiperiodic.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace quadcorr;

namespace {

constexpr double pi = std::numbers::pi;

const CorrelationTable& table_k05() {
    static const CorrelationTable t = build_table(0.5, 30);
    return t;
}

const CorrelationTable& table_S1() {
    static const CorrelationTable t = build_table(dual_pair(1.0).k, 10);
    return t;
}

/// Direct complex-exponential sum over the full square window.
double brute_uniform(const CorrelationTable& t, Wavevector q, int R) {
    double s = 0;
    for (int y = -R; y <= R; ++y)
        for (int x = -R; x <= R; ++x) s += std::cos(q.qx * x + q.qy * y) * t.C(x, y);
    return s;
}

} // namespace

TEST(ChiUniform, SingleTermWindow) { EXPECT_EQ(chi_uniform(table_k05(), {0, 0}, 0), 1.0); }

TEST(ChiUniform, MatchesDirectSum) {
    for (auto q : {Wavevector{0.3, -1.1}, Wavevector{pi, pi}, Wavevector{-2.0, 0.7}})
        EXPECT_NEAR(chi_uniform(table_k05(), q, 12), brute_uniform(table_k05(), q, 12), 1e-12);
}

TEST(ChiUniform, EvenAndPeriodic) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> qd(-pi, pi);
    for (int i = 0; i < 100; ++i) {
        const Wavevector q{qd(rng), qd(rng)};
        const double c = chi_uniform(table_k05(), q, 30);
        EXPECT_NEAR(chi_uniform(table_k05(), {-q.qx, -q.qy}, 30), c, 1e-12);
        EXPECT_NEAR(chi_uniform(table_k05(), {q.qx + 2 * pi, q.qy}, 30), c, 1e-12);
    }
}

TEST(ChiUniform, ZeroWavevectorInvertsTheGrid) {
    const auto g = chi_grid(UniformSource{&table_k05()}, 64, 64, 30);
    const int i0 = 32, j0 = 32; // q = 0
    EXPECT_EQ(g.qx(i0), 0.0);
    EXPECT_NEAR(g.at(i0, j0), chi_uniform(table_k05(), {0, 0}, 30), 1e-10);
    EXPECT_NEAR(g.mean(), 1.0, 1e-10); // the window fits inside one period of the grid
}

TEST(ChiUniform, WindowBeyondTableThrows) {
    EXPECT_THROW(chi_uniform(table_k05(), {0, 0}, 31), range_error);
    EXPECT_THROW(chi_uniform(build_table(2.0, 6), {0, 0}, 4), domain_error);
}

TEST(ChiColumnGauge, IdentityAndAlternatingGauges) {
    std::vector<double> one(31, 1.0), alt(31);
    for (int d = 0; d <= 30; ++d) alt[d] = d % 2 ? -1.0 : 1.0;
    for (auto q : {Wavevector{0.2, 0.3}, Wavevector{-1.4, 2.9}}) {
        EXPECT_NEAR(chi_column_gauge(table_k05(), one, q, 30), chi_uniform(table_k05(), q, 30), 1e-12);
        EXPECT_NEAR(chi_column_gauge(table_k05(), alt, q, 30), chi_uniform(table_k05(), {q.qx, q.qy + pi}, 30), 1e-12);
    }
}

TEST(ChiColumnGauge, MissingLagThrows) {
    EXPECT_THROW(chi_column_gauge(table_k05(), std::vector<double>(10, 1.0), {0, 0}, 20), range_error);
}

TEST(ChiColumnGauge, ExactForAnExplicitGaugeSignedLattice) {
    // Flip columns with s(n) = -1: the pair correlation becomes s(n)s(n') C.
    const auto seq = sign_sequence({0, 0}, 4000);
    const int R = 6;
    const auto kappa = autocorrelation(seq, R);
    const Wavevector q{0.4, 1.3};
    double direct = 0;
    const int N = 4000 - R;
    for (int y0 = 0; y0 < N; ++y0)
        for (int dy = -R; dy <= R; ++dy) {
            if (y0 + dy < 0 || y0 + dy >= 4000) continue;
            for (int dx = -R; dx <= R; ++dx)
                direct += std::cos(q.qx * dx + q.qy * dy) * seq.signs[y0] * seq.signs[y0 + dy] * table_k05().C(dx, dy);
        }
    // Edge effects are O(R/N); the lag-normalized kappa matches to that order.
    EXPECT_NEAR(direct / N, chi_column_gauge(table_k05(), kappa, q, R), 2e-2);
}

TEST(ChiFrustrated, VersionsRelatedByQuarterShift) {
    const FrustratedModel a{1.0, LatticeVersion::checkerboard}, b{1.0, LatticeVersion::columnar};
    for (auto q : {Wavevector{0.1, 0.2}, Wavevector{2.5, -0.9}, Wavevector{-pi, 1.0}})
        EXPECT_NEAR(chi_frustrated(a, table_S1(), q, 18), chi_frustrated(b, table_S1(), {q.qx, q.qy + pi / 2}, 18), 1e-12);
}

TEST(ChiFrustrated, EvenAndParityCancellation) {
    const FrustratedModel m{1.0, LatticeVersion::checkerboard};
    const Wavevector q{0.7, -1.9};
    EXPECT_NEAR(chi_frustrated(m, table_S1(), q, 18), chi_frustrated(m, table_S1(), {-q.qx, -q.qy}, 18), 1e-12);
    for (auto v : {LatticeVersion::checkerboard, LatticeVersion::columnar})
        for (int dy = -17; dy <= 17; dy += 2)
            for (int dx = -18; dx <= 18; dx += 2)
                EXPECT_NEAR(ff_correlation({1.0, v}, table_S1(), dx, dy, 0) + ff_correlation({1.0, v}, table_S1(), dx, dy, 1),
                            0.0, 1e-15);
}

TEST(ChiFrustrated, TableTooSmall) {
    EXPECT_THROW(chi_frustrated({1.0}, table_S1(), {0, 0}, 23), range_error);
    EXPECT_THROW(chi_frustrated({1.0}, table_k05(), {0, 0}, 4), configuration_error);
}

TEST(TailEstimate, DeepSubcriticalIsTiny) {
    EXPECT_LE(tail_estimate(build_table(0.1, 20), 20), 1e-10);
}

TEST(TailEstimate, DecreasesWithWindow) {
    double prev = INFINITY;
    for (int R = 10; R <= 30; R += 4) {
        const double b = tail_estimate(table_k05(), R);
        EXPECT_LT(b, prev);
        EXPECT_GE(b, 0);
        prev = b;
    }
}

TEST(TailEstimate, NonDecayingNearCriticality) {
    EXPECT_THROW(tail_estimate(build_table(1 - 2e-6, 8), 8), estimation_error);
}

TEST(ChiGrid, LayoutConsistencyAndSymmetry) {
    const auto g = chi_grid(UniformSource{&table_k05()}, 2, 2, 20);
    EXPECT_EQ(g.qx(1), 0.0);
    EXPECT_NEAR(g.at(1, 1), chi_uniform(table_k05(), {0, 0}, 20), 1e-12);
    const auto h = chi_grid(UniformSource{&table_k05()}, 16, 12, 20);
    for (int j = 0; j < h.ny; ++j)
        for (int i = 0; i < h.nx; ++i) {
            EXPECT_NEAR(h.at(i, j), h.at((h.nx - i) % h.nx, (h.ny - j) % h.ny), 1e-12);
            EXPECT_NEAR(h.at(i, j), chi_uniform(table_k05(), {h.qx(i), h.qy(j)}, 20), 1e-12);
        }
    EXPECT_THROW(chi_grid(UniformSource{&table_k05()}, 1, 4, 20), domain_error);
}

TEST(ChiGrid, SumRuleAndNonNegativity) {
    const auto g = chi_grid(UniformSource{&table_k05()}, 64, 64, 30);
    EXPECT_LE(std::abs(g.mean() - 1.0), 1e-3);
    for (double v : g.values) EXPECT_GE(v, -(g.tail_bound + 1e-10));
    EXPECT_GT(g.tail_bound, 0);
    EXPECT_EQ(g.window_radius, 30);
}

TEST(ChiGrid, ThreadedMatchesSerial) {
    const auto a = chi_grid(UniformSource{&table_k05()}, 33, 17, 25, 1);
    const auto b = chi_grid(UniformSource{&table_k05()}, 33, 17, 25, 4);
    EXPECT_EQ(a.values, b.values);
}

TEST(FindPeaks, UniformFerromagnetHasOneCommensuratePeak) {
    const auto p = find_peaks(chi_grid(UniformSource{&table_k05()}, 64, 64, 30));
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p[0].q.qx, 0.0);
    EXPECT_EQ(p[0].q.qy, 0.0);
    EXPECT_TRUE(p[0].commensurate);
}

TEST(FindPeaks, ConstantGridHasNone) {
    ChiGrid g;
    g.nx = g.ny = 8;
    g.values.assign(64, 2.5);
    EXPECT_TRUE(find_peaks(g).empty());
}

TEST(FindPeaks, FrustratedPeaksAreCommensurate) {
    const auto g = chi_grid(FrustratedSource{{1.0, LatticeVersion::checkerboard}, &table_S1()}, 64, 64, 18);
    const auto p = find_peaks(g);
    EXPECT_FALSE(p.empty());
    for (const auto& x : p) EXPECT_TRUE(x.commensurate);
}

TEST(ChiOutput, CsvLayout) {
    const auto g = chi_grid(UniformSource{&table_k05()}, 2, 3, 10);
    std::ostringstream os;
    write_chi_csv(os, g);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "qx,qy,chi");
    int rows = 0;
    std::string first, second;
    while (std::getline(is, line)) {
        if (rows == 0) first = line;
        if (rows == 1) second = line;
        ++rows;
    }
    EXPECT_EQ(rows, 6);
    // qx varies fastest.
    EXPECT_EQ(first.substr(0, first.find(',')), "-3.1415926535897931e+00");
    EXPECT_EQ(second.substr(0, second.find(',')), "0.0000000000000000e+00");
    std::ostringstream ps;
    write_peaks_csv(ps, find_peaks(g));
    EXPECT_EQ(ps.str().substr(0, ps.str().find('\n')), "qx,qy,value,commensurate");
}
