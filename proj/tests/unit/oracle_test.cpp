#include <quadcorr/corr_engine.hpp>
#include <quadcorr/oracle/correlations.hpp>
#include <quadcorr/oracle/lattice.hpp>
#include <quadcorr/oracle/torus.hpp>
#include <quadcorr/oracle/verify.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace quadcorr;
using namespace quadcorr::oracle;

TEST(Enumeration, TwoSitesGiveTanh) {
    const auto lat = square_lattice(2, 1, false, false, 0.37);
    EXPECT_NEAR(enumerate_correlation(lat, 0, 1), std::tanh(0.37), 1e-15);
    EXPECT_EQ(enumerate_correlation(lat, 1, 1), 1.0);
}

TEST(Enumeration, TwoByTwoTorusClosedForm) {
    // Wrapping doubles every bond, so each plaquette edge carries 2K.
    const double K = 0.3, J = 2 * K;
    const double c = std::cosh(J), s = std::sinh(J);
    const double expected = (c * c * c * s + s * s * s * c) / (std::pow(c, 4) + std::pow(s, 4));
    EXPECT_NEAR(enumerate_correlation(square_lattice(2, 2, true, true, K), 0, 1), expected, 1e-14);
}

TEST(Enumeration, Limits) {
    EXPECT_THROW(enumerate_correlation(square_lattice(7, 3, false, false, 0.2), 0, 1), capacity_error);
    EXPECT_THROW(enumerate_correlation(square_lattice(2, 2, false, false, 0.2), 0, 4), range_error);
    FiniteLatticeSpec split{2, 2, {{0, 1, 0.2}, {2, 3, 0.2}}, false, false};
    EXPECT_THROW(enumerate_correlation(split, 0, 1), domain_error);
}

TEST(Torus, AgreesWithEnumeration) {
    const double K = 0.35;
    for (auto [W, L] : {std::pair{4, 4}, std::pair{4, 5}}) {
        const auto lat = square_lattice(W, L, true, true, K);
        for (int dy = 0; dy < L; ++dy)
            for (int dx = 0; dx < W; ++dx)
                EXPECT_NEAR(torus_correlation(W, L, K, dx, dy), enumerate_correlation(lat, 0, lat.site(dx, dy)), 1e-10)
                    << W << 'x' << L << " (" << dx << ',' << dy << ')';
    }
}

TEST(Torus, LongTorusApproachesCylinder) {
    const double K = 0.3;
    const Cylinder cyl(uniform_cylinder(4, K));
    for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 2}, std::pair{2, 3}})
        EXPECT_NEAR(torus_correlation(4, 40, K, dx, dy), cyl.spin_correlation(0, 0, dx, dy).value, 1e-8);
    EXPECT_THROW(torus_correlation(11, 4, K, 0, 1), capacity_error);
    EXPECT_THROW(torus_correlation(4, 4, K, 0, 4), domain_error);
}

TEST(Cylinder, BasicValues) {
    const Cylinder cyl(uniform_cylinder(6, 0.2));
    EXPECT_NEAR(cyl.spin_correlation(1, 0, 0, 0).value, 1.0, 1e-14);
    const Cylinder weak(uniform_cylinder(6, 1e-4));
    EXPECT_NEAR(weak.spin_correlation(0, 0, 1, 0).value, std::tanh(1e-4), 1e-10);
    EXPECT_NEAR(weak.spin_correlation(0, 0, 0, 1).value, std::tanh(1e-4), 1e-10);
    EXPECT_THROW(cyl.disorder_correlation(0, 5, 1), capacity_error);
}

TEST(Cylinder, BoundedByOne) {
    const Cylinder cyl(uniform_cylinder(8, 0.4));
    for (int dy = 0; dy < 5; ++dy)
        for (int dx = 0; dx < 5; ++dx) {
            const double v = cyl.spin_correlation(0, 0, dx, dy).value;
            EXPECT_GE(v, 0);
            EXPECT_LE(v, 1 + 1e-14);
        }
}

TEST(Extrapolate, ConstantAndGeometric) {
    const auto c = extrapolate({8, 10, 12}, {0.25, 0.25, 0.25});
    EXPECT_EQ(c.limit, 0.25);
    std::vector<int> w{8, 10, 12, 14};
    std::vector<double> v;
    for (int W : w) v.push_back(0.7 + 0.5 * std::exp(-W));
    const auto e = extrapolate(w, v);
    EXPECT_NEAR(e.limit, 0.7, 1e-10);
    EXPECT_GE(e.error, 0);
}

TEST(Extrapolate, RejectsBadData) {
    EXPECT_THROW(extrapolate({8, 10, 12}, {0.1, 0.3, 0.2}), estimation_error);
    EXPECT_THROW(extrapolate({8, 10}, {0.1, 0.3}), estimation_error);
    EXPECT_THROW(extrapolate({8, 10, 13}, {0.1, 0.2, 0.25}), estimation_error);
    EXPECT_THROW(extrapolate({8, 10, 12}, {0.1, 0.2, 0.4}), estimation_error);
}

TEST(UniformOracle, MatchesOnsagerNearestNeighbour) {
    // nn correlation from the energy of the isotropic model at k = 0.5.
    const UniformOracle o(0.5);
    EXPECT_NEAR(o.C(1, 0).limit, 0.4013239632465773, 1e-7);
    EXPECT_NEAR(o.C(0, 1).limit, 0.4013239632465773, 1e-7);
    EXPECT_EQ(o.C(0, 0).limit, 1.0);
}

TEST(UniformOracle, AgreesWithTable) {
    const auto t = build_table(0.5, 4);
    const UniformOracle o(0.5);
    for (auto [m, n] : {std::pair{1, 1}, std::pair{0, 2}, std::pair{2, 3}}) {
        EXPECT_NEAR(o.C(m, n).limit, t.C(m, n), 1e-7);
        EXPECT_NEAR(o.Cbar(m, n).limit, t.Cbar(m, n), 1e-7);
    }
}

TEST(FrustratedOracle, OriginAndSymmetry) {
    const FrustratedOracle o(1.0, LatticeVersion::columnar);
    EXPECT_EQ(o.correlation(0, 0, 0, 0).limit, 1.0);
    EXPECT_NEAR(o.correlation(0, 0, 1, 0).limit, 0.3276796438, 1e-8);
    EXPECT_NEAR(std::abs(o.correlation(0, 0, 1, 1).limit), 0.0, 1e-10);
}

TEST(Verify, UniformTablePasses) {
    const auto t = build_table(0.5, 5);
    const auto rep = verify_identities(UniformTarget{0.5}, 4, Tolerances{}, &t);
    EXPECT_TRUE(rep.passed());
    EXPECT_TRUE(rep.failures.empty());
    bool has_cross = false;
    for (const auto& r : rep.rows) has_cross |= r.identity == identity::cross_name;
    EXPECT_TRUE(has_cross);
}

TEST(Verify, CorruptedEntryIsLocated) {
    const auto base = build_table(0.5, 5);
    const auto t = base.with_entry(2, 3, Which::C, base.C(2, 3) + 1e-4);
    const auto rep = verify_identities(UniformTarget{0.5}, 4, Tolerances{}, &t);
    EXPECT_FALSE(rep.passed());
    bool found = false;
    for (const auto& r : rep.rows)
        if (r.identity == "match-C") {
            EXPECT_GE(r.residual, 1e-4 * 0.999);
            EXPECT_EQ(r.location, "(2,3)");
            found = true;
        }
    EXPECT_TRUE(found);
}

TEST(Verify, TableRadiusMustExceedCheckRadius) {
    const auto t = build_table(0.5, 4);
    EXPECT_THROW(verify_identities(UniformTarget{0.5}, 4, Tolerances{}, &t), configuration_error);
    EXPECT_THROW(verify_identities(UniformTarget{0.4}, 3, Tolerances{}, &t), configuration_error);
}

TEST(Verify, FrustratedBothVersions) {
    for (auto v : {LatticeVersion::columnar, LatticeVersion::checkerboard}) {
        const auto rep = verify_identities(FrustratedTarget{1.0, v}, 2, Tolerances{});
        EXPECT_TRUE(rep.passed()) << to_string(v);
    }
}

TEST(Verify, ReportFormats) {
    VerificationReport rep;
    rep.target = "demo";
    rep.record("x", 1e-6, 2e-7, "(1,0)");
    rep.record("x", 1e-6, -5e-7, "(2,0)");
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.rows[0].location, "(2,0)");
    EXPECT_EQ(rep.rows[0].checked, 2u);
    std::ostringstream csv, txt;
    rep.write_csv(csv);
    rep.write_text(txt);
    EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "identity,location,residual,tolerance,pass");
    EXPECT_NE(txt.str().find("PASS x worst"), std::string::npos);
    rep.failures.push_back("C(9,9): no convergence");
    EXPECT_FALSE(rep.passed());
    VerificationReport empty;
    EXPECT_FALSE(empty.passed());
}
