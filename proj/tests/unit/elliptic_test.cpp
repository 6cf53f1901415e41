#include <quadcorr/elliptic.hpp>
#include <quadcorr/suites.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace quadcorr;

// Reference values from mpmath at 40 digits.
constexpr double K_half = 1.685750354812596042871;
constexpr double K_09 = 2.280549138422770204614;
constexpr double E_half = 1.467462209339427155460;

TEST(CompleteEllipticK, ZeroModulusIsHalfPi) { EXPECT_NEAR(complete_elliptic_K(0.0), std::numbers::pi / 2, 1e-15); }

TEST(CompleteEllipticK, MatchesReferenceValues) {
    EXPECT_NEAR(complete_elliptic_K(0.5), K_half, 1e-15 * K_half);
    EXPECT_NEAR(complete_elliptic_K(0.9), K_09, 1e-15 * K_09);
    EXPECT_NEAR(complete_elliptic_E(0.5), E_half, 1e-15 * E_half);
}

TEST(CompleteEllipticK, MatchesQuadrature) {
    for (double k : {0.1, 0.5, 0.75, 0.95})
        EXPECT_NEAR(complete_elliptic_K(k), suites::elliptic_K_quadrature(k), 1e-12) << "k = " << k;
}

TEST(CompleteEllipticK, DivergesLogarithmicallyNearOne) {
    EXPECT_GT(complete_elliptic_K(1 - 1e-12), 14.0);
    EXPECT_NEAR(complete_elliptic_K(1 - 1e-12), 14.855231328811369, 1e-3);
}

TEST(CompleteEllipticK, MonotoneIncreasing) {
    double prev = 0;
    for (int i = 0; i < 100; ++i) {
        const double K = complete_elliptic_K(0.0099 * i);
        EXPECT_GT(K, prev);
        prev = K;
    }
}

TEST(CompleteEllipticK, RejectsOutsideDomain) {
    EXPECT_THROW(complete_elliptic_K(1.0), domain_error);
    EXPECT_THROW(complete_elliptic_K(-0.1), domain_error);
    EXPECT_THROW(complete_elliptic_K(std::nan("")), domain_error);
}

TEST(CompleteEllipticK, MultiprecisionAgreesWithDouble) {
    scoped_precision p(200);
    const real_mp K = complete_elliptic_K(real_mp("0.5"));
    EXPECT_NEAR(to_double(K), K_half, 1e-16);
}

TEST(Modulus, DerivedFields) {
    const Modulus m(0.6);
    EXPECT_NEAR(m.k_prime, 0.8, 1e-16);
    EXPECT_NEAR(m.k * m.k + m.k_prime * m.k_prime, 1.0, 4 * std::numeric_limits<double>::epsilon());
    EXPECT_DOUBLE_EQ(m.big_K, complete_elliptic_K(0.6));
    EXPECT_DOUBLE_EQ(m.big_K_prime, complete_elliptic_K(0.8));
    EXPECT_THROW(Modulus(1.0), domain_error);
    EXPECT_THROW(Modulus(0.0), domain_error);
}

TEST(JacobiElliptic, DegenerateModulusIsCircular) {
    for (double u : {-2.0, 0.3, 1.2, 5.0}) {
        const auto t = jacobi_elliptic(u, 0.0);
        EXPECT_DOUBLE_EQ(t.sn, std::sin(u));
        EXPECT_DOUBLE_EQ(t.cn, std::cos(u));
        EXPECT_DOUBLE_EQ(t.dn, 1.0);
        EXPECT_NEAR(t.sc(), std::tan(u), 1e-14 * (1 + std::abs(std::tan(u))));
    }
}

TEST(JacobiElliptic, OriginAndQuarterPeriod) {
    for (double k : {0.2, 0.7, 0.99}) {
        const auto z = jacobi_elliptic(0.0, k);
        EXPECT_EQ(z.sn, 0.0);
        EXPECT_EQ(z.cn, 1.0);
        EXPECT_EQ(z.dn, 1.0);
        EXPECT_NEAR(jacobi_elliptic(complete_elliptic_K(k), k).sn, 1.0, 1e-14);
    }
}

TEST(JacobiElliptic, HalfPeriodOfComplementIsInverseRootK) {
    for (double k : {0.05, 0.3, 0.5, 0.9}) {
        const Modulus mod(k);
        EXPECT_NEAR(jacobi_elliptic(mod.big_K_prime / 2, mod.k_prime).sc(), 1 / std::sqrt(k), 1e-12 / std::sqrt(k));
    }
}

TEST(JacobiElliptic, PythagoreanIdentitiesOnRandomPoints) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ud(-30, 30), kd(0, 0.9999);
    for (int i = 0; i < 1000; ++i) {
        const double u = ud(rng), k = kd(rng);
        const auto t = jacobi_elliptic(u, k);
        EXPECT_NEAR(t.sn * t.sn + t.cn * t.cn, 1.0, 1e-12);
        EXPECT_NEAR(t.dn * t.dn + k * k * t.sn * t.sn, 1.0, 1e-12);
    }
}

TEST(JacobiElliptic, PeriodicInFourK) {
    for (double k : {0.3, 0.8})
        for (double u : {-1.0, 0.4, 2.5})
            EXPECT_NEAR(jacobi_elliptic(u + 4 * complete_elliptic_K(k), k).sn, jacobi_elliptic(u, k).sn, 1e-10);
}

TEST(JacobiElliptic, PoleOfScCarriesArgument) {
    const double K = complete_elliptic_K(0.5);
    const auto t = jacobi_elliptic(K, 0.5);
    try {
        (void)t.sc();
        FAIL() << "expected pole_error";
    } catch (const pole_error& e) {
        EXPECT_DOUBLE_EQ(e.argument(), K);
    }
    EXPECT_THROW((void)jacobi_elliptic(0.0, 0.5).cs(), pole_error);
}

TEST(JacobiElliptic, ScTimesCsIsOne) {
    for (double u : {0.1, 0.7, 1.3})
        for (double k : {0.1, 0.6}) {
            const auto t = jacobi_elliptic(u, k);
            EXPECT_NEAR(t.sc() * t.cs(), 1.0, 1e-14);
        }
}
