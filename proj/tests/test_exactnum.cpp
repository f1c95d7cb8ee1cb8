#include <gtest/gtest.h>

#include <random>

#include "heisidem/exactnum.hpp"

using namespace heisidem::exactnum;

TEST(Rational, NormalisesSignAndGcd) {
    Rational r(6, -4);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(Rational::parse("-3/2"), r);
    EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
    EXPECT_THROW(Rational(1, 0), std::domain_error);
}

TEST(Rational, OverflowIsDetected) {
    Rational big(INT64_MAX / 2);
    EXPECT_THROW(big * Rational(4), std::overflow_error);
}

TEST(QmodZ, WrapsIntoUnitInterval) {
    EXPECT_EQ(QmodZ(5, 3), QmodZ(2, 3));
    EXPECT_EQ(QmodZ(-1, 3), QmodZ(2, 3));
    EXPECT_EQ(QmodZ(1, 3) + QmodZ(2, 3), QmodZ());
    EXPECT_EQ(-QmodZ(1, 4), QmodZ(3, 4));
    EXPECT_EQ(QmodZ(2, 6).order(), 3);
}

TEST(Cyclotomic, RootOfUnityExamples) {
    EXPECT_EQ(root_of_unity(QmodZ()), Cyclotomic(1));
    EXPECT_EQ(root_of_unity(QmodZ(1, 2)), Cyclotomic(-1));
    EXPECT_EQ(root_of_unity(QmodZ(1, 3)) * root_of_unity(QmodZ(2, 3)), Cyclotomic(1));
    EXPECT_EQ(root_of_unity(QmodZ(2, 6)).order(), 3);
}

TEST(Cyclotomic, FieldExamples) {
    auto z3 = Cyclotomic::zeta(3);
    EXPECT_TRUE((z3 + z3 * z3 + Cyclotomic(1)).is_zero());
    EXPECT_EQ(Cyclotomic::zeta(5, 2).conjugate(), Cyclotomic::zeta(5, 3));
    EXPECT_EQ(Cyclotomic::zeta(4) * Cyclotomic::zeta(4), Cyclotomic(-1));
    EXPECT_EQ((z3 + z3 * z3).as_rational(), Rational(-1));
    EXPECT_FALSE(z3.as_rational().has_value());
    EXPECT_TRUE(Cyclotomic::from_coeffs(std::vector<Rational>(7)).is_zero());
}

TEST(Cyclotomic, MixedOrdersUnify) {
    // zeta_4 * zeta_3 = zeta_12^{3+4}
    EXPECT_EQ(Cyclotomic::zeta(4) * Cyclotomic::zeta(3), Cyclotomic::zeta(12, 7));
    // zeta_6 = -zeta_3^2
    EXPECT_EQ(Cyclotomic::zeta(6), -Cyclotomic::zeta(3, 2));
    EXPECT_EQ(Cyclotomic::zeta(9, 3), Cyclotomic::zeta(3));
}

TEST(Cyclotomic, CyclotomicPolynomials) {
    EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<std::int64_t>{-1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(6), (std::vector<std::int64_t>{1, -1, 1}));
    EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<std::int64_t>{1, 0, -1, 0, 1}));
    for (int n = 1; n <= 60; ++n) EXPECT_EQ(static_cast<int>(cyclotomic_polynomial(n).size()) - 1, euler_phi(n));
}

TEST(CyclotomicProperty, RootOfUnityIsAdditiveInExponent) {
    for (int d1 = 1; d1 <= 8; ++d1)
        for (int a1 = 0; a1 < d1; ++a1)
            for (int d2 = 1; d2 <= 8; ++d2)
                for (int a2 = 0; a2 < d2; ++a2) {
                    QmodZ q1(a1, d1), q2(a2, d2);
                    ASSERT_EQ(root_of_unity(q1 + q2), root_of_unity(q1) * root_of_unity(q2));
                }
}

TEST(CyclotomicProperty, NormOfRootsIsOne) {
    for (int d = 1; d <= 30; ++d)
        for (int a = 0; a < d; ++a) {
            auto z = root_of_unity(QmodZ(a, d));
            ASSERT_EQ((z * z.conjugate()).as_rational(), Rational(1));
        }
}

namespace {
Cyclotomic random_element(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> coef(-4, 4);
    std::vector<Rational> c(static_cast<std::size_t>(n));
    for (auto& x : c) x = Rational(coef(rng), 1 + (coef(rng) + 4) % 3);
    return Cyclotomic::from_coeffs(std::move(c));
}
}  // namespace

TEST(CyclotomicProperty, EmbeddingPreservesEquality) {
    std::mt19937 rng(7);
    for (int n = 1; n <= 24; ++n)
        for (int k = 1; k <= 4; ++k) {
            auto x = random_element(rng, n);
            auto y = x + Cyclotomic::zeta(n) - Cyclotomic::zeta(n);
            ASSERT_EQ(x.embed(n * k), y);
            ASSERT_EQ(x.embed(n * k).reduced(), x.reduced().embed(n * k).reduced());
            auto w = random_element(rng, n);
            ASSERT_EQ(x == w, x.embed(n * k) == w.embed(n * k));
        }
}

TEST(CyclotomicProperty, RingAxiomsAndConjugation) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int n1 = 1 + trial % 12, n2 = 1 + (trial * 5) % 9, n3 = 1 + (trial * 7) % 10;
        auto a = random_element(rng, n1), b = random_element(rng, n2), c = random_element(rng, n3);
        ASSERT_EQ(a * b, b * a);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a.conjugate().conjugate(), a);
        ASSERT_EQ((a * b).conjugate(), a.conjugate() * b.conjugate());
        Cyclotomic acc = a;
        acc.add_product(b, c);
        ASSERT_EQ(acc, a + b * c);
        if (!a.is_zero()) ASSERT_EQ(a * a.inverse(), Cyclotomic(1));
    }
}

TEST(CyclotomicProperty, NormOfSumsOfRootsIsNonNegativeRational) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + trial % 15;
        auto x = random_element(rng, n);
        auto norm = (x * x.conjugate()).as_rational();
        if (norm) EXPECT_GE(*norm, Rational(0));
        // the product of all Galois conjugates is always rational
        Cyclotomic prod(1);
        for (int a = 1; a <= n; ++a)
            if (gcd64(a, n) == 1) prod *= x.galois(a);
        ASSERT_TRUE(prod.as_rational().has_value());
    }
}
