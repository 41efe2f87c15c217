#include <gtest/gtest.h>

#include <random>

#include "stda/laurent.hpp"

using namespace stda;

namespace {

LaurentPoly lp(const std::string& text, int p) { return parse_laurent(text, FieldPrime(p)); }

LaurentPoly random_poly(std::mt19937& rng, FieldPrime field, int lo, int hi) {
    std::uniform_int_distribution<int> exp_dist(lo, hi);
    std::uniform_int_distribution<int> coeff_dist(0, field.p() - 1);
    std::vector<LaurentPoly::Term> terms;
    int count = std::uniform_int_distribution<int>(0, 6)(rng);
    for (int i = 0; i < count; ++i) {
        terms.emplace_back(exp_dist(rng), static_cast<Fp>(coeff_dist(rng)));
    }
    return LaurentPoly(field, terms);
}

} // namespace

TEST(FieldPrime, RejectsNonPrimes) {
    EXPECT_THROW(FieldPrime(1), UsageError);
    EXPECT_THROW(FieldPrime(4), UsageError);
    EXPECT_THROW(FieldPrime(91), UsageError);
    EXPECT_THROW(FieldPrime(101), UsageError);
    EXPECT_NO_THROW(FieldPrime(2));
    EXPECT_NO_THROW(FieldPrime(97));
}

TEST(FieldPrime, Arithmetic) {
    FieldPrime f3(3);
    EXPECT_EQ(f3.add(2, 2), 1);
    EXPECT_EQ(f3.sub(0, 1), 2);
    EXPECT_EQ(f3.mul(2, 2), 1);
    EXPECT_EQ(f3.inv(2), 2);
    EXPECT_EQ(f3.reduce(-4), 2);
    FieldPrime f7(7);
    for (int a = 1; a < 7; ++a) EXPECT_EQ(f7.mul(static_cast<Fp>(a), f7.inv(static_cast<Fp>(a))), 1);
    EXPECT_THROW(f7.inv(0), UsageError);
}

TEST(LaurentMul, CharacteristicTwoSquare) {
    LaurentPoly a = lp("1 + x^-1", 2);
    EXPECT_EQ(laurent_mul(a, a), lp("1 + x^-2", 2));
}

TEST(LaurentMul, SquareOverF3) {
    LaurentPoly a = lp("x + 1", 3);
    EXPECT_EQ(laurent_mul(a, a), lp("x^2 + 2x + 1", 3));
}

TEST(LaurentMul, FrobeniusSquareOfWideRule) {
    LaurentPoly a = lp("x^-1 + x^-3 + x^-7", 2);
    EXPECT_EQ(laurent_mul(a, a), lp("x^-2 + x^-6 + x^-14", 2));
}

TEST(LaurentMul, MismatchedPrimes) {
    EXPECT_THROW(laurent_mul(lp("x", 2), lp("x", 3)), UsageError);
}

TEST(LaurentMul, CommutativeAssociative) {
    std::mt19937 rng(12345);
    FieldPrime f5(5);
    for (int i = 0; i < 50; ++i) {
        LaurentPoly a = random_poly(rng, f5, -8, 8);
        LaurentPoly b = random_poly(rng, f5, -8, 8);
        LaurentPoly c = random_poly(rng, f5, -8, 8);
        EXPECT_EQ(laurent_mul(a, b), laurent_mul(b, a));
        EXPECT_EQ(laurent_mul(laurent_mul(a, b), c), laurent_mul(a, laurent_mul(b, c)));
    }
}

TEST(FrobeniusPower, PrimePowerDilation) {
    LaurentPoly a = lp("x + 1", 3);
    long long q = 1;
    for (int k = 0; k <= 4; ++k) {
        LaurentPoly expected(FieldPrime(3), {{static_cast<int>(q), 1}, {0, 1}});
        EXPECT_EQ(frobenius_power(a, q), expected) << "k=" << k;
        q *= 3;
    }
}

TEST(FrobeniusPower, FourTimesPowerOfThree) {
    LaurentPoly a = lp("x + 1", 3);
    long long q = 1;
    for (int k = 0; k <= 4; ++k) {
        LaurentPoly got = frobenius_power(a, 4 * q);
        LaurentPoly expected(FieldPrime(3), {{static_cast<int>(4 * q), 1},
                                             {static_cast<int>(3 * q), 1},
                                             {static_cast<int>(q), 1},
                                             {0, 1}});
        EXPECT_EQ(got, expected) << "k=" << k;
        q *= 3;
    }
}

TEST(FrobeniusPower, ZeroExponentIsOne) {
    EXPECT_EQ(frobenius_power(lp("x^2 + x", 5), 0), LaurentPoly::one(FieldPrime(5)));
}

TEST(FrobeniusPower, MatchesRepeatedMultiplication) {
    std::mt19937 rng(99);
    for (int p : {2, 3, 5}) {
        FieldPrime field(p);
        for (int trial = 0; trial < 50; ++trial) {
            LaurentPoly a = random_poly(rng, field, -5, 5);
            long long q = 1;
            LaurentPoly expected = a;
            for (int k = 0; k <= 3; ++k) {
                EXPECT_EQ(frobenius_power(a, q), expected);
                // Raise to the next power of p by p-fold multiplication.
                LaurentPoly next = LaurentPoly::one(field);
                for (int i = 0; i < p; ++i) next = laurent_mul(next, expected);
                expected = next;
                q *= p;
            }
        }
    }
}

TEST(CartierPoly, SelectsResidueClass) {
    EXPECT_EQ(cartier_poly(lp("x^2 + x + 1", 2), 0), lp("x + 1", 2));
    EXPECT_EQ(cartier_poly(lp("x^-1", 3), 2), lp("x^-1", 3));
    EXPECT_TRUE(cartier_poly(lp("x^-1", 3), 1).is_zero());
    EXPECT_THROW(cartier_poly(lp("x", 3), 3), UsageError);
}

TEST(CartierPoly, ShiftIdentity) {
    // Cartier_{2,j}(x^{-1} F) = x^{-1} Cartier_{0,j}(F) over F_3, specialized
    // to one variable.
    std::mt19937 rng(7);
    FieldPrime f3(3);
    for (int trial = 0; trial < 30; ++trial) {
        LaurentPoly f = random_poly(rng, f3, -10, 10);
        EXPECT_EQ(cartier_poly(f.shifted(-1), 2), cartier_poly(f, 0).shifted(-1));
        EXPECT_EQ(cartier_poly(f.shifted(-1), 0), cartier_poly(f, 1));
        EXPECT_EQ(cartier_poly(f.shifted(-1), 1), cartier_poly(f, 2));
    }
}

TEST(CartierPoly, Reconstruction) {
    std::mt19937 rng(2024);
    for (int p : {2, 3, 5}) {
        FieldPrime field(p);
        for (int trial = 0; trial < 40; ++trial) {
            LaurentPoly f = random_poly(rng, field, -20, 20);
            LaurentPoly sum = LaurentPoly::zero(field);
            for (int i = 0; i < p; ++i) {
                sum = sum.add(cartier_poly(f, i).dilated(p).shifted(i));
            }
            EXPECT_EQ(sum, f);
        }
    }
}

TEST(LaurentParse, RoundTrip) {
    for (const char* text : {"x + 1", "x^-1 + x^-3 + x^-7", "x^2 + 2x + 1", "2", "0",
                             "2x^14 + 1 + x^-2"}) {
        LaurentPoly f = lp(text, 3);
        EXPECT_EQ(print_laurent(f), text);
    }
    EXPECT_THROW(lp("x^", 3), UsageError);
    EXPECT_THROW(lp("", 3), UsageError);
    EXPECT_THROW(lp("y + 1", 3), UsageError);
}

TEST(GeneratingPolynomial, SignedRadii) {
    GeneratingPolynomial ledrappier(lp("1 + x^-1", 2));
    EXPECT_EQ(ledrappier.left_radius(), 0);
    EXPECT_EQ(ledrappier.right_radius(), 1);

    GeneratingPolynomial fig1(lp("x^-1 + x^-3 + x^-7", 2));
    EXPECT_EQ(fig1.left_radius(), -1);
    EXPECT_EQ(fig1.right_radius(), 7);

    GeneratingPolynomial xp1(lp("x + 1", 3));
    EXPECT_EQ(xp1.left_radius(), 1);
    EXPECT_EQ(xp1.right_radius(), 0);
    EXPECT_EQ(xp1.rule_coeff(-1), 1);
    EXPECT_EQ(xp1.rule_coeff(0), 1);

    GeneratingPolynomial norm = fig1.left_normalized();
    EXPECT_EQ(norm.left_radius(), 0);
    EXPECT_EQ(norm.right_radius(), 6);

    EXPECT_THROW(GeneratingPolynomial(LaurentPoly::zero(FieldPrime(2))), UsageError);
}

TEST(GeneratingPolynomial, ReflectSymmetry) {
    GeneratingPolynomial phi(lp("x + 1", 3));
    EXPECT_EQ(phi.reflected().poly(), lp("1 + x^-1", 3));
}
