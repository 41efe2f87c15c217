#include <gtest/gtest.h>

#include "stda/ore.hpp"
#include "stda/substitution.hpp"

using namespace stda;

namespace {

Substitution running_example() {
    return Substitution{FieldPrime(3), 3, 3, {{0, 0, 1}, {1, 1, 2}, {2, 2, 0}}, {0, 1, 2}};
}

/// The annihilating polynomial of the running-example series: terms in z,
/// z^3, z^9 and z^27 with the coefficient polynomials below.
std::vector<AnnihilatorTerm> running_annihilator() {
    FieldPrime f3(3);
    return {
        {parse_laurent("x^28", f3), 1},
        {parse_laurent("2x^29 + 2x^28 + 2x^27 + 2x^24 + 2x^21 + 2x^12", f3), 3},
        {parse_laurent("x^30 + 2x^27 + 2x^24 + x^21 + x^18 + x^15 + x^12 + 2x^9 + 1", f3), 9},
        {parse_laurent("2x^54 + 2x^27 + 2", f3), 27},
    };
}

} // namespace

TEST(VerifyAnnihilator, RunningExamplePolynomial) {
    SeriesPrefix f = coded_fixed_point_prefix(running_example(), 0, 1000);
    EXPECT_TRUE(verify_annihilator(running_annihilator(), f, FieldPrime(3), 1000));
}

TEST(VerifyAnnihilator, PerturbedCoefficientFails) {
    SeriesPrefix f = coded_fixed_point_prefix(running_example(), 0, 1000);
    auto terms = running_annihilator();
    terms[0].coeff = parse_laurent("2x^28", FieldPrime(3));
    EXPECT_FALSE(verify_annihilator(terms, f, FieldPrime(3), 1000));
}

TEST(VerifyAnnihilator, IdentityOnZeroSeries) {
    SeriesPrefix zero(200, 0);
    std::vector<AnnihilatorTerm> p_is_z{{LaurentPoly::one(FieldPrime(2)), 1}};
    EXPECT_TRUE(verify_annihilator(p_is_z, zero, FieldPrime(2), 200));
}

TEST(VerifyAnnihilator, InputValidation) {
    SeriesPrefix shorty(10, 0);
    std::vector<AnnihilatorTerm> terms{{LaurentPoly::one(FieldPrime(2)), 1}};
    EXPECT_THROW(verify_annihilator(terms, shorty, FieldPrime(2), 100), UsageError);
    std::vector<AnnihilatorTerm> negative{{parse_laurent("x^-1", FieldPrime(2)), 1}};
    SeriesPrefix f(100, 1);
    EXPECT_THROW(verify_annihilator(negative, f, FieldPrime(2), 100), UsageError);
}

TEST(DeriveOre, RunningExampleRelationExists) {
    SeriesPrefix f = coded_fixed_point_prefix(running_example(), 0, 1000 + 27 * 60 + 8);
    auto rel = derive_ore_relation(f, FieldPrime(3), 3, 60, 1000);
    ASSERT_TRUE(rel.has_value());
    EXPECT_FALSE(rel->coeffs[0].is_zero());
    EXPECT_EQ(rel->verified_precision, 1000);
    // Re-verify through the public checker.
    std::vector<AnnihilatorTerm> terms;
    long long z = 1;
    for (const auto& c : rel->coeffs) {
        if (!c.is_zero()) terms.push_back({c, z});
        z *= 3;
    }
    EXPECT_TRUE(verify_annihilator(terms, f, FieldPrime(3), 1000));
}

TEST(DeriveOre, GeometricSeriesOverF2) {
    // f = 1/(1+x): the all-ones series satisfies (1+x) f = 1, hence
    // (1+x) f + (1+x)^2 f^2 = 0.
    SeriesPrefix ones(600, 1);
    auto rel = derive_ore_relation(ones, FieldPrime(2), 2, 4, 200);
    ASSERT_TRUE(rel.has_value());
    EXPECT_EQ(rel->degree(), 1);
    std::vector<AnnihilatorTerm> terms;
    long long z = 1;
    for (const auto& c : rel->coeffs) {
        if (!c.is_zero()) terms.push_back({c, z});
        z *= 2;
    }
    EXPECT_TRUE(verify_annihilator(terms, ones, FieldPrime(2), 200));
}

TEST(DeriveOre, ZeroSeriesRejected) {
    SeriesPrefix zero(600, 0);
    EXPECT_FALSE(derive_ore_relation(zero, FieldPrime(2), 2, 4, 200).has_value());
}

TEST(DeriveOre, PrefixLengthChecked) {
    SeriesPrefix f(100, 1);
    EXPECT_THROW(derive_ore_relation(f, FieldPrime(2), 3, 60, 1000), UsageError);
}

TEST(AnnihilatorFile, RoundTrip) {
    FieldPrime f3(3);
    auto terms = running_annihilator();
    std::string text = print_annihilator(terms, f3);
    FieldPrime parsed(2);
    auto back = parse_annihilator(text, &parsed);
    EXPECT_EQ(parsed.p(), 3);
    ASSERT_EQ(back.size(), terms.size());
    for (size_t i = 0; i < terms.size(); ++i) {
        EXPECT_EQ(back[i].coeff, terms[i].coeff);
        EXPECT_EQ(back[i].z_exponent, terms[i].z_exponent);
    }
    EXPECT_EQ(print_annihilator(back, f3), text);
}
