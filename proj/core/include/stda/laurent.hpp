#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stda/field.hpp"

namespace stda {

/// Sparse Laurent polynomial over F_p: a finite map exponent -> nonzero
/// coefficient, kept as a vector of (exponent, coefficient) pairs sorted by
/// exponent. Equality is support-wise; no zero coefficient is ever stored.
class LaurentPoly {
public:
    using Term = std::pair<int, Fp>;

    explicit LaurentPoly(FieldPrime field) : field_(field) {}
    LaurentPoly(FieldPrime field, std::vector<Term> terms);

    static LaurentPoly zero(FieldPrime field) { return LaurentPoly(field); }
    static LaurentPoly one(FieldPrime field) { return monomial(field, 0, 1); }
    static LaurentPoly monomial(FieldPrime field, int exponent, Fp coeff);

    const FieldPrime& field() const { return field_; }
    int p() const { return field_.p(); }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    int term_count() const { return static_cast<int>(terms_.size()); }
    int min_exponent() const; // throws on zero polynomial
    int max_exponent() const; // throws on zero polynomial
    Fp coeff(int exponent) const;

    /// Sum of all coefficients, i.e. the value at x = 1.
    Fp value_at_one() const;

    LaurentPoly add(const LaurentPoly& o) const;
    LaurentPoly sub(const LaurentPoly& o) const;
    LaurentPoly scaled(Fp c) const;
    /// Multiply by x^e.
    LaurentPoly shifted(int e) const;
    /// Substitute x -> x^k (k >= 1).
    LaurentPoly dilated(int k) const;
    /// Mirror x -> x^{-1}.
    LaurentPoly reflected() const;

    bool operator==(const LaurentPoly& o) const {
        return field_ == o.field_ && terms_ == o.terms_;
    }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

private:
    FieldPrime field_;
    std::vector<Term> terms_;
};

/// Convolution product. Throws UsageError on mismatched primes.
LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b);

/// phi^n computed from the base-p digits of n: phi^n = prod (phi^{d_t})(x^{p^t}).
/// For n = p^k this dilates every exponent by p^k and keeps coefficients.
LaurentPoly frobenius_power(const LaurentPoly& phi, long long n);

/// One-dimensional Cartier operator: keeps exponents congruent to i mod p
/// (nonnegative residue) and divides them by p. Requires 0 <= i < p.
LaurentPoly cartier_poly(const LaurentPoly& f, int i);

/// Parses expressions like "x + 1", "x^-1 + x^-3 + x^-7", "2x^2 + 1".
/// Coefficients are reduced mod p. Only '+'-separated terms are accepted;
/// exponents may be negative.
LaurentPoly parse_laurent(const std::string& text, FieldPrime field);

/// Prints in the same style, terms in decreasing exponent order
/// ("x + 1", "x^-1 + x^-3 + x^-7", "0" for the zero polynomial).
std::string print_laurent(const LaurentPoly& f);

/// The local rule of a linear cellular automaton: phi(x) = a_{-l} x^l + ... +
/// a_r x^{-r}, acting on rows by (Phi u)_m = sum_i a_i u_{m+i} where a_i is
/// the coefficient of x^{-i}. The stored radii are exact: left_radius is the
/// maximum exponent and right_radius the negated minimum exponent, both with
/// nonzero coefficient. Either may be negative when the support lies strictly
/// on one side of the origin (e.g. x^-1 + x^-3 + x^-7 has left radius -1).
class GeneratingPolynomial {
public:
    explicit GeneratingPolynomial(LaurentPoly poly);

    const LaurentPoly& poly() const { return poly_; }
    const FieldPrime& field() const { return poly_.field(); }
    int p() const { return poly_.p(); }
    int left_radius() const { return left_radius_; }
    int right_radius() const { return right_radius_; }

    /// Coefficient a_i of the local rule, i.e. the coefficient of x^{-i}.
    Fp rule_coeff(int i) const { return poly_.coeff(-i); }

    /// Neighborhood width l + r + 1 of the local rule.
    int window() const { return left_radius_ + right_radius_ + 1; }

    /// The conjugate rule with generating polynomial phi(x^{-1}); evolving a
    /// reflected row with it matches reflecting the evolved row.
    GeneratingPolynomial reflected() const;

    /// x^{-l} phi(x): same coefficients, left radius 0.
    GeneratingPolynomial left_normalized() const;

private:
    LaurentPoly poly_;
    int left_radius_;
    int right_radius_;
};

} // namespace stda
