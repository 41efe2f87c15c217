#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stda/laurent.hpp"

namespace stda {

/// A verified relation sum_{i=0}^{D} A_i(x) f(x)^{p^i} = 0 between Frobenius
/// twists of a power series, with deg A_i <= H and A_0 != 0.
struct OreRelation {
    std::vector<LaurentPoly> coeffs; // A_0 .. A_D, indexed by Frobenius degree
    int verified_precision = 0;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    std::string display() const;
};

/// Prefix (u_0 .. u_{len-1}) of a power series as raw field elements.
using SeriesPrefix = std::vector<Fp>;

/// Searches for the relation with smallest degree D', then smallest height
/// H', solvable within (max_degree, max_height); verifies it to x^precision.
/// Needs prefix length >= precision + p^max_degree * max_height. Returns
/// nullopt when no relation with A_0 != 0 exists in the search box or the
/// series prefix is identically zero.
std::optional<OreRelation> derive_ore_relation(const SeriesPrefix& f, FieldPrime field,
                                               int max_degree, int max_height, int precision);

/// One term of an annihilating polynomial in x and z: coefficient polynomial
/// times z^exponent.
struct AnnihilatorTerm {
    LaurentPoly coeff;
    long long z_exponent = 1;
};

/// True iff sum coeff_k(x) f(x)^{e_k} = 0 (mod x^precision), by truncated
/// series arithmetic. Coefficient polynomials must have nonnegative support.
bool verify_annihilator(const std::vector<AnnihilatorTerm>& terms, const SeriesPrefix& f,
                        FieldPrime field, int precision);

/// Annihilator file format ("stdann v1": p line, then "term <z-exp> <poly>").
std::vector<AnnihilatorTerm> parse_annihilator(const std::string& text, FieldPrime* field_out);
std::string print_annihilator(const std::vector<AnnihilatorTerm>& terms, FieldPrime field);

/// Truncated product of prefixes (length = min over inputs of what stays
/// exact, capped at `precision`).
SeriesPrefix prefix_mul(const SeriesPrefix& a, const SeriesPrefix& b, FieldPrime field,
                        int precision);

} // namespace stda
