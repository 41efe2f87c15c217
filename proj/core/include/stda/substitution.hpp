#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stda/dfao.hpp"
#include "stda/field.hpp"

namespace stda {

/// Constant-length substitution theta: every letter maps to a word of the
/// same length, together with a coding into F_p. Letters are 0..alphabet-1.
/// The length is normally the field's p; powers theta^k (length p^k) are
/// represented by the same type.
struct Substitution {
    FieldPrime field;
    int alphabet = 0;
    int length = 0;
    std::vector<std::vector<int>> images; // letter -> word
    std::vector<Fp> coding;               // letter -> field element

    void validate() const;
    int column(int j, int letter) const { return images[static_cast<size_t>(letter)][static_cast<size_t>(j)]; }

    bool coding_is_identity() const;

    /// theta^k as a substitution of length length^k.
    Substitution power(int k) const;
    /// Images reversed letterwise; generates left-infinite fixed points read
    /// outward from the seam.
    Substitution reversed() const;
};

/// Two-dimensional substitution: letter -> q x q block. block[i][j] is the
/// letter at m-digit i and n-digit j.
struct Substitution2D {
    FieldPrime field;
    int alphabet = 0;
    int length = 0;
    std::vector<std::vector<std::vector<int>>> images; // letter -> block[i][j]
    std::vector<Fp> coding;

    void validate() const;
};

struct CoincidenceWitness {
    int depth = 0;                       // k >= 1
    std::vector<uint8_t> column_digits;  // MSD first, length = depth
    long long column_index = 0;          // value of the digits in base length
    int surviving_letter = 0;
};

struct CoincidenceResult {
    std::optional<CoincidenceWitness> witness;
    /// True when the reachable family of image sets saturated without any
    /// singleton, i.e. no coincidence exists at any depth.
    bool definitive_none = false;
};

struct IncidenceMatrix {
    int alphabet = 0;
    std::vector<std::vector<long long>> counts; // counts[a][b] = #occurrences of a in theta(b)
};

/// First N letters of theta^inf(a). Requires theta_0(a) = a; a violating
/// seed raises UsageError naming the letter.
std::vector<int> fixed_point_prefix(const Substitution& theta, int seed, size_t n);

/// Coded prefix tau(theta^inf(a)) as field elements.
std::vector<Fp> coded_fixed_point_prefix(const Substitution& theta, int seed, size_t n);

/// Exact DFAO for the coded fixed point; states are the reachable self-maps
/// of the alphabet under h -> h . theta_j (digits LSD first), minimized.
/// Requires length == p.
Dfao subst_to_dfao(const Substitution& theta, int seed);

struct Cobham1D {
    Substitution theta;
    int seed = 0;
};
struct Cobham2D {
    Substitution2D theta;
    int seed = 0;
};

/// Inverse Cobham direction: letters are the states of the reversal (MSD
/// first) construction on the minimized automaton, plus a fresh seed letter
/// fixed by digit 0 when needed. Base-p axes only.
Cobham1D dfao_to_subst_1d(const Dfao& a);
Cobham2D dfao_to_subst_2d(const Dfao& a);

/// Fixed-point block of a 2-D substitution: values Q[m][n] for m, n < size.
/// Requires Theta(seed)[0][0] == seed.
std::vector<std::vector<int>> fixed_point_block(const Substitution2D& theta, int seed, size_t size);

/// Every column map is a permutation of the alphabet (alphabet must be F_p).
bool is_bijective(const Substitution& theta);

/// Some power of the incidence matrix is entrywise positive (Wielandt
/// exponent, <= 2 A^2).
bool is_primitive(const Substitution& theta);

/// BFS over image sets theta_j(S) from the full alphabet; shallowest witness
/// with lexicographically least column index. max_depth only limits
/// reporting: the set family is finite, so absence is always definitive when
/// the search saturates.
CoincidenceResult has_coincidence(const Substitution& theta, int max_depth);

IncidenceMatrix incidence_matrix(const Substitution& theta);

/// theta(a) = W + a with W = 01...(p-1); its fixed point at 0 is the base-p
/// digit-sum sequence.
Substitution parity_substitution(FieldPrime field);

/// Substitution file format (versioned plain text). The optional seed line
/// names the letter whose fixed point is meant.
std::string print_substitution(const Substitution& s, int seed = -1);
Substitution parse_substitution(const std::string& text, int* seed_out = nullptr);
std::string print_substitution2d(const Substitution2D& s, int seed = -1);
Substitution2D parse_substitution2d(const std::string& text, int* seed_out = nullptr);

} // namespace stda
