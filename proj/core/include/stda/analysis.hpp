#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stda/dfao.hpp"
#include "stda/lca.hpp"
#include "stda/substitution.hpp"

namespace stda {

/// An occurrence of a horizontal M-th power: U_{m+i,n} = U_{m+i+period,n}
/// for 0 <= i <= (M-1)*period - 1.
struct PowerWitness {
    long long m = 0;
    long long n = 0;
    int period = 0;
    int exponent = 0; // the M that was asked for
};

/// Every witness inside the window, by direct row scans.
std::vector<PowerWitness> find_powers(const SpacetimeGrid& grid, int exponent, int max_period);

/// Automaton computing position -> value at position + c along the chosen
/// axis, built by composing with the LSD-first add-c carry transducer and
/// minimizing. On a base-p axis, positions whose shifted index would be
/// negative read as 0.
Dfao offset_automaton(const Dfao& a, long long c, int axis);

/// Exact bounded-period power decision on the automaton: for each period
/// <= max_period, intersect the equality automata of all required shifts
/// (built by doubling) and search for a reachable accepting representation.
/// Returns the first witness (smallest period, then shortest input) or
/// nullopt for a power-free verdict at these bounds. Throws BudgetError when
/// intermediate products would exceed `state_budget`.
std::optional<PowerWitness> decide_power_fixed(const Dfao& a, int exponent, int max_period,
                                               long long state_budget = 4'000'000);

struct PowerFreeCertificate {
    std::string theorem; // "bijective-substitution" or "parity-substitution"
    std::vector<std::pair<std::string, bool>> hypotheses;
    bool accepted = false;
    std::string rejection_reason;
    /// Smallest M with no M-th power of period <= 64 in the inspected
    /// prefix; empirical, not certified.
    int empirical_m = 0;
    long long scanned_prefix = 0;
    /// The theorem's exponent bound instantiated at empirical_m.
    long long bound_value = 0;
    std::string bound_expression;
};

/// Checks the hypotheses of the two power-freeness theorems:
///  - p = 3, phi = x + 1, theta primitive and bijective on F_3 with an
///    aperiodic fixed point: the diagram is (9 M)-power-free;
///  - theta the parity substitution, L = #nonzero monomials of phi not
///    divisible by p: bound max((l+r) p^2 M, ceil(p^2/(p-1) (2M-1))).
PowerFreeCertificate certify_power_free(const Substitution& theta, int seed,
                                        const GeneratingPolynomial& phi);

struct ConstantConfigEvidence {
    enum class Kind { Coincidence, UniqueLetterWord };
    Kind kind = Kind::Coincidence;
    CoincidenceWitness coincidence;  // Kind::Coincidence
    std::vector<int> word;           // Kind::UniqueLetterWord
    long long word_position = 0;
    /// Zero run predicted on the diagram for stage j: row, first column,
    /// run length.
    struct ZeroRun {
        long long row = 0;
        long long col = 0;
        long long len = 0;
    };
    ZeroRun predicted_zero_run(int j, int p) const;
};

struct ConstantConfigReport {
    bool yes = false; // criteria are sufficient, not necessary
    std::string note;
    std::vector<ConstantConfigEvidence> evidence;
};

/// Decides (one-sidedly) whether the orbit closure of the diagram contains
/// the constant zero configuration: needs sum of rule coefficients zero plus
/// either a coincidence of theta or a word with a unique letter at the
/// nonzero-coefficient positions. phi is left-normalized internally.
ConstantConfigReport detect_constant_config(const Substitution& theta, int seed,
                                            const GeneratingPolynomial& phi,
                                            long long prefix_scan = 100000);

/// Exact rational with small numerator/denominator.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);
    static Rational of(long long n) { return Rational(n, 1); }
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool is_zero() const { return num == 0; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string display() const;
};

/// Exact letter frequencies of the fixed point: the right Perron vector of
/// the incidence matrix at eigenvalue `length`, normalized to sum 1.
/// Requires a primitive substitution.
std::vector<Rational> letter_frequencies(const Substitution& theta);

/// Number of distinct width x height subwords fully inside the window.
/// Exact for the window, a lower bound for the configuration.
long long complexity(const SpacetimeGrid& grid, int width, int height);

/// Smallest (preperiod, period), ordered lexicographically, consistent with
/// the prefix; nullopt when every candidate within the bounds is violated.
std::optional<std::pair<long long, int>> eventual_period_check(const std::vector<Fp>& prefix,
                                                               int max_period,
                                                               long long max_preperiod);

/// Largest exponent e such that some w^e with |w| <= max_period occurs in
/// the word.
int max_power_exponent(const std::vector<Fp>& word, int max_period);

} // namespace stda
