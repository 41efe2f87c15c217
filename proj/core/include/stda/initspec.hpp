#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stda/dfao.hpp"
#include "stda/lca.hpp"
#include "stda/substitution.hpp"

namespace stda {

/// A one-sided sequence (v_k)_{k >= 0}: identically zero, a coded
/// substitution fixed point, or an explicit base-p DFAO.
struct SequenceSpec {
    enum class Kind { Zero, Subst, Dfao };

    Kind kind = Kind::Zero;
    std::optional<Substitution> subst;
    int seed = 0;
    std::shared_ptr<Dfao> dfao; // 1-D, base-p axis

    bool is_zero() const { return kind == Kind::Zero; }
    Fp at(const FieldPrime& field, long long k) const;
    std::vector<Fp> prefix(const FieldPrime& field, size_t n) const;
    /// Exact base-p DFAO for the sequence (substitutions must have length p).
    Dfao to_dfao(const FieldPrime& field) const;

    static SequenceSpec zero() { return SequenceSpec{}; }
    static SequenceSpec substitution(Substitution s, int seed);
    static SequenceSpec automaton(Dfao a);
};

/// How the [left] section addresses negative positions:
///   reflect:  u_{-k} = left(k) for k >= 0 (left(0) must match right(0)),
///   adjacent: u_{-k-1} = left(k) for k >= 0.
enum class Alignment { Reflect, Adjacent };

/// A bi-infinite initial condition plus, for diagrams extended backward in
/// time, one boundary column per offset in a contiguous block of l + r
/// columns: columns[i] holds U_{offset, -k} = col(k) for k >= 1.
struct InitialConditionSpec {
    int p = 2;
    Alignment alignment = Alignment::Reflect;
    SequenceSpec right;
    SequenceSpec left;
    std::map<long long, SequenceSpec> columns; // keyed by column offset

    FieldPrime field() const { return FieldPrime(p); }

    /// Row-0 value at any integer position.
    Fp row0_at(long long m) const;
    Row row0_window(long long a, long long b) const;

    /// Checks the reflect-alignment overlap constraint.
    void validate() const;
};

/// Init-spec file format ("stdinit v1"), sections [right], [left],
/// [column <offset>].
InitialConditionSpec parse_initspec(const std::string& text);
std::string print_initspec(const InitialConditionSpec& spec);
InitialConditionSpec load_initspec(const std::string& path);

/// Exact forward spacetime window: row 0 from the spec, each later row by
/// the local rule on a sufficiently widened base row. Requires n0 >= 0.
SpacetimeGrid generate_grid(const GeneratingPolynomial& phi, const InitialConditionSpec& spec,
                            long long m0, long long m1, long long n0, long long n1);

/// Z x Z window: rows above 0 as in generate_grid, rows below 0 by repeated
/// backward extension seeded from the spec's boundary columns.
SpacetimeGrid generate_grid_zxz(const GeneratingPolynomial& phi, const InitialConditionSpec& spec,
                                long long m0, long long m1, long long n0, long long n1);

} // namespace stda
