#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stda/digits.hpp"
#include "stda/field.hpp"

namespace stda {

/// Deterministic finite automaton with output over F_p. Inputs are digit
/// tuples read least significant first; outputs live on states (Moore style).
/// Axis 0 is the m coordinate, axis 1 (2-D only) the n coordinate; each axis
/// carries its own numeration tag (base p or base -p).
///
/// Transitions are a dense table: row per state, one entry per digit tuple in
/// lexicographic order, i.e. tuple (d0, d1) sits at index d0 * p + d1.
class Dfao {
public:
    Dfao(FieldPrime field, int arity, std::array<AxisBase, 2> axes);

    const FieldPrime& field() const { return field_; }
    int p() const { return field_.p(); }
    int arity() const { return arity_; }
    AxisBase axis(int i) const { return axes_[static_cast<size_t>(i)]; }
    int tuple_count() const { return tuple_count_; }
    int state_count() const { return static_cast<int>(outputs_.size()); }
    int initial() const { return initial_; }
    Fp output(int state) const { return outputs_[static_cast<size_t>(state)]; }
    int next(int state, int tuple) const {
        return transitions_[static_cast<size_t>(state) * tuple_count_ + tuple];
    }

    int add_state(Fp output);
    void set_initial(int s);
    void set_transition(int state, int tuple, int target);
    void set_output(int state, Fp value);

    int tuple_index(uint8_t d0, uint8_t d1 = 0) const {
        return arity_ == 1 ? d0 : d0 * field_.p() + d1;
    }

    /// Checks the table is total and targets are in range.
    void validate() const;

    /// Runs the automaton from `state` over a digit-tuple word (LSD first)
    /// and returns the final state.
    int run(int state, const std::vector<std::pair<uint8_t, uint8_t>>& word) const;
    int run1(int state, const std::vector<uint8_t>& word) const;

    /// Evaluates at a point: encodes each coordinate in its axis base, pads
    /// to equal length, feeds LSD first. Throws UsageError for a negative
    /// coordinate on a base-p axis.
    Fp eval(long long m) const;
    Fp eval(long long m, long long n) const;
    Fp eval_from(int state, long long m, long long n = 0) const;

    bool same_signature(const Dfao& o) const;

    bool operator==(const Dfao& o) const = default;

private:
    FieldPrime field_;
    int arity_;
    std::array<AxisBase, 2> axes_;
    int tuple_count_;
    int initial_ = 0;
    std::vector<Fp> outputs_;
    std::vector<int32_t> transitions_;
};

/// Pointwise operations for combine().
struct FieldOp {
    std::string name;
    std::function<Fp(const FieldPrime&, Fp, Fp)> apply;

    static FieldOp add();
    static FieldOp sub();
    static FieldOp mul();
    /// ca*x + cb*y
    static FieldOp linear(Fp ca, Fp cb);
    /// 1 if equal else 0
    static FieldOp equality();
    /// min(x,y) on {0,1}-valued outputs
    static FieldOp boolean_and();
};

/// Moore minimization: prune unreachable states, refine the output partition
/// by transition targets until stable, then renumber canonically by BFS from
/// the initial state over lexicographically ordered digit tuples. Two calls
/// on function-equal automata yield byte-identical results.
Dfao minimize(const Dfao& a);

/// Product construction on reachable state pairs, output = op(out_a, out_b).
/// Signatures (p, arity, axis bases) must match.
Dfao combine(const Dfao& a, const Dfao& b, const FieldOp& op);

/// Same machine re-rooted at state s, pruned to reachable states.
Dfao reroot(const Dfao& a, int s);

struct DfaoIsoReport {
    bool isomorphic = false;
    /// For isomorphic machines: canonical state index of each state of
    /// minimize(a) (identical to minimize(b)'s numbering).
    std::vector<int> witness_mapping;
    /// For distinct functions: a shortest digit-tuple word on which they
    /// differ, LSD first.
    std::vector<std::pair<uint8_t, uint8_t>> distinguishing_input;
    /// The same input decoded to a point.
    long long point_m = 0;
    long long point_n = 0;
};

/// Function equality via canonical minimized forms; on failure returns a
/// shortest distinguishing input found by BFS on the product.
DfaoIsoReport iso_check(const Dfao& a, const Dfao& b);

/// Versioned plain-text DFAO format, bit-exact round trip.
std::string print_dfao(const Dfao& a);
Dfao parse_dfao(const std::string& text);
Dfao load_dfao(const std::string& path);
void save_dfao(const Dfao& a, const std::string& path);

/// Constant automaton with one state.
Dfao constant_dfao(FieldPrime field, int arity, std::array<AxisBase, 2> axes, Fp value);

} // namespace stda
