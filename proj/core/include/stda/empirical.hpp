#pragma once

#include <array>
#include <memory>
#include <unordered_map>

#include "stda/initspec.hpp"
#include "stda/synthesis.hpp"

namespace stda {

/// Point access to a spacetime diagram on whatever domain the provider can
/// reach. The empirical engine only ever asks for single cells.
class DiagramOracle {
public:
    virtual ~DiagramOracle() = default;
    virtual const FieldPrime& field() const = 0;
    virtual bool valid(long long m, long long n) const = 0;
    virtual Fp at(long long m, long long n) const = 0;
};

/// A materialized window.
class GridOracle : public DiagramOracle {
public:
    explicit GridOracle(SpacetimeGrid grid) : grid_(std::move(grid)), field_(grid_.field()) {}
    const FieldPrime& field() const override { return field_; }
    bool valid(long long m, long long n) const override { return grid_.contains(m, n); }
    Fp at(long long m, long long n) const override { return grid_.at(m, n); }

private:
    SpacetimeGrid grid_;
    FieldPrime field_;
};

/// Z x N diagram evaluated pointwise: row n is phi^n applied to row 0, so a
/// cell is a sparse convolution of phi^n (cached per row) with the initial
/// condition. Row indices are capped to keep phi^n supports manageable.
class ForwardOracle : public DiagramOracle {
public:
    ForwardOracle(GeneratingPolynomial phi, InitialConditionSpec spec, long long max_n,
                  long long max_abs_m);

    const FieldPrime& field() const override { return field_; }
    bool valid(long long m, long long n) const override {
        return n >= 0 && n <= max_n_ && std::abs(m) <= max_abs_m_;
    }
    Fp at(long long m, long long n) const override;

private:
    const LaurentPoly& row_poly(long long n) const;
    Fp row0(long long m) const;

    GeneratingPolynomial phi_;
    InitialConditionSpec spec_;
    FieldPrime field_;
    long long max_n_;
    long long max_abs_m_;
    mutable std::unordered_map<long long, LaurentPoly> rows_;
    mutable std::unordered_map<long long, Fp> row0_cache_;
};

/// Z x Z diagram: forward rows pointwise, rows below zero from a
/// materialized backward-extended window.
class ZxzOracle : public DiagramOracle {
public:
    ZxzOracle(GeneratingPolynomial phi, InitialConditionSpec spec, long long max_n,
              long long max_abs_m, long long depth);

    const FieldPrime& field() const override { return upper_.field(); }
    bool valid(long long m, long long n) const override {
        return n >= 0 ? upper_.valid(m, n) : lower_.contains(m, n);
    }
    Fp at(long long m, long long n) const override {
        return n >= 0 ? upper_.at(m, n) : lower_.at(m, n);
    }

private:
    ForwardOracle upper_;
    SpacetimeGrid lower_;
};

struct EmpiricalOptions {
    int id_radius = 8;      // identification window half-side
    int min_overlap = 2;    // smallest usable comparison half-side
    int max_states = 4096;
    int max_depth = 40;     // closure depth guard
    long long verify_radius = 121;
};

struct EmpiricalResult {
    Dfao automaton; // minimized candidate
    KernelClosureReport report;
    bool verified = false;
    bool has_mismatch = false;
    long long mismatch_m = 0;
    long long mismatch_n = 0;
    long long verified_points = 0;
};

/// Kernel closure on window-truncated data. States are the dilated lattice
/// views of the diagram reached by the digit operators of the chosen axis
/// bases; two states are identified when their views agree on the common
/// valid part of the identification window. The candidate automaton is then
/// checked against the oracle over an independent window; a failed check or
/// an exhausted budget is reported loudly, never a silently wrong machine.
EmpiricalResult empirical_kernel(const DiagramOracle& oracle, std::array<AxisBase, 2> axes,
                                 const EmpiricalOptions& opt = {});

} // namespace stda
