#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stda/dfao.hpp"
#include "stda/initspec.hpp"
#include "stda/laurent.hpp"

namespace stda {

/// One atom of a kernel state: a shifted copy of a tail series of one of the
/// two base automata, or a bare monomial.
///   Right(shift, k): x^shift * f_k(x),      f_k(x) = sum_{t>=0} R_k(t) x^t
///   Left(shift, k):  x^shift * g_k(x^{-1}), g_k(y)  = sum_{t>=0} L_k(t) y^t
///   Mono(shift):     x^shift
/// where R_k / L_k evaluate the right/left base automaton from state k.
struct Atom {
    enum Kind : uint8_t { Right = 0, Left = 1, Mono = 2 };
    uint8_t kind = Right;
    int32_t shift = 0;
    int32_t state = 0;

    auto operator<=>(const Atom&) const = default;
};

/// Exact symbolic numerator of a kernel state: the diagram state it denotes
/// is g(x) / (1 - phi(x) y). Sorted by atom, no zero coefficients.
using SeriesVector = std::vector<std::pair<Atom, Fp>>;

struct KernelClosureReport {
    int states_before = 0; // closure states before minimization
    int states_after = 0;
    int closure_iterations = 0;
    std::map<int, long long> offset_histogram; // |shift| -> atom occurrences
    int max_abs_offset = 0;
};

struct SynthesizedDiagram {
    Dfao automaton; // minimized
    KernelClosureReport report;
};

/// Exact automaton synthesis for the spacetime diagram of `phi` started from
/// the bi-infinite initial condition described by (right, left, alignment).
/// Kernel states are series vectors; the transition on digit pair (i, j)
/// maps the numerator g to Cartier_i(phi^j * g), with the negative-base and
/// shear readings layered on top of that one rule.
class DiagramSynthesizer {
public:
    DiagramSynthesizer(GeneratingPolynomial phi, Dfao right_init, std::optional<Dfao> left_init,
                       Alignment alignment, int max_states = 1 << 20);

    static DiagramSynthesizer from_spec(const GeneratingPolynomial& phi,
                                        const InitialConditionSpec& spec, int max_states = 1 << 20);

    const GeneratingPolynomial& phi() const { return phi_; }

    /// [p, p] automaton: both coordinates read in base p. Evaluates the
    /// diagram on N x N (the exact N x N restriction).
    SynthesizedDiagram build_pp() const;

    /// [-p, p] automaton: m in base -p, n in base p. Evaluates the full
    /// Z x N diagram. When `reflected` is set the machine generates the
    /// mirror image (U_{-m, n}) instead.
    SynthesizedDiagram build_negp(bool reflected = false) const;

    /// [p, p] automaton of the shear V_{m,n} = U_{m - s - r n, n}.
    SynthesizedDiagram build_shear(int r, int s) const;

    /// Numerator of the initial kernel state (the whole diagram).
    const SeriesVector& initial_state() const { return initial_; }

    /// Constant term ([x^0]) of a numerator.
    Fp const_term(const SeriesVector& g) const;
    /// Coefficient of x^idx of a numerator.
    Fp value_at(const SeriesVector& g, long long idx) const;
    /// Cartier_i(phi^j * g): the [p, p] kernel transition.
    SeriesVector kernel_step(const SeriesVector& g, int i, int j) const;

private:
    SeriesVector atom_cartier(const SeriesVector& g, int i) const;
    SeriesVector mul_phi_power(const SeriesVector& g, int j) const;
    void note_offsets(const SeriesVector& g, KernelClosureReport& report) const;

    GeneratingPolynomial phi_;
    Dfao right_;
    std::optional<Dfao> left_;
    Alignment alignment_;
    int max_states_;
    int offset_abort_;
    std::vector<LaurentPoly> phi_powers_; // phi^0 .. phi^{p-1}
    SeriesVector initial_;
};

/// Convenience wrapper: synthesize the diagram automaton for an initial
/// condition spec. axes = {Neg, Pos} gives the Z x N machine, {Pos, Pos} the
/// N x N restriction.
SynthesizedDiagram build_st_automaton(const GeneratingPolynomial& phi,
                                      const InitialConditionSpec& spec,
                                      std::array<AxisBase, 2> axes, int max_states = 1 << 20);

/// Conversion of the [p, p] kernel reading to the [-p, p] reading over the
/// same closure. The synthesizer argument keeps the series backing that the
/// conversion needs; a bare Dfao does not carry it.
SynthesizedDiagram to_negp(const DiagramSynthesizer& synth);

std::string print_closure_report(const KernelClosureReport& r);

} // namespace stda
