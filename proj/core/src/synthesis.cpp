#include "stda/synthesis.hpp"

#include <sstream>

namespace stda {

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int mod_pos(long long a, int p) {
    int r = static_cast<int>(a % p);
    return r < 0 ? r + p : r;
}

bool identically_zero(const Dfao& a) {
    for (int s = 0; s < a.state_count(); ++s) {
        if (a.output(s) != 0) return false;
    }
    return true;
}

void accumulate(std::map<Atom, int>& acc, Atom atom, int coeff) { acc[atom] += coeff; }

SeriesVector finish(const std::map<Atom, int>& acc, const FieldPrime& field) {
    SeriesVector out;
    out.reserve(acc.size());
    for (const auto& [atom, c] : acc) {
        Fp r = field.reduce(c);
        if (r != 0) out.emplace_back(atom, r);
    }
    return out;
}

} // namespace

DiagramSynthesizer::DiagramSynthesizer(GeneratingPolynomial phi, Dfao right_init,
                                       std::optional<Dfao> left_init, Alignment alignment,
                                       int max_states)
    : phi_(std::move(phi)),
      right_(minimize(right_init)),
      alignment_(alignment),
      max_states_(max_states) {
    const FieldPrime& field = phi_.field();
    if (right_.p() != field.p()) throw UsageError("initial condition and rule use different primes");
    if (right_.arity() != 1 || right_.axis(0) != AxisBase::Pos) {
        throw UsageError("base automata must be 1-D over base p");
    }
    if (left_init) {
        left_ = minimize(*left_init);
        if (left_->p() != field.p() || left_->arity() != 1 || left_->axis(0) != AxisBase::Pos) {
            throw UsageError("base automata must be 1-D over base p");
        }
    }
    const int p = field.p();
    phi_powers_.reserve(static_cast<size_t>(p));
    phi_powers_.push_back(LaurentPoly::one(field));
    for (int j = 1; j < p; ++j) phi_powers_.push_back(laurent_mul(phi_powers_.back(), phi_.poly()));
    offset_abort_ = 4 * (std::max(std::abs(phi_.left_radius()), std::abs(phi_.right_radius())) + 2) + 8;

    // Numerator of the whole diagram: right tail, plus the left tail laid out
    // by the alignment, minus the doubly counted origin for reflect.
    std::map<Atom, int> acc;
    const bool right_zero = identically_zero(right_);
    const bool left_zero = !left_ || identically_zero(*left_);
    if (!right_zero) accumulate(acc, Atom{Atom::Right, 0, right_.initial()}, 1);
    if (!left_zero) {
        Fp u0_right = right_.output(right_.initial());
        if (alignment_ == Alignment::Reflect) {
            Fp u0_left = left_->output(left_->initial());
            if (u0_left != u0_right) {
                throw UsageError("inconsistent u_0: reflect alignment needs matching halves");
            }
            accumulate(acc, Atom{Atom::Left, 0, left_->initial()}, 1);
            accumulate(acc, Atom{Atom::Mono, 0, 0}, -static_cast<int>(u0_left));
        } else {
            accumulate(acc, Atom{Atom::Left, -1, left_->initial()}, 1);
        }
    }
    initial_ = finish(acc, field);
}

DiagramSynthesizer DiagramSynthesizer::from_spec(const GeneratingPolynomial& phi,
                                                 const InitialConditionSpec& spec, int max_states) {
    spec.validate();
    FieldPrime field = spec.field();
    Dfao right = spec.right.to_dfao(field);
    std::optional<Dfao> left;
    if (!spec.left.is_zero()) left = spec.left.to_dfao(field);
    return DiagramSynthesizer(phi, std::move(right), std::move(left), spec.alignment, max_states);
}

Fp DiagramSynthesizer::const_term(const SeriesVector& g) const { return value_at(g, 0); }

Fp DiagramSynthesizer::value_at(const SeriesVector& g, long long idx) const {
    const FieldPrime& field = phi_.field();
    long long acc = 0;
    for (const auto& [atom, coeff] : g) {
        Fp v = 0;
        switch (atom.kind) {
            case Atom::Right:
                if (idx >= atom.shift) v = right_.eval_from(atom.state, idx - atom.shift);
                break;
            case Atom::Left:
                if (idx <= atom.shift) v = left_->eval_from(atom.state, atom.shift - idx);
                break;
            case Atom::Mono:
                v = idx == atom.shift ? 1 : 0;
                break;
        }
        acc += static_cast<long long>(coeff) * v;
    }
    return field.reduce(acc);
}

SeriesVector DiagramSynthesizer::mul_phi_power(const SeriesVector& g, int j) const {
    const FieldPrime& field = phi_.field();
    std::map<Atom, int> acc;
    for (const auto& [e, c] : phi_powers_[static_cast<size_t>(j)].terms()) {
        for (const auto& [atom, coeff] : g) {
            Atom shifted = atom;
            shifted.shift += e;
            accumulate(acc, shifted, static_cast<int>(field.mul(c, coeff)));
        }
    }
    return finish(acc, field);
}

SeriesVector DiagramSynthesizer::atom_cartier(const SeriesVector& g, int i) const {
    const FieldPrime& field = phi_.field();
    const int p = field.p();
    std::map<Atom, int> acc;
    for (const auto& [atom, coeff] : g) {
        switch (atom.kind) {
            case Atom::Right: {
                int digit = mod_pos(static_cast<long long>(i) - atom.shift, p);
                int shift = static_cast<int>(-floor_div(static_cast<long long>(i) - atom.shift, p));
                accumulate(acc, Atom{Atom::Right, shift, right_.next(atom.state, digit)}, coeff);
                break;
            }
            case Atom::Left: {
                int digit = mod_pos(static_cast<long long>(atom.shift) - i, p);
                int shift = static_cast<int>(floor_div(static_cast<long long>(atom.shift) - i, p));
                accumulate(acc, Atom{Atom::Left, shift, left_->next(atom.state, digit)}, coeff);
                break;
            }
            case Atom::Mono: {
                long long d = static_cast<long long>(atom.shift) - i;
                if (mod_pos(d, p) == 0) {
                    accumulate(acc, Atom{Atom::Mono, static_cast<int>(d / p), 0}, coeff);
                }
                break;
            }
        }
    }
    return finish(acc, field);
}

SeriesVector DiagramSynthesizer::kernel_step(const SeriesVector& g, int i, int j) const {
    return atom_cartier(mul_phi_power(g, j), i);
}

void DiagramSynthesizer::note_offsets(const SeriesVector& g, KernelClosureReport& report) const {
    for (const auto& [atom, coeff] : g) {
        int a = std::abs(atom.shift);
        ++report.offset_histogram[a];
        report.max_abs_offset = std::max(report.max_abs_offset, a);
        if (a > offset_abort_) {
            throw std::logic_error(
                "kernel closure produced atom offset " + std::to_string(atom.shift) +
                " beyond the certified bound " + std::to_string(offset_abort_) +
                "; the closure arithmetic is broken for this input");
        }
    }
}

namespace {

/// Tagged closure state: the tag is the flip bit of the negative-base
/// reading or the cone-shift of the shear reading; plain base-p closures
/// keep it at zero.
using TaggedState = std::pair<int, SeriesVector>;

} // namespace

SynthesizedDiagram DiagramSynthesizer::build_pp() const {
    const int p = phi_.p();
    KernelClosureReport report;
    Dfao out(phi_.field(), 2, {AxisBase::Pos, AxisBase::Pos});
    std::map<TaggedState, int> index;
    std::vector<TaggedState> states;
    auto intern = [&](TaggedState s) {
        auto [it, inserted] = index.try_emplace(s, static_cast<int>(states.size()));
        if (inserted) {
            if (static_cast<int>(states.size()) >= max_states_) {
                throw BudgetError("kernel closure exceeded the state budget");
            }
            note_offsets(s.second, report);
            out.add_state(const_term(s.second));
            states.push_back(std::move(s));
        }
        return it->second;
    };
    intern({0, initial_});
    for (size_t s = 0; s < states.size(); ++s) {
        ++report.closure_iterations;
        const SeriesVector current = states[s].second; // copy: intern() may reallocate
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) {
                SeriesVector g = kernel_step(current, i, j);
                int target = intern({0, std::move(g)});
                out.set_transition(static_cast<int>(s), out.tuple_index(static_cast<uint8_t>(i), static_cast<uint8_t>(j)), target);
            }
        }
    }
    out.set_initial(0);
    report.states_before = out.state_count();
    Dfao minimized = minimize(out);
    report.states_after = minimized.state_count();
    return {std::move(minimized), std::move(report)};
}

SynthesizedDiagram DiagramSynthesizer::build_negp(bool reflected) const {
    const int p = phi_.p();
    KernelClosureReport report;
    Dfao out(phi_.field(), 2, {AxisBase::Neg, AxisBase::Pos});
    std::map<TaggedState, int> index;
    std::vector<TaggedState> states;
    auto intern = [&](TaggedState s) {
        auto [it, inserted] = index.try_emplace(s, static_cast<int>(states.size()));
        if (inserted) {
            if (static_cast<int>(states.size()) >= max_states_) {
                throw BudgetError("kernel closure exceeded the state budget");
            }
            note_offsets(s.second, report);
            out.add_state(const_term(s.second));
            states.push_back(std::move(s));
        }
        return it->second;
    };
    auto shift_x = [](SeriesVector g, int e) {
        for (auto& [atom, coeff] : g) atom.shift += e;
        return g;
    };
    intern({reflected ? 1 : 0, initial_});
    for (size_t s = 0; s < states.size(); ++s) {
        ++report.closure_iterations;
        const auto [flip, g] = states[s]; // copy: intern() may reallocate
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) {
                TaggedState next;
                if (flip == 0) {
                    next = {1, kernel_step(g, i, j)};
                } else if (i == 0) {
                    next = {0, kernel_step(g, 0, j)};
                } else {
                    next = {0, shift_x(kernel_step(g, p - i, j), 1)};
                }
                int target = intern(std::move(next));
                out.set_transition(static_cast<int>(s), out.tuple_index(static_cast<uint8_t>(i), static_cast<uint8_t>(j)), target);
            }
        }
    }
    out.set_initial(0);
    report.states_before = out.state_count();
    Dfao minimized = minimize(out);
    report.states_after = minimized.state_count();
    return {std::move(minimized), std::move(report)};
}

SynthesizedDiagram DiagramSynthesizer::build_shear(int r, int s0) const {
    if (r < 0 || s0 < 0) throw UsageError("shear parameters must satisfy r >= 0, s >= 0");
    const int p = phi_.p();
    KernelClosureReport report;
    Dfao out(phi_.field(), 2, {AxisBase::Pos, AxisBase::Pos});
    std::map<TaggedState, int> index;
    std::vector<TaggedState> states;
    auto intern = [&](TaggedState st) {
        auto [it, inserted] = index.try_emplace(st, static_cast<int>(states.size()));
        if (inserted) {
            if (static_cast<int>(states.size()) >= max_states_) {
                throw BudgetError("kernel closure exceeded the state budget");
            }
            note_offsets(st.second, report);
            out.add_state(value_at(st.second, -st.first));
            states.push_back(std::move(st));
        }
        return it->second;
    };
    intern({s0, initial_});
    for (size_t s = 0; s < states.size(); ++s) {
        ++report.closure_iterations;
        const auto [t, g] = states[s]; // copy: intern() may reallocate
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) {
                long long d = static_cast<long long>(i) - t - static_cast<long long>(r) * j;
                int digit = mod_pos(d, p);
                int t_next = static_cast<int>(-floor_div(d, p));
                SeriesVector g_next = kernel_step(g, digit, j);
                int target = intern({t_next, std::move(g_next)});
                out.set_transition(static_cast<int>(s), out.tuple_index(static_cast<uint8_t>(i), static_cast<uint8_t>(j)), target);
            }
        }
    }
    out.set_initial(0);
    report.states_before = out.state_count();
    Dfao minimized = minimize(out);
    report.states_after = minimized.state_count();
    return {std::move(minimized), std::move(report)};
}

SynthesizedDiagram build_st_automaton(const GeneratingPolynomial& phi,
                                      const InitialConditionSpec& spec,
                                      std::array<AxisBase, 2> axes, int max_states) {
    DiagramSynthesizer synth = DiagramSynthesizer::from_spec(phi, spec, max_states);
    if (axes[0] == AxisBase::Pos && axes[1] == AxisBase::Pos) return synth.build_pp();
    if (axes[0] == AxisBase::Neg && axes[1] == AxisBase::Pos) return synth.build_negp();
    throw UsageError(
        "exact synthesis covers [p, p] and [-p, p] readings; use the empirical engine for "
        "diagrams extended backward in time");
}

SynthesizedDiagram to_negp(const DiagramSynthesizer& synth) { return synth.build_negp(); }

std::string print_closure_report(const KernelClosureReport& r) {
    std::ostringstream out;
    out << "states_before_min: " << r.states_before << "\n";
    out << "states_after_min: " << r.states_after << "\n";
    out << "closure_iterations: " << r.closure_iterations << "\n";
    out << "max_abs_offset: " << r.max_abs_offset << "\n";
    out << "offset_histogram:";
    for (const auto& [offset, count] : r.offset_histogram) {
        out << " " << offset << ":" << count;
    }
    out << "\n";
    return out.str();
}

} // namespace stda
