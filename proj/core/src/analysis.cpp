#include "stda/analysis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace stda {

std::vector<PowerWitness> find_powers(const SpacetimeGrid& grid, int exponent, int max_period) {
    if (exponent < 2) throw UsageError("power exponent must be >= 2");
    if (max_period < 1) throw UsageError("max period must be >= 1");
    std::vector<PowerWitness> out;
    const long long width = grid.width();
    for (int period = 1; period <= max_period; ++period) {
        const long long need = static_cast<long long>(exponent - 1) * period;
        if (need + period > width) break;
        for (long long n = grid.n0(); n <= grid.n1(); ++n) {
            long long run = 0;
            for (long long m = grid.m0(); m + period <= grid.m1(); ++m) {
                run = grid.at(m, n) == grid.at(m + period, n) ? run + 1 : 0;
                // Run ending at m covers starts down to m - run + 1.
                long long start = m - need + 1;
                if (run >= need) {
                    out.push_back(PowerWitness{start, n, period, exponent});
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const PowerWitness& a, const PowerWitness& b) {
        return std::tie(a.n, a.m, a.period) < std::tie(b.n, b.m, b.period);
    });
    return out;
}

namespace {

/// Carry set of the add-c transducer in the given radix: closed under
/// carry' = (digit + carry - out) / radix.
std::vector<long long> carry_closure(long long c, int radix, int p) {
    std::set<long long> carries{c};
    std::deque<long long> queue{c};
    while (!queue.empty()) {
        long long carry = queue.front();
        queue.pop_front();
        for (int d = 0; d < p; ++d) {
            long long t = d + carry;
            long long out = ((t % p) + p) % p;
            long long next = (t - out) / radix;
            if (carries.insert(next).second) {
                queue.push_back(next);
                if (carries.size() > 4096) {
                    throw std::logic_error("add-constant carry set failed to close");
                }
            }
        }
    }
    return {carries.begin(), carries.end()};
}

} // namespace

Dfao offset_automaton(const Dfao& a, long long c, int axis) {
    a.validate();
    if (axis < 0 || axis >= a.arity()) throw UsageError("offset axis out of range");
    const int p = a.p();
    const int radix = axis_radix(a.axis(axis), p);
    std::vector<long long> carries = carry_closure(c, radix, p);
    std::map<long long, int> carry_index;
    for (size_t i = 0; i < carries.size(); ++i) carry_index[carries[static_cast<size_t>(i)]] = static_cast<int>(i);

    // Flush of (state, carry): the unread high digits of position + c are
    // exactly the digits of the carry.
    auto flush_output = [&](int state, long long carry) -> Fp {
        if (carry < 0 && radix > 0) return 0; // shifted index is negative
        DigitString d = encode_base(carry, radix);
        for (uint8_t digit : d.digits) {
            int tuple = axis == 0 ? a.tuple_index(digit, 0) : a.tuple_index(0, digit);
            state = a.next(state, tuple);
        }
        return a.output(state);
    };

    Dfao out(a.field(), a.arity(), {a.axis(0), a.axis(1)});
    std::map<std::pair<int, long long>, int> index;
    std::vector<std::pair<int, long long>> states;
    auto intern = [&](int s, long long carry) {
        auto [it, inserted] = index.try_emplace({s, carry}, static_cast<int>(states.size()));
        if (inserted) {
            states.emplace_back(s, carry);
            out.add_state(flush_output(s, carry));
        }
        return it->second;
    };
    intern(a.initial(), c);
    for (size_t i = 0; i < states.size(); ++i) {
        auto [s, carry] = states[i];
        for (int t = 0; t < a.tuple_count(); ++t) {
            int d_axis = a.arity() == 1 ? t : (axis == 0 ? t / p : t % p);
            long long total = d_axis + carry;
            int digit_out = static_cast<int>(((total % p) + p) % p);
            long long carry_next = (total - digit_out) / radix;
            int tuple_out;
            if (a.arity() == 1) {
                tuple_out = digit_out;
            } else if (axis == 0) {
                tuple_out = digit_out * p + (t % p);
            } else {
                tuple_out = (t / p) * p + digit_out;
            }
            int target = intern(a.next(s, tuple_out), carry_next);
            out.set_transition(static_cast<int>(i), t, target);
        }
    }
    out.set_initial(0);
    return minimize(out);
}

namespace {

/// AND of the equality automaton over a run of `count` consecutive shifts,
/// built by doubling.
Dfao run_conjunction(const Dfao& equality, long long count, long long state_budget) {
    if (count == 1) return equality;
    long long half = count / 2;
    Dfao left = run_conjunction(equality, half, state_budget);
    Dfao shifted = offset_automaton(left, half, 0);
    if (static_cast<long long>(left.state_count()) * shifted.state_count() > state_budget) {
        throw BudgetError("power decision exceeded the state budget");
    }
    Dfao both = minimize(combine(left, shifted, FieldOp::boolean_and()));
    if (count % 2 == 1) {
        Dfao last = offset_automaton(equality, count - 1, 0);
        if (static_cast<long long>(both.state_count()) * last.state_count() > state_budget) {
            throw BudgetError("power decision exceeded the state budget");
        }
        both = minimize(combine(both, last, FieldOp::boolean_and()));
    }
    return both;
}

/// Shortest digit word reaching an accepting state; decodes it per the axes.
std::optional<PowerWitness> find_accepting(const Dfao& a, int period, int exponent) {
    struct Node {
        int state, parent, tuple;
    };
    std::vector<Node> nodes;
    std::vector<char> seen(static_cast<size_t>(a.state_count()), 0);
    nodes.push_back({a.initial(), -1, -1});
    seen[static_cast<size_t>(a.initial())] = 1;
    int found = -1;
    for (size_t i = 0; i < nodes.size() && found < 0; ++i) {
        if (a.output(nodes[i].state) != 0) {
            found = static_cast<int>(i);
            break;
        }
        for (int t = 0; t < a.tuple_count(); ++t) {
            int q = a.next(nodes[i].state, t);
            if (!seen[static_cast<size_t>(q)]) {
                seen[static_cast<size_t>(q)] = 1;
                nodes.push_back({q, static_cast<int>(i), t});
            }
        }
    }
    if (found < 0) return std::nullopt;
    std::vector<int> tuples;
    for (int i = found; nodes[static_cast<size_t>(i)].parent >= 0; i = nodes[static_cast<size_t>(i)].parent) {
        tuples.push_back(nodes[static_cast<size_t>(i)].tuple);
    }
    std::reverse(tuples.begin(), tuples.end());
    const int p = a.p();
    long long m = 0, n = 0, wm = 1, wn = 1;
    const long long rm = axis_radix(a.axis(0), p);
    const long long rn = a.arity() == 2 ? axis_radix(a.axis(1), p) : 0;
    for (int t : tuples) {
        int d0 = a.arity() == 1 ? t : t / p;
        int d1 = a.arity() == 1 ? 0 : t % p;
        m += wm * d0;
        wm *= rm;
        if (a.arity() == 2) {
            n += wn * d1;
            wn *= rn;
        }
    }
    return PowerWitness{m, n, period, exponent};
}

} // namespace

std::optional<PowerWitness> decide_power_fixed(const Dfao& a, int exponent, int max_period,
                                               long long state_budget) {
    if (exponent < 2) throw UsageError("power exponent must be >= 2");
    if (max_period < 1) throw UsageError("max period must be >= 1");
    a.validate();
    for (int period = 1; period <= max_period; ++period) {
        Dfao shifted = offset_automaton(a, period, 0);
        if (static_cast<long long>(a.state_count()) * shifted.state_count() > state_budget) {
            throw BudgetError("power decision exceeded the state budget");
        }
        Dfao equality = minimize(combine(a, shifted, FieldOp::equality()));
        long long count = static_cast<long long>(exponent - 1) * period;
        Dfao window = run_conjunction(equality, count, state_budget);
        if (auto witness = find_accepting(window, period, exponent)) return witness;
    }
    return std::nullopt;
}

int max_power_exponent(const std::vector<Fp>& word, int max_period) {
    int best = 1;
    const long long n = static_cast<long long>(word.size());
    for (int period = 1; period <= max_period; ++period) {
        long long run = 0;
        for (long long i = 0; i + period < n; ++i) {
            run = word[static_cast<size_t>(i)] == word[static_cast<size_t>(i + period)] ? run + 1 : 0;
            int exponent = static_cast<int>(run / period) + 1;
            best = std::max(best, exponent);
        }
    }
    return best;
}

PowerFreeCertificate certify_power_free(const Substitution& theta, int seed,
                                        const GeneratingPolynomial& phi) {
    theta.validate();
    const int p = phi.p();
    PowerFreeCertificate cert;
    const long long scan = 100000;
    auto prefix_or_empty = [&]() -> std::vector<Fp> {
        if (seed < 0 || seed >= theta.alphabet || theta.column(0, seed) != seed) return {};
        return coded_fixed_point_prefix(theta, seed, static_cast<size_t>(scan));
    };

    // Route 1: p = 3, phi = x + 1, primitive bijective theta.
    {
        std::vector<std::pair<std::string, bool>> hyp;
        bool p_is_3 = p == 3;
        hyp.emplace_back("p = 3", p_is_3);
        bool phi_ok = p_is_3 && phi.poly() == parse_laurent("x + 1", phi.field());
        hyp.emplace_back("phi = x + 1", phi_ok);
        bool alphabet_ok = theta.alphabet == p && theta.length == p && theta.coding_is_identity();
        hyp.emplace_back("theta maps F_p to F_p^p with identity coding", alphabet_ok);
        bool bij = alphabet_ok && is_bijective(theta);
        hyp.emplace_back("theta bijective", bij);
        bool prim = is_primitive(theta);
        hyp.emplace_back("theta primitive", prim);
        bool seed_ok = seed >= 0 && seed < theta.alphabet && theta.column(0, seed) == seed;
        bool aperiodic = false;
        if (seed_ok && alphabet_ok) {
            auto prefix = prefix_or_empty();
            aperiodic = !eventual_period_check(prefix, 200, 1000).has_value();
        }
        hyp.emplace_back("fixed point aperiodic (empirical scan)", aperiodic);
        if (p_is_3 && phi_ok && alphabet_ok && bij && prim && aperiodic) {
            cert.theorem = "bijective-substitution";
            cert.hypotheses = hyp;
            cert.accepted = true;
            auto prefix = prefix_or_empty();
            cert.empirical_m = max_power_exponent(prefix, 64) + 1;
            cert.scanned_prefix = scan;
            cert.bound_value = 9LL * cert.empirical_m;
            cert.bound_expression = "9*M";
            return cert;
        }
    }

    // Route 2: parity substitution, p not dividing the monomial count.
    {
        std::vector<std::pair<std::string, bool>> hyp;
        Substitution parity = parity_substitution(phi.field());
        bool theta_parity = theta.alphabet == parity.alphabet && theta.length == parity.length &&
                            theta.images == parity.images && theta.coding == parity.coding;
        hyp.emplace_back("theta is the parity substitution", theta_parity);
        long long L = phi.poly().term_count();
        bool l_ok = L % p != 0;
        hyp.emplace_back("p does not divide L = " + std::to_string(L), l_ok);
        cert.theorem = "parity-substitution";
        cert.hypotheses = hyp;
        if (theta_parity && l_ok) {
            cert.accepted = true;
            auto prefix = coded_fixed_point_prefix(theta, seed, static_cast<size_t>(scan));
            cert.empirical_m = max_power_exponent(prefix, 64) + 1;
            cert.scanned_prefix = scan;
            long long lr = static_cast<long long>(phi.left_radius()) + phi.right_radius();
            long long a = lr * p * p * cert.empirical_m;
            long long b = (static_cast<long long>(p) * p * (2 * cert.empirical_m - 1) + (p - 2)) / (p - 1);
            cert.bound_value = std::max(a, b);
            cert.bound_expression = "max((l+r)*p^2*M, ceil(p^2/(p-1)*(2M-1)))";
            return cert;
        }
        cert.accepted = false;
        std::ostringstream why;
        why << "hypotheses not met:";
        for (const auto& [name, ok] : cert.hypotheses) {
            if (!ok) why << " [" << name << "]";
        }
        cert.rejection_reason = why.str();
        return cert;
    }
}

ConstantConfigEvidence::ZeroRun ConstantConfigEvidence::predicted_zero_run(int j, int p) const {
    ZeroRun run;
    if (kind == Kind::Coincidence) {
        // For theta^k with a single-column coincidence at column L, row
        // q^{j+1} carries zero blocks of length q^j starting at (n q + L) q^j,
        // where q = p^k.
        long long q = 1;
        for (int t = 0; t < coincidence.depth; ++t) q *= p;
        long long qj = 1;
        for (int t = 0; t < j; ++t) qj *= q;
        run.row = qj * q;
        run.col = coincidence.column_index * qj;
        run.len = qj;
    } else {
        // Word w at position pos: row p^j carries a zero block of length p^j
        // starting at pos * p^j.
        long long pj = 1;
        for (int t = 0; t < j; ++t) pj *= p;
        run.row = pj;
        run.col = word_position * pj;
        run.len = pj;
    }
    return run;
}

ConstantConfigReport detect_constant_config(const Substitution& theta, int seed,
                                            const GeneratingPolynomial& phi,
                                            long long prefix_scan) {
    theta.validate();
    ConstantConfigReport report;
    GeneratingPolynomial psi = phi.left_normalized();
    if (phi.poly().value_at_one() != 0) {
        report.note = "sum of rule coefficients is nonzero; the zero-run construction does not apply";
        return report;
    }
    // Route A: coincidence of theta.
    CoincidenceResult coin = has_coincidence(theta, 64);
    if (coin.witness) {
        ConstantConfigEvidence ev;
        ev.kind = ConstantConfigEvidence::Kind::Coincidence;
        ev.coincidence = *coin.witness;
        report.evidence.push_back(ev);
    }
    // Route B: a word of length r+1 whose letters at the nonzero-coefficient
    // positions are all equal (left-normalized rule, offsets 0..r).
    {
        const int r = psi.right_radius();
        std::vector<int> offsets;
        for (const auto& [e, c] : psi.poly().terms()) offsets.push_back(static_cast<int>(-e));
        std::sort(offsets.begin(), offsets.end());
        std::vector<int> prefix = fixed_point_prefix(theta, seed, static_cast<size_t>(prefix_scan));
        for (long long pos = 0; pos + r < static_cast<long long>(prefix.size()); ++pos) {
            int letter = prefix[static_cast<size_t>(pos + offsets.front())];
            bool unique = true;
            for (int off : offsets) {
                if (prefix[static_cast<size_t>(pos + off)] != letter) {
                    unique = false;
                    break;
                }
            }
            if (unique) {
                ConstantConfigEvidence ev;
                ev.kind = ConstantConfigEvidence::Kind::UniqueLetterWord;
                ev.word.assign(prefix.begin() + pos, prefix.begin() + pos + r + 1);
                ev.word_position = pos;
                report.evidence.push_back(ev);
                break;
            }
        }
    }
    report.yes = !report.evidence.empty();
    if (!report.yes) {
        report.note = "no coincidence and no unique-letter word found; verdict unknown";
    }
    return report;
}

namespace {

long long gcd_ll(long long a, long long b) {
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

long long checked(__int128 v) {
    if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min()) {
        throw std::logic_error("rational arithmetic overflow");
    }
    return static_cast<long long>(v);
}

} // namespace

Rational::Rational(long long n, long long d) {
    if (d == 0) throw UsageError("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = gcd_ll(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num = n;
    den = d;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(checked(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den),
                    checked(static_cast<__int128>(den) * o.den));
}
Rational Rational::operator-(const Rational& o) const {
    return Rational(checked(static_cast<__int128>(num) * o.den - static_cast<__int128>(o.num) * den),
                    checked(static_cast<__int128>(den) * o.den));
}
Rational Rational::operator*(const Rational& o) const {
    return Rational(checked(static_cast<__int128>(num) * o.num),
                    checked(static_cast<__int128>(den) * o.den));
}
Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw UsageError("rational division by zero");
    return Rational(checked(static_cast<__int128>(num) * o.den),
                    checked(static_cast<__int128>(den) * o.num));
}

std::string Rational::display() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::vector<Rational> letter_frequencies(const Substitution& theta) {
    theta.validate();
    if (!is_primitive(theta)) {
        throw UsageError("letter_frequencies needs a primitive substitution");
    }
    const int A = theta.alphabet;
    IncidenceMatrix m = incidence_matrix(theta);
    // Solve (M - length I) v = 0 by rational elimination.
    std::vector<std::vector<Rational>> mat(static_cast<size_t>(A),
                                           std::vector<Rational>(static_cast<size_t>(A)));
    for (int i = 0; i < A; ++i) {
        for (int j = 0; j < A; ++j) {
            long long v = m.counts[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                          (i == j ? theta.length : 0);
            mat[static_cast<size_t>(i)][static_cast<size_t>(j)] = Rational::of(v);
        }
    }
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < A && row < A; ++col) {
        int sel = -1;
        for (int r = row; r < A; ++r) {
            if (!mat[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
                sel = r;
                break;
            }
        }
        if (sel < 0) continue;
        std::swap(mat[static_cast<size_t>(sel)], mat[static_cast<size_t>(row)]);
        Rational inv = Rational::of(1) / mat[static_cast<size_t>(row)][static_cast<size_t>(col)];
        for (int c = 0; c < A; ++c) mat[static_cast<size_t>(row)][static_cast<size_t>(c)] = mat[static_cast<size_t>(row)][static_cast<size_t>(c)] * inv;
        for (int r = 0; r < A; ++r) {
            if (r == row || mat[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) continue;
            Rational f = mat[static_cast<size_t>(r)][static_cast<size_t>(col)];
            for (int c = 0; c < A; ++c) {
                mat[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                    mat[static_cast<size_t>(r)][static_cast<size_t>(c)] - f * mat[static_cast<size_t>(row)][static_cast<size_t>(c)];
            }
        }
        pivot_col.push_back(col);
        ++row;
    }
    if (row != A - 1) {
        throw UsageError("Perron eigenspace is not one-dimensional; substitution not primitive?");
    }
    // Free column = the one not used as a pivot; set it to 1.
    std::vector<char> is_pivot(static_cast<size_t>(A), 0);
    for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = 1;
    int free_col = 0;
    while (is_pivot[static_cast<size_t>(free_col)]) ++free_col;
    std::vector<Rational> v(static_cast<size_t>(A), Rational::of(0));
    v[static_cast<size_t>(free_col)] = Rational::of(1);
    for (int r = 0; r < row; ++r) {
        v[static_cast<size_t>(pivot_col[static_cast<size_t>(r)])] =
            Rational::of(0) - mat[static_cast<size_t>(r)][static_cast<size_t>(free_col)];
    }
    Rational sum = Rational::of(0);
    for (const auto& x : v) sum = sum + x;
    if (sum.is_zero()) throw std::logic_error("Perron vector summed to zero");
    for (auto& x : v) x = x / sum;
    return v;
}

long long complexity(const SpacetimeGrid& grid, int width, int height) {
    if (width < 1 || height < 1) throw UsageError("block dimensions must be positive");
    if (width > grid.width() || height > grid.height()) {
        throw UsageError("complexity window smaller than the block");
    }
    std::unordered_set<std::string> blocks;
    std::string key(static_cast<size_t>(width) * static_cast<size_t>(height), '\0');
    for (long long n = grid.n0(); n + height - 1 <= grid.n1(); ++n) {
        for (long long m = grid.m0(); m + width - 1 <= grid.m1(); ++m) {
            size_t k = 0;
            for (int dn = 0; dn < height; ++dn) {
                for (int dm = 0; dm < width; ++dm) {
                    key[k++] = static_cast<char>(grid.at(m + dm, n + dn));
                }
            }
            blocks.insert(key);
        }
    }
    return static_cast<long long>(blocks.size());
}

std::optional<std::pair<long long, int>> eventual_period_check(const std::vector<Fp>& prefix,
                                                               int max_period,
                                                               long long max_preperiod) {
    if (static_cast<long long>(prefix.size()) <= max_preperiod + 2LL * max_period) {
        throw UsageError("prefix too short for the requested period bounds");
    }
    std::optional<std::pair<long long, int>> best;
    for (int k = 1; k <= max_period; ++k) {
        long long last_violation = -1;
        for (long long i = 0; i + k < static_cast<long long>(prefix.size()); ++i) {
            if (prefix[static_cast<size_t>(i)] != prefix[static_cast<size_t>(i + k)]) last_violation = i;
        }
        long long preperiod = last_violation + 1;
        if (preperiod <= max_preperiod) {
            std::pair<long long, int> cand{preperiod, k};
            if (!best || cand < *best) best = cand;
        }
    }
    return best;
}

} // namespace stda
