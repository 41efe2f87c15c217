// Acceptance suite: every release gate runs here, one PASS/FAIL line each.
// Inputs are the canonical files under specs/; figure goldens live under
// tests/golden/.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "stda/analysis.hpp"
#include "stda/empirical.hpp"
#include "stda/initspec.hpp"
#include "stda/ore.hpp"
#include "stda/render.hpp"
#include "stda/synthesis.hpp"

#ifndef STDA_SPEC_DIR
#define STDA_SPEC_DIR "specs"
#endif
#ifndef STDA_GOLDEN_DIR
#define STDA_GOLDEN_DIR "tests/golden"
#endif

using namespace stda;

namespace {

struct Outcome {
    std::string name;
    bool pass = false;
    double seconds = 0;
    std::string details;
};

std::vector<Outcome> outcomes;

void run_check(const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
    Outcome o;
    o.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        auto [pass, details] = fn();
        o.pass = pass;
        o.details = details;
    } catch (const std::exception& e) {
        o.pass = false;
        o.details = std::string("exception: ") + e.what();
    }
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    outcomes.push_back(o);
    std::cout << (o.pass ? "PASS" : "FAIL") << " | " << o.name << " | " << o.details << " | "
              << o.seconds << " s" << std::endl;
}

std::string spec_path(const std::string& name) { return std::string(STDA_SPEC_DIR) + "/" + name; }
std::string golden_path(const std::string& name) {
    return std::string(STDA_GOLDEN_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

GeneratingPolynomial phi_of(const std::string& expr, int p) {
    return GeneratingPolynomial(parse_laurent(expr, FieldPrime(p)));
}

struct FigureSetup {
    std::string name;
    std::string phi;
    int p;
    std::string init_file;
};

const std::vector<FigureSetup>& figure_setups() {
    static const std::vector<FigureSetup> setups = {
        {"fig1", "x^-1 + x^-3 + x^-7", 2, "fig1.stdinit"},
        {"fig2", "x + 1 + x^-1", 2, "fig2.stdinit"},
        {"fig4", "x + 1", 3, "running.stdinit"},
        {"fig5", "x + 1", 3, "running_reflected.stdinit"},
    };
    return setups;
}

// Criterion 1: the N x N restriction minimizes to exactly 54 states.
std::pair<bool, std::string> criterion_54() {
    InitialConditionSpec spec = load_initspec(spec_path("running.stdinit"));
    SynthesizedDiagram result =
        build_st_automaton(phi_of("x + 1", 3), spec, {AxisBase::Pos, AxisBase::Pos});
    int n = result.automaton.state_count();
    return {n == 54, "states = " + std::to_string(n) + " (want 54), pre-min " +
                         std::to_string(result.report.states_before)};
}

// Criterion 2: the Z x N machine minimizes to exactly 204 states.
std::pair<bool, std::string> criterion_204() {
    InitialConditionSpec spec = load_initspec(spec_path("running.stdinit"));
    SynthesizedDiagram result =
        build_st_automaton(phi_of("x + 1", 3), spec, {AxisBase::Neg, AxisBase::Pos});
    int n = result.automaton.state_count();
    return {n == 204, "states = " + std::to_string(n) + " (want 204)"};
}

// Criterion 3: combining the two half-diagram machines gives 1908 states.
std::pair<bool, std::string> criterion_1908() {
    GeneratingPolynomial phi = phi_of("x + 1", 3);
    InitialConditionSpec right = load_initspec(spec_path("running.stdinit"));
    InitialConditionSpec both = load_initspec(spec_path("running_reflected.stdinit"));
    InitialConditionSpec left = both;
    left.right = SequenceSpec::zero();

    Dfao m_right = build_st_automaton(phi, right, {AxisBase::Neg, AxisBase::Pos}).automaton;
    Dfao m_left = build_st_automaton(phi, left, {AxisBase::Neg, AxisBase::Pos}).automaton;
    Dfao sum = minimize(combine(m_right, m_left, FieldOp::add()));
    int n = sum.state_count();
    if (n == 1908) {
        return {true, "states = 1908 (halves " + std::to_string(m_right.state_count()) + " + " +
                          std::to_string(m_left.state_count()) + ")"};
    }
    // Deviation: report a distinguishing input against the direct synthesis
    // and a grid cross-check before failing.
    Dfao direct = build_st_automaton(phi, both, {AxisBase::Neg, AxisBase::Pos}).automaton;
    DfaoIsoReport iso = iso_check(sum, direct);
    SpacetimeGrid g = generate_grid(phi, both, -60, 60, 0, 40);
    long long bad_m = 0, bad_n = 0;
    bool grid_ok = true;
    for (long long nn = 0; nn <= 40 && grid_ok; ++nn) {
        for (long long mm = -60; mm <= 60; ++mm) {
            if (sum.eval(mm, nn) != g.at(mm, nn)) {
                grid_ok = false;
                bad_m = mm;
                bad_n = nn;
                break;
            }
        }
    }
    std::ostringstream details;
    details << "states = " << n << " (want 1908); iso_with_direct = "
            << (iso.isomorphic ? "yes" : "no");
    if (!iso.isomorphic) details << ", distinguishing point (" << iso.point_m << "," << iso.point_n << ")";
    details << "; grid cross-check " << (grid_ok ? "clean" : "mismatch") ;
    if (!grid_ok) details << " at (" << bad_m << "," << bad_n << ")";
    return {false, details.str()};
}

// Criterion 4: the reference annihilating polynomial kills the series.
std::pair<bool, std::string> criterion_annihilator() {
    FieldPrime field(2);
    auto terms = parse_annihilator(read_file(spec_path("annihilator_p3.stdann")), &field);
    InitialConditionSpec spec = load_initspec(spec_path("running.stdinit"));
    SeriesPrefix f = spec.right.prefix(field, 1000);
    bool ok = verify_annihilator(terms, f, field, 1000);
    return {ok, ok ? "all residue coefficients vanish to x^1000" : "nonzero residue found"};
}

// Criterion 5: negative-base numeration round trips and reference digits.
std::pair<bool, std::string> criterion_numeration() {
    if (encode_base(10, -2).msd_string() != "11110") return {false, "encode(10, -2) wrong"};
    if (encode_base(-9, -2).msd_string() != "1011") return {false, "encode(-9, -2) wrong"};
    long long checked = 0;
    for (int p : {2, 3, 5}) {
        for (int base : {p, -p}) {
            for (long long m = -1000000; m <= 1000000; ++m) {
                if (base > 0 && m < 0) continue;
                if (decode_base(encode_base(m, base)) != m) {
                    return {false, "round trip failed at m = " + std::to_string(m) +
                                       " base " + std::to_string(base)};
                }
                ++checked;
            }
        }
    }
    return {true, "reference digits match; " + std::to_string(checked) + " round trips exact"};
}

// Criterion 6: synthesized automata agree with the brute-force grids.
std::pair<bool, std::string> criterion_oracle_equivalence() {
    long long points = 0;
    for (const FigureSetup& fig : figure_setups()) {
        GeneratingPolynomial phi = phi_of(fig.phi, fig.p);
        InitialConditionSpec spec = load_initspec(spec_path(fig.init_file));
        Dfao a = build_st_automaton(phi, spec, {AxisBase::Neg, AxisBase::Pos}).automaton;
        SpacetimeGrid g = generate_grid(phi, spec, -200, 200, 0, 120);
        for (long long n = 0; n <= 120; ++n) {
            for (long long m = -200; m <= 200; ++m) {
                if (a.eval(m, n) != g.at(m, n)) {
                    return {false, fig.name + " mismatch at (" + std::to_string(m) + "," +
                                       std::to_string(n) + ")"};
                }
                ++points;
            }
        }
    }
    return {true, std::to_string(points) + " points, zero mismatches across 4 setups"};
}

// Criterion 7: the block identities of the running substitution, k <= 7.
std::pair<bool, std::string> criterion_identities() {
    int seed = 0;
    Substitution theta = parse_substitution(read_file(spec_path("running.stdsubst")), &seed);
    for (int k = 1; k <= 7; ++k) {
        Substitution pw = theta.power(k);
        const auto& w0 = pw.images[0];
        const auto& w1 = pw.images[1];
        const auto& w2 = pw.images[2];
        for (size_t i = 0; i < w0.size(); ++i) {
            bool ok = (w0[i] + w1[i] + w2[i]) % 3 == 0 && (2 * w0[i] + w1[i]) % 3 == 1 &&
                      (2 * w1[i] + w2[i]) % 3 == 1 && (2 * w2[i] + w0[i]) % 3 == 1;
            if (!ok) return {false, "identity fails at k = " + std::to_string(k)};
        }
    }
    return {true, "block sums exact for k <= 7 (words up to 3^7)"};
}

// Criterion 8: coincidence witness and the predicted zero run on the grid.
std::pair<bool, std::string> criterion_coincidence() {
    int seed = 0;
    Substitution theta = parse_substitution(read_file(spec_path("coincidence4.stdsubst")), &seed);
    CoincidenceResult coin = has_coincidence(theta, 16);
    if (!coin.witness || coin.witness->depth != 4 || coin.witness->column_index != 4) {
        return {false, "expected coincidence at depth 4, column index 4"};
    }
    GeneratingPolynomial phi = phi_of("1 + x^-1", 2);
    ConstantConfigReport report = detect_constant_config(theta, seed, phi);
    if (!report.yes) return {false, "detect_constant_config did not answer yes"};

    InitialConditionSpec spec = load_initspec(spec_path("coincidence4.stdinit"));
    SpacetimeGrid g = generate_grid(phi, spec, -255, 255, 0, 255);
    for (const auto& ev : report.evidence) {
        if (ev.kind != ConstantConfigEvidence::Kind::UniqueLetterWord) continue;
        auto run = ev.predicted_zero_run(4, 2);
        if (run.row > g.n1() || run.col < g.m0() || run.col + run.len - 1 > g.m1()) {
            return {false, "predicted run leaves the 511 x 256 window"};
        }
        long long observed = 0;
        for (long long m = run.col; m < run.col + run.len; ++m) {
            if (g.at(m, run.row) != 0) break;
            ++observed;
        }
        if (observed < 16) {
            return {false, "zero run at predicted row " + std::to_string(run.row) +
                               " only " + std::to_string(observed) + " long"};
        }
        return {true, "witness depth 4 column 5 (1-based); zero run of " +
                          std::to_string(observed) + " >= 16 at row " + std::to_string(run.row)};
    }
    return {false, "no unique-letter-word evidence to predict a row"};
}

// Criterion 9: automaton power decision and grid scan never disagree.
std::pair<bool, std::string> criterion_power_cross_validation() {
    InitialConditionSpec spec = load_initspec(spec_path("running.stdinit"));
    GeneratingPolynomial phi = phi_of("x + 1", 3);
    Dfao a = build_st_automaton(phi, spec, {AxisBase::Pos, AxisBase::Pos}).automaton;
    SpacetimeGrid g = generate_grid(phi, spec, 0, 6560, 0, 121);
    int decided = 0;
    for (int M = 2; M <= 4; ++M) {
        auto scan = find_powers(g, M, 9);
        for (int ell = 1; ell <= 9; ++ell) {
            auto verdict = decide_power_fixed(a, M, ell);
            bool scan_hit = false;
            for (const auto& w : scan) {
                if (w.period <= ell) scan_hit = true;
            }
            if (!verdict && scan_hit) {
                return {false, "scan found a power the decision missed (M=" + std::to_string(M) +
                                   ", l<=" + std::to_string(ell) + ")"};
            }
            if (verdict) {
                // The witness must be genuine.
                for (int i = 0; i < (M - 1) * verdict->period; ++i) {
                    if (a.eval(verdict->m + i, verdict->n) !=
                        a.eval(verdict->m + i + verdict->period, verdict->n)) {
                        return {false, "decision produced a bogus witness"};
                    }
                }
            }
            ++decided;
        }
    }
    // Thue-Morse row: 3-power-free for l <= 8, matching a 100000-cell scan.
    Substitution tm = parse_substitution(read_file(spec_path("thue_morse.stdsubst")));
    Dfao tma = subst_to_dfao(tm, 0);
    if (decide_power_fixed(tma, 3, 8).has_value()) {
        return {false, "Thue-Morse automaton wrongly has a cube"};
    }
    std::vector<Fp> word = coded_fixed_point_prefix(tm, 0, 100000);
    SpacetimeGrid row(FieldPrime(2), 0, static_cast<long long>(word.size()) - 1, 0, 0);
    for (size_t i = 0; i < word.size(); ++i) row.set(static_cast<long long>(i), 0, word[i]);
    if (!find_powers(row, 3, 8).empty()) {
        return {false, "Thue-Morse scan found a cube"};
    }
    return {true, std::to_string(decided) + " (M, l) pairs cross-validated; Thue-Morse cube-free"};
}

// Criterion 10: certificates issued and refused exactly per hypotheses.
std::pair<bool, std::string> criterion_certificates() {
    int seed = 0;
    Substitution running = parse_substitution(read_file(spec_path("running.stdsubst")), &seed);
    PowerFreeCertificate c1 = certify_power_free(running, seed, phi_of("x + 1", 3));
    if (!c1.accepted || c1.theorem != "bijective-substitution" || c1.bound_value != 9 * c1.empirical_m) {
        return {false, "running-example certificate not issued as expected"};
    }
    Substitution parity3 = parse_substitution(read_file(spec_path("parity3.stdsubst")), &seed);
    PowerFreeCertificate c2 = certify_power_free(parity3, 0, phi_of("1 + x^-1", 3));
    long long M = c2.empirical_m;
    long long want = std::max<long long>(9 * M, (9 * (2 * M - 1) + 1) / 2);
    if (!c2.accepted || c2.theorem != "parity-substitution" || c2.bound_value != want) {
        return {false, "parity p=3 certificate not issued as expected"};
    }
    Substitution parity2 = parse_substitution(read_file(spec_path("parity2.stdsubst")), &seed);
    PowerFreeCertificate c3 = certify_power_free(parity2, 0, phi_of("1 + x^-1", 2));
    if (c3.accepted) return {false, "parity p=2 with L=2 must be rejected (p divides L)"};
    return {true, "issued 9M and max((l+r)p^2M, ceil(p^2/(p-1)(2M-1))) certificates; rejected p | L"};
}

// Criterion 11: exact frequencies, plus the empirical tolerance as stated.
std::pair<bool, std::string> criterion_frequencies() {
    Substitution running = parse_substitution(read_file(spec_path("running.stdsubst")));
    auto freq = letter_frequencies(running);
    bool exact = freq.size() == 3;
    for (const auto& f : freq) exact = exact && f == Rational(1, 3);
    auto prefix = fixed_point_prefix(running, 0, 1000000);
    std::vector<long long> counts(3, 0);
    for (int a : prefix) ++counts[static_cast<size_t>(a)];
    double tv = 0;
    for (int a = 0; a < 3; ++a) {
        tv += std::abs(static_cast<double>(counts[static_cast<size_t>(a)]) / 1e6 - 1.0 / 3.0);
    }
    tv /= 2;
    bool empirical = tv <= 1e-3;
    std::ostringstream details;
    details << "exact (1/3,1/3,1/3): " << (exact ? "ok" : "WRONG") << "; TV at 10^6 = " << tv
            << (empirical ? " <= 1e-3" : " > 1e-3 (known tolerance defect: counts 334443/332811/332746"
                                         " put the distance 11% above the gate; see decisions ledger)");
    return {exact && empirical, details.str()};
}

// Criterion 12: window complexity growth stays quadratic in shape.
std::pair<bool, std::string> criterion_complexity() {
    InitialConditionSpec spec = load_initspec(spec_path("running.stdinit"));
    SpacetimeGrid g = generate_grid(phi_of("x + 1", 3), spec, 0, 660, 0, 160);
    std::ostringstream details;
    double min_ratio = 1e300, max_ratio = 0;
    long long prev = -1;
    bool monotone = true;
    details << "c(m,m):";
    for (int m : {4, 8, 16, 32, 64}) {
        long long c = complexity(g, m, m);
        details << " " << m << "->" << c;
        if (c < prev) monotone = false;
        prev = c;
        double ratio = static_cast<double>(c) / (static_cast<double>(m) * m);
        min_ratio = std::min(min_ratio, ratio);
        max_ratio = std::max(max_ratio, ratio);
    }
    details << "; K = " << max_ratio << ", spread = " << max_ratio / min_ratio;
    bool quadratic = max_ratio <= 2.0 * min_ratio;
    if (!monotone) details << "; NOT monotone";
    if (!quadratic) details << "; growth exceeds the quadratic fit by over 2x";
    return {monotone && quadratic, details.str()};
}

// Criterion 13: figure renders at caption dimensions, byte-stable goldens.
std::pair<bool, std::string> criterion_figures() {
    struct Fig {
        std::string name;
        std::string phi;
        int p;
        std::string init;
        long long m0, m1, n0, n1;
        std::string format;
    };
    const std::vector<Fig> figs = {
        {"fig1", "x^-1 + x^-3 + x^-7", 2, "fig1.stdinit", -255, 255, 0, 255, "pbm"},
        {"fig2", "x + 1 + x^-1", 2, "fig2.stdinit", -255, 255, 0, 255, "pbm"},
        {"fig4", "x + 1", 3, "running.stdinit", 0, 510, 0, 255, "pgm"},
        {"fig5", "x + 1", 3, "running_reflected.stdinit", -255, 255, 0, 255, "pgm"},
        {"fig6", "1 + x^-1", 2, "fig6.stdinit", -255, 255, -255, 255, "pbm"},
    };
    for (const Fig& fig : figs) {
        GeneratingPolynomial phi = phi_of(fig.phi, fig.p);
        InitialConditionSpec spec = load_initspec(spec_path(fig.init));
        SpacetimeGrid grid = fig.n0 < 0 ? generate_grid_zxz(phi, spec, fig.m0, fig.m1, fig.n0, fig.n1)
                                        : generate_grid(phi, spec, fig.m0, fig.m1, fig.n0, fig.n1);
        std::string once = fig.format == "pbm" ? render_pbm(grid) : render_pgm(grid);
        std::string twice = fig.format == "pbm" ? render_pbm(grid) : render_pgm(grid);
        if (once != twice) return {false, fig.name + " render is not byte-stable"};
        std::string golden = read_file(golden_path(fig.name + "." + fig.format));
        if (once != golden) return {false, fig.name + " differs from its golden file"};
        // The image parses back to the exact grid.
        SpacetimeGrid back = fig.format == "pbm" ? parse_pbm(once) : parse_pgm(once, fig.p);
        if (back.cells() != grid.cells()) return {false, fig.name + " does not parse back exactly"};
    }
    return {true, "5 figures at caption dimensions, byte-identical to goldens, exact round trips"};
}

bool enforce_runtime(const char* what, double limit) {
    const Outcome& o = outcomes.back();
    if (o.pass && o.seconds > limit) {
        outcomes.back().pass = false;
        outcomes.back().details += " [exceeded " + std::string(what) + " runtime limit]";
        std::cout << "FAIL | " << o.name << " | runtime " << o.seconds << " s > " << limit
                  << " s" << std::endl;
        return false;
    }
    return true;
}

} // namespace

int main() {
    std::cout << "stda acceptance suite" << std::endl;

    run_check("criterion 01: 54-state base-p restriction", criterion_54);
    enforce_runtime("60 s", 60.0);
    run_check("criterion 02: 204-state negative-base machine", criterion_204);
    enforce_runtime("120 s", 120.0);
    run_check("criterion 03: 1908-state combined machine", criterion_1908);
    enforce_runtime("600 s", 600.0);
    run_check("criterion 04: annihilator check to x^1000", criterion_annihilator);
    enforce_runtime("10 s", 10.0);
    run_check("criterion 05: negative-base numeration", criterion_numeration);
    run_check("criterion 06: oracle equivalence on [-200,200]x[0,120]", criterion_oracle_equivalence);
    run_check("criterion 07: block identity suite k <= 7", criterion_identities);
    run_check("criterion 08: coincidence and predicted zero run", criterion_coincidence);
    run_check("criterion 09: power-freeness cross-validation", criterion_power_cross_validation);
    run_check("criterion 10: certificates", criterion_certificates);
    run_check("criterion 11: letter frequencies", criterion_frequencies);
    run_check("criterion 12: quadratic complexity shape", criterion_complexity);
    run_check("criterion 13: figure reproduction against goldens", criterion_figures);

    int failed = 0;
    for (const Outcome& o : outcomes) failed += o.pass ? 0 : 1;
    std::cout << "summary: " << (outcomes.size() - static_cast<size_t>(failed)) << "/"
              << outcomes.size() << " criteria passed" << std::endl;
    return failed;
}
