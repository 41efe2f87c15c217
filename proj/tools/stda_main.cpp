// stda: synthesize, transform, and analyze automata for spacetime diagrams
// of linear cellular automata over small prime fields.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "stda/analysis.hpp"
#include "stda/empirical.hpp"
#include "stda/initspec.hpp"
#include "stda/ore.hpp"
#include "stda/render.hpp"
#include "stda/synthesis.hpp"
#include "stda/version.hpp"

using namespace stda;

namespace {

struct GlobalOptions {
    int p = 0;
    std::string seed_spec;
    std::string out_dir;
    long long budget_states = 1 << 20;
    long long verify_window = 121;
};

std::string resolve(const GlobalOptions& g, const std::string& path) {
    if (g.out_dir.empty() || path.empty()) return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(g.out_dir) / p).string();
}

/// Reproducibility block: tool version plus a config echo, written at the
/// top of every report. No timestamps, so identical runs emit identical
/// bytes.
std::string repro_block(const std::string& command,
                        const std::vector<std::pair<std::string, std::string>>& config) {
    std::ostringstream out;
    out << "# stda " << version_string() << "\n";
    out << "# command: " << command << "\n";
    out << "# config:";
    for (const auto& [k, v] : config) out << " " << k << "=" << v;
    out << "\n";
    return out.str();
}

void emit_report(const GlobalOptions& g, const std::string& report_path, const std::string& text) {
    std::cout << text;
    if (!report_path.empty()) {
        std::string full = resolve(g, report_path);
        std::ofstream out(full);
        if (!out) throw UsageError("cannot write report file: " + full);
        out << text;
    }
}

InitialConditionSpec load_spec_arg(const GlobalOptions& g, const std::string& init) {
    std::string path = !init.empty() ? init : g.seed_spec;
    if (path.empty()) throw UsageError("no initial condition: pass --init or the global --seed-spec");
    return load_initspec(path);
}

GeneratingPolynomial parse_phi(const std::string& expr, int p) {
    if (p == 0) throw UsageError("--p is required with --phi");
    return GeneratingPolynomial(parse_laurent(expr, FieldPrime(p)));
}

std::array<AxisBase, 2> parse_axes(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("--axes expects two comma-separated bases");
    return {axis_base_from_string(text.substr(0, comma)),
            axis_base_from_string(text.substr(comma + 1))};
}

long long checked_stoll(const std::string& s) {
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw UsageError("malformed integer \"" + s + "\"");
    return v;
}

std::vector<long long> parse_csv_ints(const std::string& text, size_t count, const char* what) {
    std::vector<long long> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) out.push_back(checked_stoll(item));
    if (out.size() != count) {
        throw UsageError(std::string(what) + " expects " + std::to_string(count) +
                         " comma-separated integers");
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_app(int argc, char** argv) {
    CLI::App app{"spacetime diagram automata for linear cellular automata over F_p"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--p", g.p, "prime field characteristic")->check(CLI::Range(2, 97));
    app.add_option("--seed-spec", g.seed_spec, "default initial condition spec file");
    app.add_option("--out-dir", g.out_dir, "directory prefix for output files");
    app.add_option("--budget-states", g.budget_states, "state budget for closures and products");
    app.add_option("--verify-window", g.verify_window, "half-side of verification windows");

    // evolve: brute-force spacetime window.
    auto* evolve = app.add_subcommand("evolve", "compute a spacetime window by direct evolution");
    std::string ev_phi, ev_init, ev_window, ev_out, ev_format;
    evolve->add_option("--phi", ev_phi, "generating polynomial, e.g. \"x + 1\"")->required();
    evolve->add_option("--init", ev_init, "initial condition spec file");
    evolve->add_option("--window", ev_window, "m0,m1,n0,n1")->required();
    evolve->add_option("--out", ev_out, "output file (.bin grid, .pbm/.pgm image)")->required();
    evolve->add_option("--format", ev_format, "force output format: bin|pbm|pgm");
    evolve->callback([&] {
        InitialConditionSpec spec = load_spec_arg(g, ev_init);
        int p = g.p ? g.p : spec.p;
        GeneratingPolynomial phi = parse_phi(ev_phi, p);
        auto w = parse_csv_ints(ev_window, 4, "--window");
        SpacetimeGrid grid = w[2] < 0 ? generate_grid_zxz(phi, spec, w[0], w[1], w[2], w[3])
                                      : generate_grid(phi, spec, w[0], w[1], w[2], w[3]);
        std::string out = resolve(g, ev_out);
        std::string format = ev_format;
        if (format.empty()) {
            if (out.ends_with(".pbm")) {
                format = "pbm";
            } else if (out.ends_with(".pgm")) {
                format = "pgm";
            } else {
                format = "bin";
            }
        }
        if (format == "bin") {
            save_grid(grid, out);
        } else {
            render_to_file(grid, out, format);
        }
        std::cout << repro_block("evolve", {{"phi", ev_phi},
                                            {"p", std::to_string(p)},
                                            {"window", ev_window},
                                            {"format", format}});
        std::cout << "cells: " << grid.width() * grid.height() << "\n";
        std::cout << "out: " << out << "\n";
    });

    // synth: exact automaton synthesis.
    auto* synth = app.add_subcommand("synth", "synthesize the diagram automaton exactly");
    std::string sy_phi, sy_init, sy_axes = "negp,p", sy_out, sy_report;
    synth->add_option("--phi", sy_phi)->required();
    synth->add_option("--init", sy_init);
    synth->add_option("--axes", sy_axes, "p,p or negp,p (default negp,p)");
    synth->add_option("--out", sy_out, "DFAO output file")->required();
    synth->add_option("--report", sy_report, "closure report file");
    synth->callback([&] {
        InitialConditionSpec spec = load_spec_arg(g, sy_init);
        int p = g.p ? g.p : spec.p;
        GeneratingPolynomial phi = parse_phi(sy_phi, p);
        SynthesizedDiagram result =
            build_st_automaton(phi, spec, parse_axes(sy_axes), static_cast<int>(g.budget_states));
        save_dfao(result.automaton, resolve(g, sy_out));
        std::string report = repro_block("synth", {{"phi", sy_phi},
                                                   {"p", std::to_string(p)},
                                                   {"axes", sy_axes}}) +
                             print_closure_report(result.report);
        emit_report(g, sy_report, report);
    });

    // shear: automaton of the sheared diagram.
    auto* shear = app.add_subcommand("shear", "synthesize the sheared diagram automaton");
    std::string sh_phi, sh_init, sh_out, sh_report;
    int sh_r = 0, sh_s = 0;
    shear->add_option("--phi", sh_phi)->required();
    shear->add_option("--init", sh_init);
    shear->add_option("--r", sh_r, "cone slope")->required();
    shear->add_option("--s", sh_s, "horizontal offset");
    shear->add_option("--out", sh_out)->required();
    shear->add_option("--report", sh_report);
    shear->callback([&] {
        InitialConditionSpec spec = load_spec_arg(g, sh_init);
        int p = g.p ? g.p : spec.p;
        GeneratingPolynomial phi = parse_phi(sh_phi, p);
        DiagramSynthesizer engine =
            DiagramSynthesizer::from_spec(phi, spec, static_cast<int>(g.budget_states));
        SynthesizedDiagram result = engine.build_shear(sh_r, sh_s);
        save_dfao(result.automaton, resolve(g, sh_out));
        std::string report =
            repro_block("shear", {{"phi", sh_phi},
                                  {"p", std::to_string(p)},
                                  {"r", std::to_string(sh_r)},
                                  {"s", std::to_string(sh_s)}}) +
            print_closure_report(result.report);
        emit_report(g, sh_report, report);
    });

    // to-negp: negative-base reading of the same closure.
    auto* tonegp = app.add_subcommand("to-negp", "convert the base-p reading to base [-p, p]");
    std::string tn_phi, tn_init, tn_out, tn_report;
    tonegp->add_option("--phi", tn_phi)->required();
    tonegp->add_option("--init", tn_init);
    tonegp->add_option("--out", tn_out)->required();
    tonegp->add_option("--report", tn_report);
    tonegp->callback([&] {
        InitialConditionSpec spec = load_spec_arg(g, tn_init);
        int p = g.p ? g.p : spec.p;
        GeneratingPolynomial phi = parse_phi(tn_phi, p);
        DiagramSynthesizer engine =
            DiagramSynthesizer::from_spec(phi, spec, static_cast<int>(g.budget_states));
        SynthesizedDiagram result = to_negp(engine);
        save_dfao(result.automaton, resolve(g, tn_out));
        std::string report = repro_block("to-negp", {{"phi", tn_phi}, {"p", std::to_string(p)}}) +
                             print_closure_report(result.report);
        emit_report(g, tn_report, report);
    });

    // combine: pointwise field operation on two automata.
    auto* comb = app.add_subcommand("combine", "pointwise combination of two automata");
    std::string cb_a, cb_b, cb_op = "add", cb_out;
    bool cb_minimize = false;
    comb->add_option("--a", cb_a)->required();
    comb->add_option("--b", cb_b)->required();
    comb->add_option("--op", cb_op, "add|sub|mul");
    comb->add_flag("--minimize", cb_minimize, "minimize the product");
    comb->add_option("--out", cb_out)->required();
    comb->callback([&] {
        Dfao a = load_dfao(cb_a);
        Dfao b = load_dfao(cb_b);
        FieldOp op = cb_op == "add"   ? FieldOp::add()
                     : cb_op == "sub" ? FieldOp::sub()
                     : cb_op == "mul" ? FieldOp::mul()
                                      : throw UsageError("--op must be add, sub or mul");
        if (static_cast<long long>(a.state_count()) * b.state_count() > g.budget_states) {
            throw BudgetError("combine would exceed the state budget");
        }
        Dfao out = combine(a, b, op);
        if (cb_minimize) out = minimize(out);
        save_dfao(out, resolve(g, cb_out));
        std::cout << repro_block("combine", {{"op", cb_op}, {"minimize", cb_minimize ? "1" : "0"}});
        std::cout << "states: " << out.state_count() << "\n";
    });

    // minimize.
    auto* mini = app.add_subcommand("minimize", "canonical Moore minimization");
    std::string mn_in, mn_out;
    mini->add_option("--in", mn_in)->required();
    mini->add_option("--out", mn_out)->required();
    mini->callback([&] {
        Dfao a = load_dfao(mn_in);
        Dfao m = minimize(a);
        save_dfao(m, resolve(g, mn_out));
        std::cout << repro_block("minimize", {{"in", mn_in}});
        std::cout << "states_before: " << a.state_count() << "\n";
        std::cout << "states_after: " << m.state_count() << "\n";
    });

    // eval.
    auto* eval = app.add_subcommand("eval", "evaluate an automaton at points");
    std::string evl_dfao;
    std::vector<std::string> evl_points;
    eval->add_option("--dfao", evl_dfao)->required();
    eval->add_option("--point", evl_points, "m or m,n (repeatable)")->required();
    eval->callback([&] {
        Dfao a = load_dfao(evl_dfao);
        std::cout << repro_block("eval", {{"dfao", evl_dfao}});
        for (const std::string& pt : evl_points) {
            if (a.arity() == 1) {
                long long m = checked_stoll(pt);
                std::cout << pt << ": " << static_cast<int>(a.eval(m)) << "\n";
            } else {
                auto mn = parse_csv_ints(pt, 2, "--point");
                std::cout << pt << ": " << static_cast<int>(a.eval(mn[0], mn[1])) << "\n";
            }
        }
    });

    // subst2dfao.
    auto* s2d = app.add_subcommand("subst2dfao", "automaton of a coded substitution fixed point");
    std::string sd_subst, sd_out;
    s2d->add_option("--subst", sd_subst)->required();
    s2d->add_option("--out", sd_out)->required();
    s2d->callback([&] {
        int seed = 0;
        Substitution theta = parse_substitution(read_file(sd_subst), &seed);
        Dfao a = subst_to_dfao(theta, seed);
        save_dfao(a, resolve(g, sd_out));
        std::cout << repro_block("subst2dfao",
                                 {{"subst", sd_subst}, {"seed", std::to_string(seed)}});
        std::cout << "states: " << a.state_count() << "\n";
    });

    // dfao2subst.
    auto* d2s = app.add_subcommand("dfao2subst", "substitution and coding generating an automaton");
    std::string ds_dfao, ds_out;
    d2s->add_option("--dfao", ds_dfao)->required();
    d2s->add_option("--out", ds_out)->required();
    d2s->callback([&] {
        Dfao a = load_dfao(ds_dfao);
        std::cout << repro_block("dfao2subst", {{"dfao", ds_dfao}});
        std::string out = resolve(g, ds_out);
        std::ofstream f(out);
        if (!f) throw UsageError("cannot write substitution file: " + out);
        if (a.arity() == 1) {
            Cobham1D c = dfao_to_subst_1d(a);
            f << print_substitution(c.theta, c.seed);
            std::cout << "alphabet: " << c.theta.alphabet << "\n";
        } else {
            Cobham2D c = dfao_to_subst_2d(a);
            f << print_substitution2d(c.theta, c.seed);
            std::cout << "alphabet: " << c.theta.alphabet << "\n";
        }
        std::cout << "out: " << out << "\n";
    });

    // coincidence.
    auto* coin = app.add_subcommand("coincidence", "search for a coincidence of a substitution");
    std::string co_subst, co_report;
    int co_depth = 16;
    coin->add_option("--subst", co_subst)->required();
    coin->add_option("--max-depth", co_depth);
    coin->add_option("--report", co_report);
    coin->callback([&] {
        Substitution theta = parse_substitution(read_file(co_subst));
        CoincidenceResult res = has_coincidence(theta, co_depth);
        std::ostringstream out;
        out << repro_block("coincidence",
                           {{"subst", co_subst}, {"max-depth", std::to_string(co_depth)}});
        if (res.witness) {
            out << "coincidence: yes\n";
            out << "depth: " << res.witness->depth << "\n";
            out << "column_index: " << res.witness->column_index << "\n";
            out << "column_digits: ";
            for (uint8_t d : res.witness->column_digits) out << static_cast<int>(d);
            out << "\n";
            out << "surviving_letter: " << res.witness->surviving_letter << "\n";
        } else {
            out << "coincidence: none\n";
            out << "definitive: " << (res.definitive_none ? "yes" : "no") << "\n";
        }
        emit_report(g, co_report, out.str());
    });

    // certify.
    auto* cert = app.add_subcommand("certify", "power-freeness certificate for a diagram");
    std::string ce_subst, ce_phi, ce_report;
    cert->add_option("--subst", ce_subst)->required();
    cert->add_option("--phi", ce_phi)->required();
    cert->add_option("--report", ce_report);
    cert->callback([&] {
        int seed = 0;
        Substitution theta = parse_substitution(read_file(ce_subst), &seed);
        GeneratingPolynomial phi = parse_phi(ce_phi, g.p ? g.p : theta.field.p());
        PowerFreeCertificate c = certify_power_free(theta, seed, phi);
        std::ostringstream out;
        out << repro_block("certify", {{"subst", ce_subst}, {"phi", ce_phi}});
        out << "accepted: " << (c.accepted ? "yes" : "no") << "\n";
        out << "theorem: " << c.theorem << "\n";
        for (const auto& [name, ok] : c.hypotheses) {
            out << "hypothesis: " << name << " = " << (ok ? "true" : "false") << "\n";
        }
        if (c.accepted) {
            out << "empirical_M: " << c.empirical_m << "\n";
            out << "scanned_prefix: " << c.scanned_prefix << "\n";
            out << "bound_expression: " << c.bound_expression << "\n";
            out << "bound_value: " << c.bound_value << "\n";
        } else {
            out << "reason: " << c.rejection_reason << "\n";
        }
        emit_report(g, ce_report, out.str());
    });

    // powerfree.
    auto* pf = app.add_subcommand("powerfree", "bounded-period power decision on an automaton");
    std::string pf_dfao, pf_report;
    int pf_m = 2, pf_lmax = 9;
    pf->add_option("--dfao", pf_dfao)->required();
    pf->add_option("--M", pf_m)->required();
    pf->add_option("--lmax", pf_lmax)->required();
    pf->add_option("--report", pf_report);
    pf->callback([&] {
        Dfao a = load_dfao(pf_dfao);
        auto witness = decide_power_fixed(a, pf_m, pf_lmax, g.budget_states);
        std::ostringstream out;
        out << repro_block("powerfree", {{"dfao", pf_dfao},
                                         {"M", std::to_string(pf_m)},
                                         {"lmax", std::to_string(pf_lmax)}});
        if (witness) {
            out << "verdict: witness\n";
            out << "m: " << witness->m << "\n";
            out << "n: " << witness->n << "\n";
            out << "period: " << witness->period << "\n";
            out << "exponent: " << witness->exponent << "\n";
        } else {
            out << "verdict: none\n";
            out << "period_bound: " << pf_lmax << "\n";
        }
        emit_report(g, pf_report, out.str());
    });

    // freqs.
    auto* fr = app.add_subcommand("freqs", "exact letter frequencies of a fixed point");
    std::string fr_subst, fr_report;
    fr->add_option("--subst", fr_subst)->required();
    fr->add_option("--report", fr_report);
    fr->callback([&] {
        Substitution theta = parse_substitution(read_file(fr_subst));
        auto freq = letter_frequencies(theta);
        std::ostringstream out;
        out << repro_block("freqs", {{"subst", fr_subst}});
        for (size_t a = 0; a < freq.size(); ++a) {
            out << "letter " << a << ": " << freq[a].display() << "\n";
        }
        emit_report(g, fr_report, out.str());
    });

    // complexity.
    auto* cx = app.add_subcommand("complexity", "distinct-block count of a grid window");
    std::string cx_grid, cx_report;
    int cx_m = 0, cx_n = 0;
    cx->add_option("--grid", cx_grid)->required();
    cx->add_option("--m", cx_m)->required();
    cx->add_option("--n", cx_n)->required();
    cx->add_option("--report", cx_report);
    cx->callback([&] {
        SpacetimeGrid grid = load_grid(cx_grid);
        long long count = complexity(grid, cx_m, cx_n);
        std::ostringstream out;
        out << repro_block("complexity", {{"grid", cx_grid},
                                          {"m", std::to_string(cx_m)},
                                          {"n", std::to_string(cx_n)}});
        out << "blocks: " << count << "\n";
        out << "window_exact: yes\n";
        emit_report(g, cx_report, out.str());
    });

    // ore.
    auto* ore = app.add_subcommand("ore", "search a Frobenius-twist relation for the right half");
    std::string or_init, or_report, or_out;
    int or_d = 3, or_h = 60, or_n = 1000;
    ore->add_option("--init", or_init);
    ore->add_option("--degree", or_d);
    ore->add_option("--height", or_h);
    ore->add_option("--precision", or_n);
    ore->add_option("--out", or_out, "relation output file");
    ore->add_option("--report", or_report);
    ore->callback([&] {
        InitialConditionSpec spec = load_spec_arg(g, or_init);
        FieldPrime field = spec.field();
        long long reach = 1;
        for (int i = 0; i < or_d; ++i) reach *= field.p();
        size_t need = static_cast<size_t>(or_n + reach * or_h + 8);
        SeriesPrefix f = spec.right.prefix(field, need);
        auto rel = derive_ore_relation(f, field, or_d, or_h, or_n);
        std::ostringstream out;
        out << repro_block("ore", {{"degree", std::to_string(or_d)},
                                   {"height", std::to_string(or_h)},
                                   {"precision", std::to_string(or_n)}});
        if (rel) {
            out << "found: yes\n";
            out << "degree: " << rel->degree() << "\n";
            out << "verified_precision: " << rel->verified_precision << "\n";
            out << "relation: " << rel->display() << "\n";
            if (!or_out.empty()) {
                std::vector<AnnihilatorTerm> terms;
                long long z = 1;
                for (const auto& c : rel->coeffs) {
                    if (!c.is_zero()) terms.push_back({c, z});
                    z *= field.p();
                }
                std::ofstream file(resolve(g, or_out));
                if (!file) throw UsageError("cannot write relation file");
                file << print_annihilator(terms, field);
            }
        } else {
            out << "found: no\n";
        }
        emit_report(g, or_report, out.str());
    });

    // verify-annihilator.
    auto* va = app.add_subcommand("verify-annihilator", "check P(x, f(x)) = 0 to a precision");
    std::string va_ann, va_init, va_report;
    int va_n = 1000;
    va->add_option("--ann", va_ann)->required();
    va->add_option("--init", va_init);
    va->add_option("--precision", va_n);
    va->add_option("--report", va_report);
    va->callback([&] {
        FieldPrime field(2);
        auto terms = parse_annihilator(read_file(va_ann), &field);
        InitialConditionSpec spec = load_spec_arg(g, va_init);
        if (spec.p != field.p()) throw UsageError("annihilator and init spec use different primes");
        SeriesPrefix f = spec.right.prefix(field, static_cast<size_t>(va_n));
        bool ok = verify_annihilator(terms, f, field, va_n);
        std::ostringstream out;
        out << repro_block("verify-annihilator",
                           {{"ann", va_ann}, {"precision", std::to_string(va_n)}});
        out << "annihilates: " << (ok ? "yes" : "no") << "\n";
        emit_report(g, va_report, out.str());
    });

    // render.
    auto* rd = app.add_subcommand("render", "write a grid as a PBM/PGM image");
    std::string rd_grid, rd_out, rd_format;
    rd->add_option("--grid", rd_grid)->required();
    rd->add_option("--out", rd_out)->required();
    rd->add_option("--format", rd_format, "pbm|pgm (default: by p)");
    rd->callback([&] {
        SpacetimeGrid grid = load_grid(rd_grid);
        std::string format = rd_format.empty() ? (grid.p() == 2 ? "pbm" : "pgm") : rd_format;
        std::string out = resolve(g, rd_out);
        render_to_file(grid, out, format);
        std::cout << repro_block("render", {{"grid", rd_grid}, {"format", format}});
        std::cout << "out: " << out << "\n";
    });

    // Global flags may follow the subcommand name.
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_app(argc, argv);
    } catch (const BudgetError& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
