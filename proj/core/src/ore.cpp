#include "stda/ore.hpp"

#include <algorithm>
#include <sstream>

namespace stda {

std::string OreRelation::display() const {
    std::ostringstream out;
    bool first = true;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        if (!first) out << " + ";
        first = false;
        out << "(" << print_laurent(coeffs[i]) << ")*f^(p^" << i << ")";
    }
    out << " = 0";
    return out.str();
}

SeriesPrefix prefix_mul(const SeriesPrefix& a, const SeriesPrefix& b, FieldPrime field,
                        int precision) {
    int n = std::min<long long>({precision, static_cast<long long>(a.size()),
                                 static_cast<long long>(b.size())});
    SeriesPrefix out(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        long long ai = a[static_cast<size_t>(i)];
        for (int j = 0; i + j < n; ++j) {
            if (b[static_cast<size_t>(j)] == 0) continue;
            out[static_cast<size_t>(i + j)] =
                field.reduce(out[static_cast<size_t>(i + j)] + ai * b[static_cast<size_t>(j)]);
        }
    }
    return out;
}

namespace {

/// f^(p^i) truncated: in characteristic p this just dilates indices by p^i.
SeriesPrefix frobenius_prefix(const SeriesPrefix& f, long long power, int length) {
    SeriesPrefix out(static_cast<size_t>(length), 0);
    for (long long t = 0; t * power < length && t < static_cast<long long>(f.size()); ++t) {
        out[static_cast<size_t>(t * power)] = f[static_cast<size_t>(t)];
    }
    return out;
}

/// Nullspace search: columns are the unknown coefficients a_{i,h} of
/// A_i = sum_h a_{i,h} x^h; rows demand that x^t of sum A_i f^{p^i}
/// vanishes for t < precision. Returns a solution with nonzero A_0 block,
/// if one exists.
std::optional<std::vector<Fp>> solve_relation(const std::vector<SeriesPrefix>& twists,
                                              FieldPrime field, int degree, int height,
                                              int precision) {
    const int cols = (degree + 1) * (height + 1);
    // Column-major sparse-ish dense matrix, rows = precision.
    std::vector<std::vector<Fp>> column(static_cast<size_t>(cols));
    for (int i = 0; i <= degree; ++i) {
        for (int h = 0; h <= height; ++h) {
            auto& col = column[static_cast<size_t>(i * (height + 1) + h)];
            col.assign(static_cast<size_t>(precision), 0);
            const SeriesPrefix& tw = twists[static_cast<size_t>(i)];
            for (int t = h; t < precision; ++t) {
                col[static_cast<size_t>(t)] = tw[static_cast<size_t>(t - h)];
            }
        }
    }
    // Gaussian elimination tracking the combination that produced each
    // reduced column; a column reduced to zero yields a nullspace vector.
    std::vector<std::vector<Fp>> basis;     // pivot columns (reduced)
    std::vector<int> pivot_row;             // pivot row per basis column
    std::vector<std::vector<Fp>> combo;     // expression of each basis column in the originals
    std::vector<std::optional<std::vector<Fp>>> nullvecs;
    for (int c = 0; c < cols; ++c) {
        std::vector<Fp> col = column[static_cast<size_t>(c)];
        std::vector<Fp> expr(static_cast<size_t>(cols), 0);
        expr[static_cast<size_t>(c)] = 1;
        for (size_t b = 0; b < basis.size(); ++b) {
            Fp v = col[static_cast<size_t>(pivot_row[b])];
            if (v == 0) continue;
            Fp factor = field.mul(v, field.inv(basis[b][static_cast<size_t>(pivot_row[b])]));
            for (int t = 0; t < precision; ++t) {
                col[static_cast<size_t>(t)] =
                    field.sub(col[static_cast<size_t>(t)], field.mul(factor, basis[b][static_cast<size_t>(t)]));
            }
            for (int t = 0; t < cols; ++t) {
                expr[static_cast<size_t>(t)] =
                    field.sub(expr[static_cast<size_t>(t)], field.mul(factor, combo[b][static_cast<size_t>(t)]));
            }
        }
        int pr = -1;
        for (int t = 0; t < precision; ++t) {
            if (col[static_cast<size_t>(t)] != 0) {
                pr = t;
                break;
            }
        }
        if (pr < 0) {
            // col reduced to zero: expr is a nullspace vector. Prefer one
            // whose A_0 block is nonzero.
            bool a0_nonzero = false;
            for (int h = 0; h <= height; ++h) {
                if (expr[static_cast<size_t>(h)] != 0) a0_nonzero = true;
            }
            if (a0_nonzero) return expr;
            continue;
        }
        basis.push_back(std::move(col));
        pivot_row.push_back(pr);
        combo.push_back(std::move(expr));
    }
    return std::nullopt;
}

OreRelation make_relation(const std::vector<Fp>& solution, FieldPrime field, int degree,
                          int height, int precision) {
    OreRelation rel;
    rel.verified_precision = precision;
    for (int i = 0; i <= degree; ++i) {
        std::vector<LaurentPoly::Term> terms;
        for (int h = 0; h <= height; ++h) {
            Fp c = solution[static_cast<size_t>(i * (height + 1) + h)];
            if (c != 0) terms.emplace_back(h, c);
        }
        rel.coeffs.emplace_back(field, std::move(terms));
    }
    while (rel.coeffs.size() > 1 && rel.coeffs.back().is_zero()) rel.coeffs.pop_back();
    return rel;
}

} // namespace

std::optional<OreRelation> derive_ore_relation(const SeriesPrefix& f, FieldPrime field,
                                               int max_degree, int max_height, int precision) {
    if (max_degree < 1 || max_height < 0 || precision < 1) {
        throw UsageError("derive_ore_relation: bad search bounds");
    }
    const int p = field.p();
    long long reach = 1;
    for (int i = 0; i < max_degree; ++i) reach *= p;
    if (static_cast<long long>(f.size()) < precision + reach * max_height) {
        throw UsageError("derive_ore_relation: series prefix too short for the requested bounds");
    }
    bool all_zero = true;
    for (Fp v : f) {
        if (v != 0) {
            all_zero = false;
            break;
        }
    }
    if (all_zero) return std::nullopt; // any A annihilates 0; nothing f-dependent to report

    std::vector<SeriesPrefix> twists;
    long long power = 1;
    for (int i = 0; i <= max_degree; ++i) {
        twists.push_back(frobenius_prefix(f, power, precision));
        power *= p;
    }

    // Smallest degree first, then smallest height (binary search: the set of
    // solvable heights is upward closed for fixed degree).
    for (int degree = 1; degree <= max_degree; ++degree) {
        if (!solve_relation(twists, field, degree, max_height, precision)) continue;
        int lo = 0, hi = max_height;
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (solve_relation(twists, field, degree, mid, precision)) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        auto solution = solve_relation(twists, field, degree, lo, precision);
        OreRelation rel = make_relation(*solution, field, degree, lo, precision);
        // Verification: at this precision the linear system is its own
        // certificate, recompute once defensively.
        std::vector<AnnihilatorTerm> terms;
        long long z = 1;
        for (const auto& c : rel.coeffs) {
            if (!c.is_zero()) terms.push_back({c, z});
            z *= p;
        }
        if (!verify_annihilator(terms, f, field, precision)) {
            throw std::logic_error("ore relation failed its own verification");
        }
        return rel;
    }
    return std::nullopt;
}

bool verify_annihilator(const std::vector<AnnihilatorTerm>& terms, const SeriesPrefix& f,
                        FieldPrime field, int precision) {
    if (static_cast<int>(f.size()) < precision) {
        throw UsageError("verify_annihilator: series prefix shorter than the precision");
    }
    SeriesPrefix acc(static_cast<size_t>(precision), 0);
    for (const auto& term : terms) {
        if (!term.coeff.is_zero() && term.coeff.min_exponent() < 0) {
            throw UsageError("verify_annihilator: coefficient polynomials must have nonnegative support");
        }
        if (term.z_exponent < 0) throw UsageError("verify_annihilator: negative z exponent");
        // f^e mod x^precision by binary powering.
        SeriesPrefix power(static_cast<size_t>(precision), 0);
        power[0] = 1;
        SeriesPrefix base(f.begin(), f.begin() + precision);
        long long e = term.z_exponent;
        while (e > 0) {
            if (e & 1) power = prefix_mul(power, base, field, precision);
            e >>= 1;
            if (e > 0) base = prefix_mul(base, base, field, precision);
        }
        for (const auto& [exp, c] : term.coeff.terms()) {
            for (long long t = exp; t < precision; ++t) {
                acc[static_cast<size_t>(t)] = field.reduce(
                    acc[static_cast<size_t>(t)] +
                    static_cast<long long>(c) * power[static_cast<size_t>(t - exp)]);
            }
        }
    }
    for (Fp v : acc) {
        if (v != 0) return false;
    }
    return true;
}

std::vector<AnnihilatorTerm> parse_annihilator(const std::string& text, FieldPrime* field_out) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (line != "stdann v1") throw UsageError("annihilator file: expected header \"stdann v1\"");
    int p = 0;
    std::vector<AnnihilatorTerm> terms;
    std::optional<FieldPrime> field;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "p") {
            ls >> p;
            field = FieldPrime(p);
        } else if (key == "term") {
            if (!field) throw UsageError("annihilator file: p must come before terms");
            long long z = 0;
            ls >> z;
            std::string poly;
            std::getline(ls, poly);
            terms.push_back({parse_laurent(poly, *field), z});
        } else {
            throw UsageError("annihilator file: unknown key \"" + key + "\"");
        }
    }
    if (!field) throw UsageError("annihilator file: missing p");
    if (field_out) *field_out = *field;
    return terms;
}

std::string print_annihilator(const std::vector<AnnihilatorTerm>& terms, FieldPrime field) {
    std::ostringstream out;
    out << "stdann v1\n";
    out << "p " << field.p() << "\n";
    for (const auto& t : terms) {
        out << "term " << t.z_exponent << " " << print_laurent(t.coeff) << "\n";
    }
    return out.str();
}

} // namespace stda
