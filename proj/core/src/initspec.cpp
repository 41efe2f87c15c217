#include "stda/initspec.hpp"

#include <fstream>
#include <sstream>

namespace stda {

SequenceSpec SequenceSpec::substitution(Substitution s, int seed) {
    SequenceSpec out;
    out.kind = Kind::Subst;
    out.subst = std::move(s);
    out.seed = seed;
    return out;
}

SequenceSpec SequenceSpec::automaton(Dfao a) {
    if (a.arity() != 1 || a.axis(0) != AxisBase::Pos) {
        throw UsageError("sequence spec automata must be 1-D over base p");
    }
    SequenceSpec out;
    out.kind = Kind::Dfao;
    out.dfao = std::make_shared<Dfao>(std::move(a));
    return out;
}

Fp SequenceSpec::at(const FieldPrime& field, long long k) const {
    switch (kind) {
        case Kind::Zero:
            return 0;
        case Kind::Subst: {
            // Walk the digits of k through the substitution columns.
            const Substitution& s = *subst;
            if (s.field != field) throw UsageError("sequence spec field mismatch");
            DigitString d = encode_base(k, s.length);
            int letter = seed;
            for (auto it = d.digits.rbegin(); it != d.digits.rend(); ++it) {
                letter = s.column(*it, letter);
            }
            return s.coding[static_cast<size_t>(letter)];
        }
        case Kind::Dfao:
            if (dfao->field() != field) throw UsageError("sequence spec field mismatch");
            return dfao->eval(k);
    }
    throw UsageError("corrupt sequence spec");
}

std::vector<Fp> SequenceSpec::prefix(const FieldPrime& field, size_t n) const {
    switch (kind) {
        case Kind::Zero:
            return std::vector<Fp>(n, 0);
        case Kind::Subst: {
            if (subst->field != field) throw UsageError("sequence spec field mismatch");
            return coded_fixed_point_prefix(*subst, seed, n);
        }
        case Kind::Dfao: {
            if (dfao->field() != field) throw UsageError("sequence spec field mismatch");
            std::vector<Fp> out(n);
            for (size_t k = 0; k < n; ++k) out[k] = dfao->eval(static_cast<long long>(k));
            return out;
        }
    }
    throw UsageError("corrupt sequence spec");
}

Dfao SequenceSpec::to_dfao(const FieldPrime& field) const {
    switch (kind) {
        case Kind::Zero:
            return constant_dfao(field, 1, {AxisBase::Pos, AxisBase::Pos}, 0);
        case Kind::Subst:
            if (subst->field != field) throw UsageError("sequence spec field mismatch");
            return subst_to_dfao(*subst, seed);
        case Kind::Dfao:
            if (dfao->field() != field) throw UsageError("sequence spec field mismatch");
            return minimize(*dfao);
    }
    throw UsageError("corrupt sequence spec");
}

Fp InitialConditionSpec::row0_at(long long m) const {
    FieldPrime f = field();
    if (m >= 0) return right.at(f, m);
    if (left.is_zero()) return 0;
    return alignment == Alignment::Reflect ? left.at(f, -m) : left.at(f, -m - 1);
}

Row InitialConditionSpec::row0_window(long long a, long long b) const {
    FieldPrime f = field();
    Row out;
    out.base = a;
    out.values.assign(static_cast<size_t>(b - a + 1), 0);
    if (b >= 0) {
        size_t len = static_cast<size_t>(b - std::max(a, 0LL) + 1);
        std::vector<Fp> pre = right.prefix(f, len);
        for (size_t i = 0; i < len; ++i) {
            out.values[static_cast<size_t>(std::max(a, 0LL) - a) + i] = pre[i];
        }
    }
    if (a < 0 && !left.is_zero()) {
        long long hi = std::min(b, -1LL);
        // left spec index of position m < 0.
        auto left_index = [&](long long m) { return alignment == Alignment::Reflect ? -m : -m - 1; };
        size_t len = static_cast<size_t>(left_index(a)) + 1;
        std::vector<Fp> pre = left.prefix(f, len);
        for (long long m = a; m <= hi; ++m) {
            out.values[static_cast<size_t>(m - a)] = pre[static_cast<size_t>(left_index(m))];
        }
    }
    return out;
}

void InitialConditionSpec::validate() const {
    FieldPrime f = field();
    if (alignment == Alignment::Reflect && !left.is_zero()) {
        if (left.at(f, 0) != right.at(f, 0)) {
            throw UsageError("initial condition: reflect alignment needs matching u_0 on both halves");
        }
    }
}

namespace {

struct SectionData {
    std::string type = "zero";
    std::string dfao_path;
    std::vector<std::string> subst_lines;
    int seed = 0;
};

SequenceSpec build_section(const SectionData& sec, int p) {
    if (sec.type == "zero") return SequenceSpec::zero();
    if (sec.type == "subst") {
        std::ostringstream block;
        block << "stdsubst v1\n";
        block << "p " << p << "\n";
        for (const auto& l : sec.subst_lines) block << l << "\n";
        return SequenceSpec::substitution(parse_substitution(block.str()), sec.seed);
    }
    if (sec.type == "dfao") return SequenceSpec::automaton(load_dfao(sec.dfao_path));
    throw UsageError("init spec: unknown section type \"" + sec.type + "\"");
}

} // namespace

InitialConditionSpec parse_initspec(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (line != "stdinit v1") throw UsageError("init spec: expected header \"stdinit v1\"");
    InitialConditionSpec spec;
    bool saw_p = false;
    std::map<std::string, SectionData> sections;
    std::string current;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line[0] == '[') {
            auto close = line.find(']');
            if (close == std::string::npos) throw UsageError("init spec: malformed section header");
            current = line.substr(1, close - 1);
            sections.try_emplace(current);
            continue;
        }
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (current.empty()) {
            if (key == "p") {
                ls >> spec.p;
                saw_p = true;
            } else if (key == "alignment") {
                std::string v;
                ls >> v;
                if (v == "reflect") {
                    spec.alignment = Alignment::Reflect;
                } else if (v == "adjacent") {
                    spec.alignment = Alignment::Adjacent;
                } else {
                    throw UsageError("init spec: alignment must be reflect|adjacent");
                }
            } else {
                throw UsageError("init spec: unknown top-level key \"" + key + "\"");
            }
            continue;
        }
        SectionData& sec = sections[current];
        if (key == "type") {
            ls >> sec.type;
            if (sec.type == "dfao") ls >> sec.dfao_path;
        } else if (key == "seed") {
            ls >> sec.seed;
        } else if (key == "length" || key == "alphabet" || key == "map" || key == "coding") {
            sec.subst_lines.push_back(line);
        } else {
            throw UsageError("init spec: unknown key \"" + key + "\" in section [" + current + "]");
        }
    }
    if (!saw_p) throw UsageError("init spec: missing p");
    FieldPrime field(spec.p);
    for (auto& [name, sec] : sections) {
        if (name == "right") {
            spec.right = build_section(sec, spec.p);
        } else if (name == "left") {
            spec.left = build_section(sec, spec.p);
        } else if (name.rfind("column ", 0) == 0) {
            long long offset = std::stoll(name.substr(7));
            spec.columns[offset] = build_section(sec, spec.p);
        } else {
            throw UsageError("init spec: unknown section [" + name + "]");
        }
    }
    spec.validate();
    return spec;
}

namespace {

void print_section(std::ostringstream& out, const std::string& name, const SequenceSpec& seq) {
    out << "[" << name << "]\n";
    switch (seq.kind) {
        case SequenceSpec::Kind::Zero:
            out << "type zero\n";
            break;
        case SequenceSpec::Kind::Subst: {
            out << "type subst\n";
            std::istringstream block(print_substitution(*seq.subst));
            std::string line;
            std::getline(block, line); // header
            std::getline(block, line); // p
            while (std::getline(block, line)) out << line << "\n";
            out << "seed " << seq.seed << "\n";
            break;
        }
        case SequenceSpec::Kind::Dfao:
            throw UsageError("init spec printing supports zero and subst sections only");
    }
}

} // namespace

std::string print_initspec(const InitialConditionSpec& spec) {
    std::ostringstream out;
    out << "stdinit v1\n";
    out << "p " << spec.p << "\n";
    out << "alignment " << (spec.alignment == Alignment::Reflect ? "reflect" : "adjacent") << "\n";
    print_section(out, "right", spec.right);
    print_section(out, "left", spec.left);
    for (const auto& [offset, seq] : spec.columns) {
        print_section(out, "column " + std::to_string(offset), seq);
    }
    return out.str();
}

InitialConditionSpec load_initspec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open init spec: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_initspec(buf.str());
}

SpacetimeGrid generate_grid(const GeneratingPolynomial& phi, const InitialConditionSpec& spec,
                            long long m0, long long m1, long long n0, long long n1) {
    if (n0 < 0) throw UsageError("generate_grid needs n0 >= 0; use generate_grid_zxz");
    if (spec.p != phi.p()) throw UsageError("initial condition and rule use different primes");
    spec.validate();
    const long long L = std::max(phi.left_radius(), 0);
    const long long R = std::max(phi.right_radius(), 0);
    SpacetimeGrid grid(phi.field(), m0, m1, n0, n1);
    Row row = spec.row0_window(m0 - n1 * L, m1 + n1 * R);
    if (n0 == 0) grid.set_row(0, row);
    for (long long n = 1; n <= n1; ++n) {
        row = evolve_row(phi, row);
        // Trim to what later rows still need; keeps widths tight.
        long long lo = std::min(m0 - (n1 - n) * L, m0);
        long long hi = std::max(m1 + (n1 - n) * R, m1);
        row = row.slice(std::max(row.lo(), lo), std::min(row.hi(), hi));
        if (n >= n0) grid.set_row(n, row);
    }
    return grid;
}

SpacetimeGrid generate_grid_zxz(const GeneratingPolynomial& phi, const InitialConditionSpec& spec,
                                long long m0, long long m1, long long n0, long long n1) {
    if (spec.p != phi.p()) throw UsageError("initial condition and rule use different primes");
    spec.validate();
    const int l = phi.left_radius();
    const int r = phi.right_radius();
    const long long depth = n0 < 0 ? -n0 : 0;
    SpacetimeGrid grid(phi.field(), m0, m1, n0, n1);

    // Upper half. Base row wide enough for the top row and for the first
    // backward step, whose target is the row-0 window below.
    long long down_lo = m0 + std::min(0LL, depth * l);
    long long down_hi = m1 - std::min(0LL, depth * r);
    {
        const long long L = std::max(l, 0);
        const long long R = std::max(r, 0);
        const long long top = std::max(n1, 0LL);
        Row row = spec.row0_window(std::min(m0 - top * L, down_lo), std::max(m1 + top * R, down_hi));
        if (grid.contains(m0, 0)) grid.set_row(0, row);
        Row up = row;
        for (long long n = 1; n <= n1; ++n) {
            up = evolve_row(phi, up);
            if (n >= n0) grid.set_row(n, up);
        }
        if (depth > 0) {
            // Lower half: each backward row is seeded from the boundary
            // columns of the spec.
            if (static_cast<long long>(spec.columns.size()) < l + r) {
                throw UsageError("Z x Z window needs l + r boundary column specs");
            }
            long long c0 = spec.columns.begin()->first;
            for (const auto& [offset, seq] : spec.columns) {
                (void)seq;
                if (offset < c0) c0 = offset;
            }
            for (long long i = 0; i < l + r; ++i) {
                if (!spec.columns.count(c0 + i)) {
                    throw UsageError("boundary columns must fill a contiguous block of l + r offsets");
                }
            }
            FieldPrime field = spec.field();
            Row target = row;
            for (long long k = 1; k <= depth; ++k) {
                Row seed;
                seed.base = c0;
                seed.values.resize(static_cast<size_t>(l + r));
                for (long long i = 0; i < l + r; ++i) {
                    seed.values[static_cast<size_t>(i)] = spec.columns.at(c0 + i).at(field, k);
                }
                Row prev = extend_backward(phi, target, seed);
                if (-k >= n0) grid.set_row(-k, prev);
                target = prev;
            }
        }
    }
    return grid;
}

} // namespace stda
