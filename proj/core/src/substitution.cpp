#include "stda/substitution.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace stda {

void Substitution::validate() const {
    if (alphabet < 1) throw UsageError("substitution alphabet must be nonempty");
    if (length < 1) throw UsageError("substitution length must be >= 1");
    if (images.size() != static_cast<size_t>(alphabet) || coding.size() != static_cast<size_t>(alphabet)) {
        throw UsageError("substitution tables must cover the whole alphabet");
    }
    for (int a = 0; a < alphabet; ++a) {
        if (images[static_cast<size_t>(a)].size() != static_cast<size_t>(length)) {
            throw UsageError("substitution image of letter " + std::to_string(a) +
                             " does not have length " + std::to_string(length));
        }
        for (int x : images[static_cast<size_t>(a)]) {
            if (x < 0 || x >= alphabet) throw UsageError("substitution image letter out of range");
        }
        if (coding[static_cast<size_t>(a)] >= field.p()) throw UsageError("coding value out of field range");
    }
}

bool Substitution::coding_is_identity() const {
    if (alphabet > field.p()) return false;
    for (int a = 0; a < alphabet; ++a) {
        if (coding[static_cast<size_t>(a)] != a) return false;
    }
    return true;
}

Substitution Substitution::power(int k) const {
    validate();
    if (k < 1) throw UsageError("substitution power must be >= 1");
    Substitution result = *this;
    for (int step = 1; step < k; ++step) {
        Substitution next{field, alphabet, result.length * length, {}, coding};
        next.images.resize(static_cast<size_t>(alphabet));
        for (int a = 0; a < alphabet; ++a) {
            auto& word = next.images[static_cast<size_t>(a)];
            word.reserve(static_cast<size_t>(next.length));
            for (int b : result.images[static_cast<size_t>(a)]) {
                const auto& img = images[static_cast<size_t>(b)];
                word.insert(word.end(), img.begin(), img.end());
            }
        }
        result = std::move(next);
    }
    return result;
}

Substitution Substitution::reversed() const {
    Substitution r = *this;
    for (auto& word : r.images) std::reverse(word.begin(), word.end());
    return r;
}

void Substitution2D::validate() const {
    if (alphabet < 1 || length < 1) throw UsageError("invalid 2-D substitution shape");
    if (images.size() != static_cast<size_t>(alphabet) || coding.size() != static_cast<size_t>(alphabet)) {
        throw UsageError("2-D substitution tables must cover the whole alphabet");
    }
    for (const auto& block : images) {
        if (block.size() != static_cast<size_t>(length)) throw UsageError("2-D image block must be length x length");
        for (const auto& row : block) {
            if (row.size() != static_cast<size_t>(length)) throw UsageError("2-D image block must be length x length");
            for (int x : row) {
                if (x < 0 || x >= alphabet) throw UsageError("2-D image letter out of range");
            }
        }
    }
}

std::vector<int> fixed_point_prefix(const Substitution& theta, int seed, size_t n) {
    theta.validate();
    if (seed < 0 || seed >= theta.alphabet) throw UsageError("seed letter out of range");
    if (theta.column(0, seed) != seed) {
        throw UsageError("seed letter " + std::to_string(seed) +
                         " is not prolongable: theta(" + std::to_string(seed) +
                         ") does not start with it");
    }
    std::vector<int> word{seed};
    if (theta.length == 1) {
        // theta(seed) = seed forever; the fixed point is constant.
        return std::vector<int>(n, seed);
    }
    while (word.size() < n) {
        std::vector<int> next;
        next.reserve(word.size() * static_cast<size_t>(theta.length));
        for (int a : word) {
            const auto& img = theta.images[static_cast<size_t>(a)];
            next.insert(next.end(), img.begin(), img.end());
            if (next.size() >= n) break;
        }
        word = std::move(next);
    }
    word.resize(n);
    return word;
}

std::vector<Fp> coded_fixed_point_prefix(const Substitution& theta, int seed, size_t n) {
    std::vector<int> raw = fixed_point_prefix(theta, seed, n);
    std::vector<Fp> out(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) out[i] = theta.coding[static_cast<size_t>(raw[i])];
    return out;
}

Dfao subst_to_dfao(const Substitution& theta, int seed) {
    theta.validate();
    const int p = theta.field.p();
    int block = 0; // digits per column: length must be p^block
    long long q = 1;
    while (q < theta.length) {
        q *= p;
        ++block;
    }
    if (q != theta.length) {
        throw UsageError("subst_to_dfao needs a substitution of length p^e");
    }
    if (seed < 0 || seed >= theta.alphabet) throw UsageError("seed letter out of range");
    if (theta.column(0, seed) != seed) {
        throw UsageError("seed letter " + std::to_string(seed) + " is not prolongable");
    }
    if (theta.length == 1) {
        // The fixed point is the constant seed letter.
        return constant_dfao(theta.field, 1, {AxisBase::Pos, AxisBase::Pos},
                             theta.coding[static_cast<size_t>(seed)]);
    }
    const int A = theta.alphabet;
    // States are compositions theta_{c_0} . theta_{c_1} . ... as self-maps of
    // the alphabet, where c_k are the base-length column indices; reading a
    // column appends its map on the right. For length p^e each column is
    // assembled from e base-p digits, so a state also carries the partial
    // digit buffer of the current column.
    struct State {
        std::vector<int> h;
        int t;        // digits consumed of the current column
        int acc;      // their value, lowest digit first
        auto operator<=>(const State&) const = default;
    };
    std::map<State, int> index;
    std::vector<State> states;
    Dfao out(theta.field, 1, {AxisBase::Pos, AxisBase::Pos});
    auto output_of = [&](const State& s) {
        // If the input ends mid-column the remaining digits are zero, so the
        // column index is exactly the buffer value.
        int letter = s.t == 0 ? seed : theta.column(s.acc, seed);
        return theta.coding[static_cast<size_t>(s.h[static_cast<size_t>(letter)])];
    };
    auto intern = [&](State s) {
        auto [it, inserted] = index.try_emplace(s, static_cast<int>(states.size()));
        if (inserted) {
            out.add_state(output_of(s));
            states.push_back(std::move(s));
        }
        return it->second;
    };
    std::vector<int> identity(static_cast<size_t>(A));
    for (int a = 0; a < A; ++a) identity[static_cast<size_t>(a)] = a;
    intern(State{identity, 0, 0});
    for (size_t s = 0; s < states.size(); ++s) {
        const State current = states[s]; // copy: intern() may reallocate
        int weight = 1;
        for (int t = 0; t < current.t; ++t) weight *= p;
        for (int d = 0; d < p; ++d) {
            State next = current;
            next.acc += d * weight;
            if (++next.t == block) {
                std::vector<int> h(static_cast<size_t>(A));
                for (int a = 0; a < A; ++a) {
                    h[static_cast<size_t>(a)] = current.h[static_cast<size_t>(theta.column(next.acc, a))];
                }
                next = State{std::move(h), 0, 0};
            }
            out.set_transition(static_cast<int>(s), d, intern(std::move(next)));
        }
    }
    out.set_initial(0);
    return minimize(out);
}

namespace {

/// Reversal construction common to both Cobham directions: states of the
/// MSD-first automaton are maps S -> S. Returns the map automaton plus a
/// seed state fixed by the all-zero tuple (adjoined when needed).
struct ReversalResult {
    std::vector<std::vector<int>> maps; // letter -> state map of the source
    std::vector<int> zero_self;         // transition table letter x tuple -> letter
    std::vector<Fp> outputs;
    int seed = 0;
};

ReversalResult reverse_to_msd(const Dfao& a) {
    const int S = a.state_count();
    const int tuples = a.tuple_count();
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> maps;
    std::vector<int> table;
    auto intern = [&](const std::vector<int>& g) {
        auto [it, inserted] = index.try_emplace(g, static_cast<int>(maps.size()));
        if (inserted) maps.push_back(g);
        return it->second;
    };
    std::vector<int> identity(static_cast<size_t>(S));
    for (int s = 0; s < S; ++s) identity[static_cast<size_t>(s)] = s;
    intern(identity);
    for (size_t g = 0; g < maps.size(); ++g) {
        for (int t = 0; t < tuples; ++t) {
            // Reading digit tuple t (one position more significant) turns the
            // partial run g into s -> g(delta(s, t)).
            std::vector<int> h(static_cast<size_t>(S));
            for (int s = 0; s < S; ++s) {
                h[static_cast<size_t>(s)] = maps[g][static_cast<size_t>(a.next(s, t))];
            }
            table.push_back(intern(h));
        }
    }
    ReversalResult r;
    r.maps = std::move(maps);
    const int letters = static_cast<int>(r.maps.size());
    r.zero_self.resize(static_cast<size_t>(letters) * static_cast<size_t>(tuples));
    for (int g = 0; g < letters; ++g) {
        for (int t = 0; t < tuples; ++t) {
            r.zero_self[static_cast<size_t>(g) * static_cast<size_t>(tuples) + static_cast<size_t>(t)] =
                table[static_cast<size_t>(g) * static_cast<size_t>(tuples) + static_cast<size_t>(t)];
        }
    }
    r.outputs.resize(static_cast<size_t>(letters));
    for (int g = 0; g < letters; ++g) {
        r.outputs[static_cast<size_t>(g)] = a.output(r.maps[static_cast<size_t>(g)][static_cast<size_t>(a.initial())]);
    }
    // Seed letter: a state fixed by digit tuple 0. The identity map reads a
    // leading zero into the zero map, which is the identity only when every
    // state is 0-fixed, so adjoin a fresh seed otherwise.
    if (r.zero_self[0] == 0) {
        r.seed = 0;
    } else {
        int fresh = letters;
        r.seed = fresh;
        for (int t = 0; t < tuples; ++t) {
            r.zero_self.push_back(t == 0 ? fresh : r.zero_self[static_cast<size_t>(t)]);
        }
        r.outputs.push_back(r.outputs[0]);
    }
    return r;
}

} // namespace

Cobham1D dfao_to_subst_1d(const Dfao& a) {
    if (a.arity() != 1) throw UsageError("dfao_to_subst_1d needs a 1-D automaton");
    if (a.axis(0) != AxisBase::Pos) {
        throw UsageError("dfao_to_subst: negative-base axes are unsupported; convert first");
    }
    Dfao m = minimize(a);
    ReversalResult r = reverse_to_msd(m);
    const int p = m.p();
    const int letters = static_cast<int>(r.outputs.size());
    Substitution theta{m.field(), letters, p, {}, r.outputs};
    theta.images.resize(static_cast<size_t>(letters));
    for (int g = 0; g < letters; ++g) {
        auto& word = theta.images[static_cast<size_t>(g)];
        word.resize(static_cast<size_t>(p));
        for (int d = 0; d < p; ++d) {
            word[static_cast<size_t>(d)] = r.zero_self[static_cast<size_t>(g) * static_cast<size_t>(p) + static_cast<size_t>(d)];
        }
    }
    theta.validate();
    return Cobham1D{std::move(theta), r.seed};
}

Cobham2D dfao_to_subst_2d(const Dfao& a) {
    if (a.arity() != 2) throw UsageError("dfao_to_subst_2d needs a 2-D automaton");
    if (a.axis(0) != AxisBase::Pos || a.axis(1) != AxisBase::Pos) {
        throw UsageError("dfao_to_subst: negative-base axes are unsupported; convert first");
    }
    Dfao m = minimize(a);
    ReversalResult r = reverse_to_msd(m);
    const int p = m.p();
    const int letters = static_cast<int>(r.outputs.size());
    Substitution2D theta{m.field(), letters, p, {}, r.outputs};
    theta.images.resize(static_cast<size_t>(letters));
    for (int g = 0; g < letters; ++g) {
        auto& block = theta.images[static_cast<size_t>(g)];
        block.assign(static_cast<size_t>(p), std::vector<int>(static_cast<size_t>(p)));
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < p; ++j) {
                block[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    r.zero_self[static_cast<size_t>(g) * static_cast<size_t>(p * p) + static_cast<size_t>(i * p + j)];
            }
        }
    }
    theta.validate();
    return Cobham2D{std::move(theta), r.seed};
}

std::vector<std::vector<int>> fixed_point_block(const Substitution2D& theta, int seed, size_t size) {
    theta.validate();
    if (seed < 0 || seed >= theta.alphabet) throw UsageError("seed letter out of range");
    if (theta.images[static_cast<size_t>(seed)][0][0] != seed) {
        throw UsageError("2-D seed letter is not prolongable");
    }
    const size_t q = static_cast<size_t>(theta.length);
    std::vector<std::vector<int>> block{{seed}};
    while (block.size() < size) {
        size_t old = block.size();
        std::vector<std::vector<int>> next(old * q, std::vector<int>(old * q));
        for (size_t m = 0; m < old; ++m) {
            for (size_t n = 0; n < old; ++n) {
                const auto& img = theta.images[static_cast<size_t>(block[m][n])];
                for (size_t i = 0; i < q; ++i) {
                    for (size_t j = 0; j < q; ++j) {
                        next[m * q + i][n * q + j] = img[i][j];
                    }
                }
            }
        }
        block = std::move(next);
    }
    for (auto& row : block) row.resize(size);
    block.resize(size);
    return block;
}

bool is_bijective(const Substitution& theta) {
    theta.validate();
    if (theta.alphabet != theta.field.p()) {
        throw UsageError("is_bijective expects the alphabet to be F_p itself");
    }
    for (int j = 0; j < theta.length; ++j) {
        std::vector<char> seen(static_cast<size_t>(theta.alphabet), 0);
        for (int a = 0; a < theta.alphabet; ++a) {
            int image = theta.column(j, a);
            if (seen[static_cast<size_t>(image)]) return false;
            seen[static_cast<size_t>(image)] = 1;
        }
    }
    return true;
}

IncidenceMatrix incidence_matrix(const Substitution& theta) {
    theta.validate();
    IncidenceMatrix m;
    m.alphabet = theta.alphabet;
    m.counts.assign(static_cast<size_t>(theta.alphabet),
                    std::vector<long long>(static_cast<size_t>(theta.alphabet), 0));
    for (int b = 0; b < theta.alphabet; ++b) {
        for (int a : theta.images[static_cast<size_t>(b)]) {
            ++m.counts[static_cast<size_t>(a)][static_cast<size_t>(b)];
        }
    }
    return m;
}

bool is_primitive(const Substitution& theta) {
    IncidenceMatrix m = incidence_matrix(theta);
    const int A = m.alphabet;
    if (A == 1) return true;
    // Wielandt: primitive iff M^((A-1)^2 + 1) is entrywise positive.
    const long long target = static_cast<long long>(A - 1) * (A - 1) + 1;
    auto mul_bool = [A](const std::vector<std::vector<char>>& x, const std::vector<std::vector<char>>& y) {
        std::vector<std::vector<char>> z(static_cast<size_t>(A), std::vector<char>(static_cast<size_t>(A), 0));
        for (int i = 0; i < A; ++i) {
            for (int k = 0; k < A; ++k) {
                if (!x[static_cast<size_t>(i)][static_cast<size_t>(k)]) continue;
                for (int j = 0; j < A; ++j) {
                    if (y[static_cast<size_t>(k)][static_cast<size_t>(j)]) z[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
                }
            }
        }
        return z;
    };
    std::vector<std::vector<char>> base(static_cast<size_t>(A), std::vector<char>(static_cast<size_t>(A), 0));
    for (int i = 0; i < A; ++i) {
        for (int j = 0; j < A; ++j) base[static_cast<size_t>(i)][static_cast<size_t>(j)] = m.counts[static_cast<size_t>(i)][static_cast<size_t>(j)] > 0;
    }
    std::vector<std::vector<char>> acc;
    std::vector<std::vector<char>> sq = base;
    long long e = target;
    while (e > 0) {
        if (e & 1) acc = acc.empty() ? sq : mul_bool(acc, sq);
        sq = mul_bool(sq, sq);
        e >>= 1;
    }
    for (const auto& row : acc) {
        for (char c : row) {
            if (!c) return false;
        }
    }
    return true;
}

CoincidenceResult has_coincidence(const Substitution& theta, int max_depth) {
    theta.validate();
    if (max_depth < 1) throw UsageError("max_depth must be >= 1");
    const int A = theta.alphabet;
    // BFS over image sets; FIFO order with ascending column digits yields the
    // shallowest witness with the lexicographically least column word.
    struct Node {
        std::vector<char> set;
        int parent;
        int digit;
        int depth;
    };
    std::vector<Node> nodes;
    std::set<std::vector<char>> seen;
    std::vector<char> full(static_cast<size_t>(A), 1);
    nodes.push_back({full, -1, -1, 0});
    seen.insert(full);
    for (size_t i = 0; i < nodes.size(); ++i) {
        const int depth = nodes[i].depth;
        for (int j = 0; j < theta.length; ++j) {
            std::vector<char> next(static_cast<size_t>(A), 0);
            int count = 0;
            int survivor = -1;
            for (int a = 0; a < A; ++a) {
                if (!nodes[i].set[static_cast<size_t>(a)]) continue;
                int image = theta.column(j, a);
                if (!next[static_cast<size_t>(image)]) {
                    next[static_cast<size_t>(image)] = 1;
                    ++count;
                    survivor = image;
                }
            }
            if (count == 1) {
                CoincidenceWitness w;
                w.depth = depth + 1;
                w.surviving_letter = survivor;
                // Digits along the path: the first applied map is the most
                // significant digit of the column index.
                std::vector<uint8_t> digits{static_cast<uint8_t>(j)};
                for (int k = static_cast<int>(i); nodes[static_cast<size_t>(k)].parent >= 0; k = nodes[static_cast<size_t>(k)].parent) {
                    digits.push_back(static_cast<uint8_t>(nodes[static_cast<size_t>(k)].digit));
                }
                std::reverse(digits.begin(), digits.end());
                w.column_digits = digits;
                long long value = 0;
                bool overflow = false;
                for (uint8_t d : digits) {
                    if (value > (1LL << 62) / theta.length) {
                        overflow = true;
                        break;
                    }
                    value = value * theta.length + d;
                }
                w.column_index = overflow ? -1 : value;
                if (w.depth <= max_depth) {
                    return CoincidenceResult{w, false};
                }
                return CoincidenceResult{std::nullopt, false};
            }
            auto [it, inserted] = seen.insert(next);
            if (inserted) nodes.push_back({next, static_cast<int>(i), j, depth + 1});
        }
    }
    // Saturated without a singleton.
    return CoincidenceResult{std::nullopt, true};
}

Substitution parity_substitution(FieldPrime field) {
    const int p = field.p();
    Substitution theta{field, p, p, {}, {}};
    theta.images.resize(static_cast<size_t>(p));
    theta.coding.resize(static_cast<size_t>(p));
    for (int a = 0; a < p; ++a) {
        auto& word = theta.images[static_cast<size_t>(a)];
        word.resize(static_cast<size_t>(p));
        for (int i = 0; i < p; ++i) word[static_cast<size_t>(i)] = (i + a) % p;
        theta.coding[static_cast<size_t>(a)] = static_cast<Fp>(a);
    }
    return theta;
}

namespace {

bool compact_letters(int alphabet) { return alphabet <= 10; }

std::string word_to_string(const std::vector<int>& w, int alphabet) {
    std::ostringstream out;
    if (compact_letters(alphabet)) {
        for (int a : w) out << a;
    } else {
        for (size_t i = 0; i < w.size(); ++i) {
            if (i) out << " ";
            out << w[i];
        }
    }
    return out.str();
}

std::vector<int> word_from_string(const std::string& s, int alphabet) {
    std::vector<int> w;
    if (compact_letters(alphabet)) {
        for (char c : s) {
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            if (c < '0' || c > '9') throw UsageError("bad letter '" + std::string(1, c) + "' in word");
            w.push_back(c - '0');
        }
    } else {
        std::istringstream in(s);
        int a;
        while (in >> a) w.push_back(a);
    }
    return w;
}

} // namespace

std::string print_substitution(const Substitution& s, int seed) {
    s.validate();
    std::ostringstream out;
    out << "stdsubst v1\n";
    out << "p " << s.field.p() << "\n";
    out << "length " << s.length << "\n";
    out << "alphabet " << s.alphabet << "\n";
    for (int a = 0; a < s.alphabet; ++a) {
        out << "map " << a << " -> " << word_to_string(s.images[static_cast<size_t>(a)], s.alphabet) << "\n";
    }
    out << "coding";
    for (int a = 0; a < s.alphabet; ++a) out << " " << a << "=" << static_cast<int>(s.coding[static_cast<size_t>(a)]);
    out << "\n";
    if (seed >= 0) out << "seed " << seed << "\n";
    return out.str();
}

Substitution parse_substitution(const std::string& text, int* seed_out) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (line != "stdsubst v1") throw UsageError("substitution file: expected header \"stdsubst v1\"");
    int p = 0, length = 0, alphabet = 0;
    std::vector<std::pair<int, std::string>> map_lines;
    std::string coding_line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "p") {
            ls >> p;
        } else if (key == "length") {
            ls >> length;
        } else if (key == "alphabet") {
            ls >> alphabet;
        } else if (key == "seed") {
            int seed = 0;
            ls >> seed;
            if (seed_out) *seed_out = seed;
        } else if (key == "map") {
            int a;
            std::string arrow;
            ls >> a >> arrow;
            if (arrow != "->") throw UsageError("substitution file: malformed map line");
            std::string rest;
            std::getline(ls, rest);
            map_lines.emplace_back(a, rest);
        } else if (key == "coding") {
            std::getline(ls, coding_line);
        } else {
            throw UsageError("substitution file: unknown key \"" + key + "\"");
        }
    }
    FieldPrime field(p);
    if (length == 0) length = p;
    Substitution s{field, alphabet, length, {}, {}};
    s.images.resize(static_cast<size_t>(alphabet));
    s.coding.assign(static_cast<size_t>(alphabet), 0);
    std::vector<char> have(static_cast<size_t>(alphabet), 0);
    for (const auto& [a, word] : map_lines) {
        if (a < 0 || a >= alphabet) throw UsageError("substitution file: map letter out of range");
        s.images[static_cast<size_t>(a)] = word_from_string(word, alphabet);
        have[static_cast<size_t>(a)] = 1;
    }
    for (char h : have) {
        if (!h) throw UsageError("substitution file: missing map line for some letter");
    }
    {
        std::istringstream cs(coding_line);
        std::string item;
        while (cs >> item) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw UsageError("substitution file: malformed coding entry");
            int a = std::stoi(item.substr(0, eq));
            int v = std::stoi(item.substr(eq + 1));
            if (a < 0 || a >= alphabet) throw UsageError("substitution file: coding letter out of range");
            s.coding[static_cast<size_t>(a)] = field.reduce(v);
        }
    }
    s.validate();
    return s;
}

std::string print_substitution2d(const Substitution2D& s, int seed) {
    s.validate();
    std::ostringstream out;
    out << "stdsubst2d v1\n";
    out << "p " << s.field.p() << "\n";
    out << "length " << s.length << "\n";
    out << "alphabet " << s.alphabet << "\n";
    for (int a = 0; a < s.alphabet; ++a) {
        out << "map " << a << " ->";
        for (int i = 0; i < s.length; ++i) {
            out << (i == 0 ? " " : " / ");
            out << word_to_string(s.images[static_cast<size_t>(a)][static_cast<size_t>(i)], s.alphabet);
        }
        out << "\n";
    }
    out << "coding";
    for (int a = 0; a < s.alphabet; ++a) out << " " << a << "=" << static_cast<int>(s.coding[static_cast<size_t>(a)]);
    out << "\n";
    if (seed >= 0) out << "seed " << seed << "\n";
    return out.str();
}

Substitution2D parse_substitution2d(const std::string& text, int* seed_out) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (line != "stdsubst2d v1") throw UsageError("2-D substitution file: expected header \"stdsubst2d v1\"");
    int p = 0, length = 0, alphabet = 0;
    std::vector<std::pair<int, std::string>> map_lines;
    std::string coding_line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "p") {
            ls >> p;
        } else if (key == "length") {
            ls >> length;
        } else if (key == "alphabet") {
            ls >> alphabet;
        } else if (key == "seed") {
            int seed = 0;
            ls >> seed;
            if (seed_out) *seed_out = seed;
        } else if (key == "map") {
            int a;
            std::string arrow;
            ls >> a >> arrow;
            if (arrow != "->") throw UsageError("2-D substitution file: malformed map line");
            std::string rest;
            std::getline(ls, rest);
            map_lines.emplace_back(a, rest);
        } else if (key == "coding") {
            std::getline(ls, coding_line);
        } else {
            throw UsageError("2-D substitution file: unknown key \"" + key + "\"");
        }
    }
    FieldPrime field(p);
    if (length == 0) length = p;
    Substitution2D s{field, alphabet, length, {}, {}};
    s.images.resize(static_cast<size_t>(alphabet));
    s.coding.assign(static_cast<size_t>(alphabet), 0);
    for (const auto& [a, rows] : map_lines) {
        if (a < 0 || a >= alphabet) throw UsageError("2-D substitution file: map letter out of range");
        auto& block = s.images[static_cast<size_t>(a)];
        std::string row;
        std::istringstream rs(rows);
        while (std::getline(rs, row, '/')) block.push_back(word_from_string(row, alphabet));
    }
    {
        std::istringstream cs(coding_line);
        std::string item;
        while (cs >> item) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw UsageError("2-D substitution file: malformed coding entry");
            int a = std::stoi(item.substr(0, eq));
            int v = std::stoi(item.substr(eq + 1));
            s.coding[static_cast<size_t>(a)] = field.reduce(v);
        }
    }
    s.validate();
    return s;
}

} // namespace stda
