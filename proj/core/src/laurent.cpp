#include "stda/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace stda {

LaurentPoly::LaurentPoly(FieldPrime field, std::vector<Term> terms) : field_(field) {
    std::map<int, int> acc;
    for (const auto& [e, c] : terms) acc[e] += c;
    terms_.reserve(acc.size());
    for (const auto& [e, c] : acc) {
        Fp r = field_.reduce(c);
        if (r != 0) terms_.emplace_back(e, r);
    }
}

LaurentPoly LaurentPoly::monomial(FieldPrime field, int exponent, Fp coeff) {
    LaurentPoly f(field);
    Fp r = field.reduce(coeff);
    if (r != 0) f.terms_.emplace_back(exponent, r);
    return f;
}

int LaurentPoly::min_exponent() const {
    if (terms_.empty()) throw UsageError("zero polynomial has no support");
    return terms_.front().first;
}

int LaurentPoly::max_exponent() const {
    if (terms_.empty()) throw UsageError("zero polynomial has no support");
    return terms_.back().first;
}

Fp LaurentPoly::coeff(int exponent) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exponent,
                               [](const Term& t, int e) { return t.first < e; });
    if (it != terms_.end() && it->first == exponent) return it->second;
    return 0;
}

Fp LaurentPoly::value_at_one() const {
    long long s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return field_.reduce(s);
}

LaurentPoly LaurentPoly::add(const LaurentPoly& o) const {
    if (field_ != o.field_) throw UsageError("mismatched primes in Laurent addition");
    LaurentPoly r(field_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
            r.terms_.push_back(*a++);
        } else if (a == terms_.end() || b->first < a->first) {
            r.terms_.push_back(*b++);
        } else {
            Fp c = field_.add(a->second, b->second);
            if (c != 0) r.terms_.emplace_back(a->first, c);
            ++a;
            ++b;
        }
    }
    return r;
}

LaurentPoly LaurentPoly::sub(const LaurentPoly& o) const { return add(o.scaled(field_.reduce(-1))); }

LaurentPoly LaurentPoly::scaled(Fp c) const {
    LaurentPoly r(field_);
    c = field_.reduce(c);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& [e, v] : terms_) r.terms_.emplace_back(e, field_.mul(v, c));
    return r;
}

LaurentPoly LaurentPoly::shifted(int e) const {
    LaurentPoly r(field_);
    r.terms_.reserve(terms_.size());
    for (const auto& [e0, c] : terms_) r.terms_.emplace_back(e0 + e, c);
    return r;
}

LaurentPoly LaurentPoly::dilated(int k) const {
    if (k < 1) throw UsageError("dilation factor must be >= 1");
    LaurentPoly r(field_);
    r.terms_.reserve(terms_.size());
    for (const auto& [e, c] : terms_) r.terms_.emplace_back(e * k, c);
    return r;
}

LaurentPoly LaurentPoly::reflected() const {
    LaurentPoly r(field_);
    r.terms_.reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        r.terms_.emplace_back(-it->first, it->second);
    }
    return r;
}

LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.field() != b.field()) throw UsageError("mismatched primes in Laurent product");
    if (a.is_zero() || b.is_zero()) return LaurentPoly::zero(a.field());
    std::map<int, long long> acc;
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            acc[ea + eb] += static_cast<long long>(ca) * cb;
        }
    }
    std::vector<LaurentPoly::Term> terms;
    terms.reserve(acc.size());
    for (const auto& [e, c] : acc) {
        Fp r = a.field().reduce(c);
        if (r != 0) terms.emplace_back(e, r);
    }
    return LaurentPoly(a.field(), std::move(terms));
}

LaurentPoly frobenius_power(const LaurentPoly& phi, long long n) {
    const FieldPrime& field = phi.field();
    if (n == 0) return LaurentPoly::one(field);
    if (phi.is_zero()) return LaurentPoly::zero(field);
    const int p = field.p();
    // Small powers by repeated multiplication, one per base-p digit value.
    std::vector<LaurentPoly> small;
    small.reserve(p);
    small.push_back(LaurentPoly::one(field));
    for (int d = 1; d < p; ++d) small.push_back(laurent_mul(small.back(), phi));

    LaurentPoly result = LaurentPoly::one(field);
    long long scale = 1;
    while (n > 0) {
        int d = static_cast<int>(n % p);
        if (d != 0) {
            result = laurent_mul(result, small[d].dilated(static_cast<int>(scale)));
        }
        n /= p;
        if (n > 0) scale *= p;
    }
    return result;
}

LaurentPoly cartier_poly(const LaurentPoly& f, int i) {
    const int p = f.p();
    if (i < 0 || i >= p) {
        throw UsageError("Cartier digit out of range: " + std::to_string(i));
    }
    std::vector<LaurentPoly::Term> terms;
    for (const auto& [e, c] : f.terms()) {
        int rem = e % p;
        if (rem < 0) rem += p;
        if (rem == i) terms.emplace_back((e - i) / p, c);
    }
    return LaurentPoly(f.field(), std::move(terms));
}

namespace {

void skip_ws(const std::string& s, size_t& pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
}

} // namespace

LaurentPoly parse_laurent(const std::string& text, FieldPrime field) {
    std::vector<LaurentPoly::Term> terms;
    size_t pos = 0;
    skip_ws(text, pos);
    if (pos == text.size()) throw UsageError("empty polynomial expression");
    bool first = true;
    while (pos < text.size()) {
        if (!first) {
            if (text[pos] != '+') {
                throw UsageError("expected '+' in polynomial expression near \"" +
                                 text.substr(pos) + "\"");
            }
            ++pos;
            skip_ws(text, pos);
        }
        first = false;
        // term := digits | digits 'x' ['^' int] | 'x' ['^' int]
        long long coeff = 1;
        bool saw_digits = false;
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            coeff = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                coeff = coeff * 10 + (text[pos] - '0');
                ++pos;
            }
            saw_digits = true;
        }
        skip_ws(text, pos);
        int exponent = 0;
        if (pos < text.size() && text[pos] == 'x') {
            ++pos;
            exponent = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                bool negative = false;
                if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
                    negative = text[pos] == '-';
                    ++pos;
                }
                if (pos == text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
                    throw UsageError("malformed exponent in polynomial expression");
                }
                long long e = 0;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                    e = e * 10 + (text[pos] - '0');
                    ++pos;
                }
                exponent = static_cast<int>(negative ? -e : e);
            }
        } else if (!saw_digits) {
            throw UsageError("malformed term in polynomial expression near \"" +
                             text.substr(pos) + "\"");
        }
        terms.emplace_back(exponent, field.reduce(coeff));
        skip_ws(text, pos);
    }
    return LaurentPoly(field, std::move(terms));
}

std::string print_laurent(const LaurentPoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    const auto& terms = f.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) out << " + ";
        first = false;
        if (e == 0) {
            out << static_cast<int>(c);
        } else {
            if (c != 1) out << static_cast<int>(c);
            out << "x";
            if (e != 1) out << "^" << e;
        }
    }
    return out.str();
}

GeneratingPolynomial::GeneratingPolynomial(LaurentPoly poly) : poly_(std::move(poly)) {
    if (poly_.is_zero()) throw UsageError("generating polynomial must be nonzero");
    left_radius_ = poly_.max_exponent();
    right_radius_ = -poly_.min_exponent();
}

GeneratingPolynomial GeneratingPolynomial::reflected() const {
    return GeneratingPolynomial(poly_.reflected());
}

GeneratingPolynomial GeneratingPolynomial::left_normalized() const {
    return GeneratingPolynomial(poly_.shifted(-left_radius_));
}

} // namespace stda
