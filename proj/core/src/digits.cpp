#include "stda/digits.hpp"

namespace stda {

std::string to_string(AxisBase b) { return b == AxisBase::Pos ? "pos" : "neg"; }

AxisBase axis_base_from_string(const std::string& s) {
    if (s == "pos" || s == "p") return AxisBase::Pos;
    if (s == "neg" || s == "negp" || s == "-p") return AxisBase::Neg;
    throw UsageError("unknown axis base \"" + s + "\" (expected pos|neg)");
}

std::string DigitString::msd_string() const {
    if (digits.empty()) return "e";
    std::string s;
    s.reserve(digits.size());
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (*it < 10) {
            s.push_back(static_cast<char>('0' + *it));
        } else {
            s += "[" + std::to_string(*it) + "]";
        }
    }
    return s;
}

DigitString encode_base(long long m, int base) {
    const int p = base > 0 ? base : -base;
    if (p < 2) throw UsageError("radix must have |base| >= 2");
    if (base > 0 && m < 0) {
        throw UsageError("negative integer has no base-" + std::to_string(base) +
                         " representation");
    }
    DigitString out;
    out.base = base;
    while (m != 0) {
        long long d = m % p;
        if (d < 0) d += p;
        out.digits.push_back(static_cast<uint8_t>(d));
        m = (m - d) / base;
    }
    return out;
}

long long decode_base(const DigitString& d) {
    long long value = 0;
    long long weight = 1;
    for (uint8_t digit : d.digits) {
        value += weight * digit;
        weight *= d.base;
    }
    return value;
}

std::vector<std::pair<uint8_t, uint8_t>> pair_encode(long long m, long long n, int base_m,
                                                     int base_n) {
    DigitString dm = encode_base(m, base_m);
    DigitString dn = encode_base(n, base_n);
    size_t len = std::max(dm.digits.size(), dn.digits.size());
    std::vector<std::pair<uint8_t, uint8_t>> out;
    out.reserve(len);
    for (size_t k = 0; k < len; ++k) {
        uint8_t a = k < dm.digits.size() ? dm.digits[k] : 0;
        uint8_t b = k < dn.digits.size() ? dn.digits[k] : 0;
        out.emplace_back(a, b);
    }
    return out;
}

} // namespace stda
