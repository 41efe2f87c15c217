#include "stda/field.hpp"

#include <string>

namespace stda {

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

FieldPrime::FieldPrime(int p) : p_(p) {
    if (p < 2 || p > max_prime || !is_prime(p)) {
        throw UsageError("p must be a prime in [2, " + std::to_string(max_prime) +
                         "], got " + std::to_string(p));
    }
}

Fp FieldPrime::pow(Fp a, long long e) const {
    Fp r = 1;
    Fp b = a;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

Fp FieldPrime::inv(Fp a) const {
    if (a == 0) throw UsageError("division by zero in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
}

} // namespace stda
