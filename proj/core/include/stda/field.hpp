#pragma once

#include <cstdint>

#include "stda/errors.hpp"

namespace stda {

using Fp = uint8_t; // residue in [0, p-1]

/// The prime field F_p, p <= 97. Values are plain residues; this class
/// carries the modulus and the arithmetic.
class FieldPrime {
public:
    static constexpr int max_prime = 97;

    explicit FieldPrime(int p);

    int p() const { return p_; }

    Fp reduce(long long v) const {
        long long r = v % p_;
        return static_cast<Fp>(r < 0 ? r + p_ : r);
    }

    Fp add(Fp a, Fp b) const { return static_cast<Fp>((a + b) % p_); }
    Fp sub(Fp a, Fp b) const { return static_cast<Fp>((a + p_ - b) % p_); }
    Fp neg(Fp a) const { return static_cast<Fp>((p_ - a) % p_); }
    Fp mul(Fp a, Fp b) const { return static_cast<Fp>((a * b) % p_); }
    Fp pow(Fp a, long long e) const;
    Fp inv(Fp a) const; // throws UsageError on 0

    bool operator==(const FieldPrime& o) const { return p_ == o.p_; }
    bool operator!=(const FieldPrime& o) const { return p_ != o.p_; }

private:
    int p_;
};

/// Deterministic primality check by trial division (enough for p <= 97,
/// kept general for small inputs).
bool is_prime(long long n);

} // namespace stda
