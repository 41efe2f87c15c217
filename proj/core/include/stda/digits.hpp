#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stda/field.hpp"

namespace stda {

/// Which numeration system an automaton axis uses.
enum class AxisBase : uint8_t {
    Pos, // base p, nonnegative integers
    Neg, // base -p, all integers
};

std::string to_string(AxisBase b);
AxisBase axis_base_from_string(const std::string& s);

/// Digits of an integer, least significant first, in base p or -p with digit
/// set {0, ..., p-1}. The empty list represents 0; the most significant digit
/// of a nonempty list is nonzero.
struct DigitString {
    int base = 0;                // p or -p
    std::vector<uint8_t> digits; // LSD first

    bool operator==(const DigitString&) const = default;

    /// Human-readable most significant digit first form, "" for 0 printed as
    /// the empty word's stand-in "e".
    std::string msd_string() const;
};

/// Unique representation of m in the given base (+p needs m >= 0).
DigitString encode_base(long long m, int base);

long long decode_base(const DigitString& d);

/// Digit pairs of a point, LSD first, shorter representation padded with
/// zeros at the most significant end.
std::vector<std::pair<uint8_t, uint8_t>> pair_encode(long long m, long long n, int base_m,
                                                     int base_n);

inline int axis_radix(AxisBase b, int p) { return b == AxisBase::Pos ? p : -p; }

} // namespace stda
