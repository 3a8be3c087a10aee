#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "qhb/errors.hpp"

namespace qhb {

using i64 = std::int64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// All library arithmetic is checked 64-bit with 128-bit intermediates.
// Anything that would leave the i64 range throws Overflow.

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r))
        throw Overflow("integer addition overflow");
    return r;
}

inline i64 checked_sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r))
        throw Overflow("integer subtraction overflow");
    return r;
}

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Overflow("integer multiplication overflow");
    return r;
}

inline i128 checked_add128(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw Overflow("128-bit addition overflow");
    return r;
}

inline i128 checked_sub128(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r))
        throw Overflow("128-bit subtraction overflow");
    return r;
}

inline i128 checked_mul128(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw Overflow("128-bit multiplication overflow");
    return r;
}

inline i64 narrow_to_i64(i128 v) {
    if (v > i128(std::numeric_limits<i64>::max()) ||
        v < i128(std::numeric_limits<i64>::min()))
        throw Overflow("value does not fit in 64 bits");
    return static_cast<i64>(v);
}

// Least nonnegative residue of a mod m, m >= 1. Safe for any i64 a.
inline i64 normalize_mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

// (a * b) mod m for a, b in [0, m). Exact for any m that fits in i64.
inline i64 mul_mod(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<u128>(a) * static_cast<u128>(b) %
                            static_cast<u128>(m));
}

inline i64 pow_mod(i64 base, i64 exp, i64 m) {
    if (m == 1) return 0;
    i64 result = 1;
    base = normalize_mod(base, m);
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

} // namespace qhb
