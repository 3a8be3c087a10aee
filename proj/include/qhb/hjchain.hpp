#pragma once

// Hirzebruch-Jung (negative) continued fractions for p^2/(pq-1), the
// d-vector recursion, and the three identity checks carried by a
// ChainCertificate:
//
//   d_n = p^2 - pq - 1,   a_n d_n - d_{n-1} = p^2,   sum (2 - a_i) d_i = -pq.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qhb/checked.hpp"
#include "qhb/errors.hpp"
#include "qhb/modarith.hpp"

namespace qhb {

// The negative continued-fraction string (a_1, ..., a_n) of num/den:
//   num/den = a_1 - 1/(a_2 - 1/(... - 1/a_n)),  all a_i >= 2.
struct HJString {
    i64 num = 0;
    i64 den = 1;
    std::vector<i64> a;

    std::size_t length() const { return a.size(); }
};

// Per-pair certificate: the string for p^2/(pq-1), its d-vector, and the
// three identity checks evaluated as data (reported, never asserted).
struct ChainCertificate {
    i64 p = 0;
    i64 q = 0;
    HJString string;
    std::vector<i64> d;
    bool dn_check = false;  // d_n = p^2 - pq - 1
    bool p2_check = false;  // a_n d_n - d_{n-1} = p^2  (d_0 := 0 when n = 1)
    bool sum_check = false; // sum (2 - a_i) d_i = -pq

    bool all_ok() const { return dn_check && p2_check && sum_check; }
};

// The unique all->=2 expansion. ceil-divide, recurse on den/(a*den - num)
// until the remainder vanishes; den decreases strictly, so n <= den.
inline HJString hj_expand(i64 num, i64 den) {
    if (den < 1 || num <= den)
        throw InvalidPair("hj_expand requires num > den >= 1");
    if (gcd(num, den) != 1)
        throw InvalidPair("hj_expand requires gcd(num, den) = 1");
    HJString out;
    out.num = num;
    out.den = den;
    i64 n = num, d = den;
    while (true) {
        i64 a = (n + d - 1) / d;
        out.a.push_back(a);
        i64 r = checked_sub(checked_mul(a, d), n);
        if (r == 0) break;
        n = d;
        d = r;
    }
    return out;
}

// Exact value of a string as a coprime positive pair, computed back to
// front. Entries >= 1 are accepted (>= 2 is the canonical form; the
// relaxation exists for round-trip tests only).
inline std::pair<i64, i64> hj_evaluate(std::span<const i64> a) {
    if (a.empty()) throw InvalidPair("hj_evaluate requires a nonempty string");
    for (i64 ai : a)
        if (ai < 1) throw InvalidPair("hj_evaluate entries must be >= 1");
    i64 num = a.back(), den = 1;
    for (std::size_t i = a.size() - 1; i-- > 0;) {
        i64 next = checked_sub(checked_mul(a[i], num), den);
        den = std::exchange(num, next);
    }
    if (num <= 0) throw InvalidPair("hj_evaluate value must be positive");
    return {num, den};
}

// d_1 = 1, d_2 = a_1 d_1, d_s = a_{s-1} d_{s-1} - d_{s-2}.
inline std::vector<i64> d_vector(std::span<const i64> a) {
    if (a.empty()) throw InvalidPair("d_vector requires a nonempty string");
    std::vector<i64> d(a.size());
    d[0] = 1;
    if (a.size() > 1) d[1] = a[0];
    for (std::size_t s = 2; s < a.size(); ++s)
        d[s] = checked_sub(checked_mul(a[s - 1], d[s - 1]), d[s - 2]);
    return d;
}

inline void require_valid_pair(i64 p, i64 q) {
    if (p < 2 || q < 1 || q >= p)
        throw InvalidPair("require p > q >= 1 and p >= 2");
    if (gcd(p, q) != 1) throw InvalidPair("p and q must be coprime");
}

inline ChainCertificate chain_certificate(i64 p, i64 q) {
    require_valid_pair(p, q);
    ChainCertificate cert;
    cert.p = p;
    cert.q = q;
    const i64 p2 = checked_mul(p, p);
    const i64 pq = checked_mul(p, q);
    cert.string = hj_expand(p2, pq - 1);
    cert.d = d_vector(cert.string.a);

    const std::size_t n = cert.d.size();
    cert.dn_check = cert.d[n - 1] == p2 - pq - 1;
    const i64 d_prev = n >= 2 ? cert.d[n - 2] : 0;
    cert.p2_check =
        checked_sub(checked_mul(cert.string.a[n - 1], cert.d[n - 1]), d_prev) == p2;
    i128 sum = 0;
    for (std::size_t i = 0; i < n; ++i)
        sum = checked_add128(sum, checked_mul128(2 - cert.string.a[i], cert.d[i]));
    cert.sum_check = sum == -i128(pq);
    return cert;
}

} // namespace qhb
