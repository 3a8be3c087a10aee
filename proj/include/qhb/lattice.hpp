#pragma once

// The extended unimodular Gram matrix: tridiagonal -a_1..-a_n core with unit
// off-diagonals, corner entries c, bottom-right -a_{n+1}. gram_extend solves
// det = +-1 for the unique integer a_{n+1}; the determinant is confirmed two
// independent ways (continuant recursion and fraction-free elimination).
// kernel_vector and extension_coefficient certify the kernel relations
// M b = 0 and the pairing identity sum (2-a_i) b_i + x b_{n+1} = +-3p.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qhb/checked.hpp"
#include "qhb/errors.hpp"
#include "qhb/hjchain.hpp"

namespace qhb {

using GramMatrix = std::vector<std::vector<i64>>;

// Leading principal minors D_1..D_n of the tridiagonal block, via
// D_k = -a_k D_{k-1} - D_{k-2}, D_0 = 1, D_{-1} = 0. For the string of
// p^2/(pq-1): |D_n| = p^2 and |D_{n-1}| = p^2 - pq - 1. (The pq-1 minor is
// the det of the trailing block, i.e. the reversed string's continuant --
// fixed here against the elimination oracle, see tests.)
inline std::vector<i64> tridiag_continuants(std::span<const i64> a) {
    if (a.empty())
        throw InvalidPair("tridiag_continuants requires a nonempty string");
    std::vector<i64> out(a.size());
    i64 prev2 = 0, prev1 = 1;
    for (std::size_t k = 0; k < a.size(); ++k) {
        out[k] = checked_sub(checked_mul(-a[k], prev1), prev2);
        prev2 = std::exchange(prev1, out[k]);
    }
    return out;
}

// Exact integer determinant by Bareiss fraction-free elimination. The
// independent oracle for gram_extend; makes no use of band structure.
inline i128 det_bareiss(const GramMatrix& matrix) {
    const std::size_t n = matrix.size();
    if (n == 0) return 1;
    std::vector<std::vector<i128>> m(n, std::vector<i128>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (matrix[i].size() != n)
            throw InvalidPair("det_bareiss requires a square matrix");
        for (std::size_t j = 0; j < n; ++j) m[i][j] = matrix[i][j];
    }
    i128 prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t pivot = k + 1;
            while (pivot < n && m[pivot][k] == 0) ++pivot;
            if (pivot == n) return 0;
            std::swap(m[k], m[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                i128 num = checked_sub128(checked_mul128(m[i][j], m[k][k]),
                                          checked_mul128(m[i][k], m[k][j]));
                if (num % prev != 0)
                    throw ConsistencyFailure("Bareiss division not exact");
                m[i][j] = num / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// (n+1) x (n+1) extended Gram matrix with |det| = 1.
struct ExtendedGram {
    i64 p = 0;
    i64 q = 0;
    i64 c = 0;
    std::vector<i64> a; // the HJ string (a_1, ..., a_n)
    i64 a_last = 0;     // a_{n+1}
    GramMatrix entries;
    i64 det = 0; // +1 or -1
};

// Kernel vector b = (c d_1, ..., c d_n, p^2) of the top-n-rows matrix M,
// with gcd(b) = 1. sign_h records the paper's h after the normalization
// b_{n+1} = +p^2 (always +1 here; the other sign lives in the root -c).
struct KernelVector {
    std::vector<i64> b;
    int sign_h = 1;
};

// Dual-basis coefficients of the extension class and its pairing with the
// kernel vector: pairing = sum (2 - a_i) b_i + x b_{n+1} = +-3p.
struct ExtensionClass {
    std::vector<i64> coeffs; // (2 - a_1, ..., 2 - a_n)
    i64 x = 0;
    i64 pairing = 0;
};

namespace detail {

// Dense storage grows as n^2; beyond this the certificate must be checked
// piecewise rather than via a materialized matrix.
constexpr std::size_t kGramDimensionGuard = 4096;

inline GramMatrix build_gram(std::span<const i64> a, i64 c, i64 a_last) {
    const std::size_t n = a.size();
    GramMatrix g(n + 1, std::vector<i64>(n + 1, 0));
    for (std::size_t i = 0; i < n; ++i) g[i][i] = -a[i];
    g[n][n] = -a_last;
    for (std::size_t i = 0; i + 2 < n + 1; ++i) g[i][i + 1] = g[i + 1][i] = 1;
    g[n - 1][n] = g[n][n - 1] = c;
    return g;
}

} // namespace detail

// Solves det(G) = +-1 for the integer a_{n+1}. An integer solution exists
// exactly when c^2 = +-(pq-1) mod p^2 (the + sign is the Gram-matrix case;
// the - sign completes with the opposite determinant).
inline ExtendedGram gram_extend(i64 p, i64 q, i64 c) {
    require_valid_pair(p, q);
    const HJString string = hj_expand(checked_mul(p, p), checked_mul(p, q) - 1);
    const std::vector<i64> cont = tridiag_continuants(string.a);
    const std::size_t n = string.a.size();
    if (n + 1 > detail::kGramDimensionGuard)
        throw ModulusTooLarge("Gram matrix dimension exceeds the memory guard");

    const i128 d_n = cont[n - 1];
    const i128 d_prev = n >= 2 ? cont[n - 2] : 1; // D_0 = 1
    const i128 c2_dprev = checked_mul128(checked_mul128(c, c), d_prev);

    // det(G) = -a_{n+1} D_n - c^2 D_{n-1}; try both determinant signs.
    std::optional<i64> a_last;
    i64 det = 0;
    for (i64 target : {i64(1), i64(-1)}) {
        i128 numerator = -(i128(target) + c2_dprev);
        if (numerator % d_n != 0) continue;
        a_last = narrow_to_i64(numerator / d_n);
        det = target;
        break;
    }
    if (!a_last)
        throw NoUnimodularCompletion(
            "no integer a_{n+1} yields |det| = 1; c^2 is not +-(pq-1) mod p^2");

    ExtendedGram out;
    out.p = p;
    out.q = q;
    out.c = c;
    out.a = string.a;
    out.a_last = *a_last;
    out.entries = detail::build_gram(string.a, c, *a_last);
    out.det = det;
    if (det_bareiss(out.entries) != i128(det))
        throw ConsistencyFailure(
            "elimination determinant disagrees with the continuant formula");
    return out;
}

inline KernelVector kernel_vector(i64 p, i64 q, i64 c) {
    require_valid_pair(p, q);
    const HJString string = hj_expand(checked_mul(p, p), checked_mul(p, q) - 1);
    const std::vector<i64> d = d_vector(string.a);
    const std::vector<i64>& a = string.a;
    const std::size_t n = d.size();

    KernelVector out;
    out.b.reserve(n + 1);
    for (i64 di : d) out.b.push_back(checked_mul(c, di));
    out.b.push_back(checked_mul(p, p));
    out.sign_h = 1;

    // Row-by-row check of M b = 0.
    auto row_value = [&](std::size_t i) -> i128 {
        i128 v = checked_mul128(-a[i], out.b[i]);
        if (i > 0) v = checked_add128(v, out.b[i - 1]);
        i128 right = i + 1 == n ? checked_mul128(c, out.b[n]) : i128(out.b[i + 1]);
        return checked_add128(v, right);
    };
    for (std::size_t i = 0; i < n; ++i)
        if (row_value(i) != 0)
            throw ConsistencyFailure("kernel vector fails M b = 0");

    i64 g = 0;
    for (i64 bi : out.b) g = gcd(g, bi);
    if (g != 1) throw ConsistencyFailure("kernel vector is not primitive");
    return out;
}

// x = (cq + 3)/p when p | cq + 3, together with the pairing certificate;
// nullopt when p does not divide cq + 3.
inline std::optional<ExtensionClass> extension_coefficient(i64 p, i64 q, i64 c) {
    require_valid_pair(p, q);
    const i128 cq3 = checked_add128(checked_mul128(c, q), 3);
    if (cq3 % p != 0) return std::nullopt;

    const HJString string = hj_expand(checked_mul(p, p), checked_mul(p, q) - 1);
    const std::vector<i64> d = d_vector(string.a);
    const i64 p2 = checked_mul(p, p);

    ExtensionClass out;
    out.x = narrow_to_i64(cq3 / p);
    out.coeffs.reserve(string.a.size());
    i128 pairing = checked_mul128(out.x, p2);
    for (std::size_t i = 0; i < string.a.size(); ++i) {
        out.coeffs.push_back(checked_sub(2, string.a[i]));
        pairing = checked_add128(
            pairing, checked_mul128(out.coeffs[i], checked_mul128(c, d[i])));
    }
    // Lemma-level shadow: the pairing must collapse to -cpq + xp^2 = +-3p.
    const i128 closed_form =
        checked_sub128(checked_mul128(out.x, p2),
                       checked_mul128(checked_mul128(c, p), q));
    if (pairing != closed_form)
        throw ConsistencyFailure("pairing sum disagrees with -cpq + xp^2");
    if (pairing != i128(3) * p && pairing != i128(-3) * p)
        throw ConsistencyFailure("pairing is not +-3p");
    out.pairing = narrow_to_i64(pairing);
    return out;
}

} // namespace qhb
