#pragma once

// Exact modular arithmetic: gcd, inverses, and complete square-root
// enumeration modulo p^2 for arbitrary p >= 2 (p need not be prime), with an
// exhaustive-scan oracle for cross-checking.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qhb/checked.hpp"
#include "qhb/errors.hpp"

namespace qhb {

// A positive modulus. Residues stored against it live in [0, m).
struct Modulus {
    i64 m;

    explicit Modulus(i64 value) : m(value) {
        if (m < 1) throw InvalidPair("modulus must be >= 1");
    }
};

// Every square root of n modulo `modulus`, sorted ascending. Closed under
// r -> modulus - r.
struct RootSet {
    i64 n = 0;
    i64 modulus = 1;
    std::vector<i64> roots;

    bool empty() const { return roots.empty(); }
    bool contains(i64 r) const {
        return std::binary_search(roots.begin(), roots.end(), r);
    }
};

inline i64 gcd(i64 a, i64 b) {
    // Euclid on magnitudes; gcd(0, 0) = 0. Avoids std::gcd's UB on INT64_MIN.
    u128 x = a < 0 ? u128(0) - u128(a) : u128(a);
    u128 y = b < 0 ? u128(0) - u128(b) : u128(b);
    while (y != 0) {
        u128 t = x % y;
        x = y;
        y = t;
    }
    if (x > u128(std::numeric_limits<i64>::max()))
        throw Overflow("gcd magnitude exceeds 64 bits"); // gcd(MIN, MIN) = 2^63
    return static_cast<i64>(x);
}

// x in [0, m) with a*x = 1 (mod m), or nullopt when gcd(a, m) > 1.
// mod_inverse(a, 1) = 0 for every a.
inline std::optional<i64> mod_inverse(i64 a, Modulus mod) {
    const i64 m = mod.m;
    if (m == 1) return 0;
    i64 r0 = normalize_mod(a, m), r1 = m;
    i64 s0 = 1, s1 = 0;
    while (r1 != 0) {
        i64 q = r0 / r1;
        r0 = std::exchange(r1, r0 - q * r1);
        s0 = std::exchange(s1, s0 - q * s1);
    }
    if (r0 != 1) return std::nullopt;
    return normalize_mod(s0, m);
}

constexpr i64 kBruteForceModulusGuard = 100'000'000;

// Exhaustive scan of r in [0, m). The oracle everything else is checked
// against, so it stays a plain loop.
inline RootSet sqrts_mod_bruteforce(i64 n, Modulus mod) {
    const i64 m = mod.m;
    if (m > kBruteForceModulusGuard)
        throw ModulusTooLarge("brute-force square root scan limited to m <= 10^8");
    RootSet out;
    out.n = normalize_mod(n, m);
    out.modulus = m;
    for (i64 r = 0; r < m; ++r)
        if (mul_mod(r, r, m) == out.n) out.roots.push_back(r);
    return out;
}

namespace detail {

// Trial-division factorization; adequate for p up to ~10^12.
inline std::vector<std::pair<i64, int>> factorize(i64 n) {
    std::vector<std::pair<i64, int>> factors;
    for (i64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d != 0) continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        factors.emplace_back(d, e);
    }
    if (n > 1) factors.emplace_back(n, 1);
    return factors;
}

// One square root of n mod an odd prime ell (n coprime to ell), or nullopt
// when n is a non-residue. Tonelli-Shanks.
inline std::optional<i64> sqrt_mod_odd_prime(i64 n, i64 ell) {
    n = normalize_mod(n, ell);
    if (n == 0) return 0;
    if (pow_mod(n, (ell - 1) / 2, ell) != 1) return std::nullopt;
    if (ell % 4 == 3) return pow_mod(n, (ell + 1) / 4, ell);

    // ell = 1 (mod 4): write ell - 1 = q * 2^s with q odd.
    i64 q = ell - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    i64 z = 2;
    while (pow_mod(z, (ell - 1) / 2, ell) != ell - 1) ++z;

    i64 m = s;
    i64 c = pow_mod(z, q, ell);
    i64 t = pow_mod(n, q, ell);
    i64 r = pow_mod(n, (q + 1) / 2, ell);
    while (t != 1) {
        i64 t2 = t;
        i64 i = 0;
        while (t2 != 1) {
            t2 = mul_mod(t2, t2, ell);
            ++i;
        }
        i64 b = c;
        for (i64 j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, ell);
        m = i;
        c = mul_mod(b, b, ell);
        t = mul_mod(t, c, ell);
        r = mul_mod(r, b, ell);
    }
    return r;
}

// Both square roots of n mod ell^k (ell odd prime, n coprime to ell),
// obtained by a Newton/Hensel lift of the mod-ell root.
inline std::vector<i64> sqrts_mod_odd_prime_power(i64 n, i64 ell, int k) {
    auto r0 = sqrt_mod_odd_prime(n, ell);
    if (!r0) return {};
    i64 pk = ell;
    i64 r = *r0;
    for (int j = 1; j < k; ++j) {
        pk = checked_mul(pk, ell);
        i64 nr = normalize_mod(n, pk);
        // r' = r - (r^2 - n) / (2r) lifted to the finer modulus.
        i64 f = normalize_mod(mul_mod(r, r, pk) - nr, pk);
        i64 inv2r = *mod_inverse(mul_mod(2 % pk, r, pk), Modulus(pk));
        r = normalize_mod(r - mul_mod(f, inv2r, pk), pk);
    }
    std::vector<i64> roots{r, pk - r};
    std::sort(roots.begin(), roots.end());
    return roots;
}

// All square roots of an odd n mod 2^k. Hensel fails at 2, so lift the full
// solution set one power at a time: a root mod 2^{j+1} reduces to one mod
// 2^j, and each candidate set stays of size at most 4.
inline std::vector<i64> sqrts_mod_two_power(i64 n, int k) {
    i64 m = i64(1) << k;
    i64 nr = normalize_mod(n, m);
    if (k == 1) return {1};
    if (k == 2) return nr == 1 ? std::vector<i64>{1, 3} : std::vector<i64>{};
    if (nr % 8 != 1) return {};
    std::vector<i64> roots{1, 3, 5, 7};
    for (int j = 3; j < k; ++j) {
        i64 mj1 = i64(1) << (j + 1);
        i64 target = normalize_mod(n, mj1);
        std::vector<i64> next;
        for (i64 r : roots)
            for (i64 cand : {r, r + (i64(1) << j)})
                if (mul_mod(cand, cand, mj1) == target) next.push_back(cand);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        roots = std::move(next);
    }
    return roots;
}

// x = r1 (mod m1), x = r2 (mod m2) with gcd(m1, m2) = 1.
inline i64 crt_pair(i64 r1, i64 m1, i64 r2, i64 m2) {
    i64 inv = *mod_inverse(m1 % m2, Modulus(m2));
    i64 diff = normalize_mod(r2 - r1, m2);
    return checked_add(r1, checked_mul(m1, mul_mod(diff, inv, m2)));
}

} // namespace detail

// All square roots of n modulo p^2 for arbitrary p >= 2 with gcd(n, p) = 1:
// Tonelli-Shanks plus Hensel lifting at each odd prime power of p, a
// dedicated 2-adic lift for the even part, CRT recombination.
inline RootSet sqrts_mod_p2(i64 n, i64 p) {
    if (p < 2) throw InvalidPair("sqrts_mod_p2 requires p >= 2");
    const i64 p2 = checked_mul(p, p);
    RootSet out;
    out.n = normalize_mod(n, p2);
    out.modulus = p2;
    if (gcd(out.n, p) != 1)
        throw InvalidPair("sqrts_mod_p2 requires gcd(n, p) = 1");

    std::vector<i64> combined{0};
    i64 combined_mod = 1;
    for (auto [ell, e] : detail::factorize(p)) {
        i64 ell2e = 1;
        for (int i = 0; i < 2 * e; ++i) ell2e = checked_mul(ell2e, ell);
        std::vector<i64> local =
            ell == 2 ? detail::sqrts_mod_two_power(out.n, 2 * e)
                     : detail::sqrts_mod_odd_prime_power(out.n, ell, 2 * e);
        if (local.empty()) return out;
        std::vector<i64> next;
        next.reserve(combined.size() * local.size());
        for (i64 a : combined)
            for (i64 b : local)
                next.push_back(detail::crt_pair(a, combined_mod, b, ell2e));
        combined = std::move(next);
        combined_mod = checked_mul(combined_mod, ell2e);
    }
    std::sort(combined.begin(), combined.end());
    out.roots = std::move(combined);
    return out;
}

inline bool is_qr_mod_p2(i64 n, i64 p) { return !sqrts_mod_p2(n, p).empty(); }

} // namespace qhb
