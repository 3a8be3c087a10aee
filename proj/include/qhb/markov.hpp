#pragma once

// Solutions of p^2 + s^2 + t^2 = 3pst: Vieta-jumping tree traversal from
// (1,1,1), a quadratic-solve brute-force oracle, and the residue condition
// q = +-3s/t mod p of the symplectic-embedding criterion.

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qhb/checked.hpp"
#include "qhb/errors.hpp"
#include "qhb/hjchain.hpp"
#include "qhb/modarith.hpp"

namespace qhb {

// A positive solution of x^2 + y^2 + z^2 = 3xyz, normalized x <= y <= z.
// Canonical order is by (z, y, x).
struct MarkovTriple {
    i64 x = 1;
    i64 y = 1;
    i64 z = 1;

    friend bool operator==(const MarkovTriple&, const MarkovTriple&) = default;
    friend bool operator<(const MarkovTriple& a, const MarkovTriple& b) {
        if (a.z != b.z) return a.z < b.z;
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    }
};

inline bool is_markov_triple(i64 x, i64 y, i64 z) {
    if (x < 1 || y < 1 || z < 1) return false;
    i128 lhs = checked_add128(checked_add128(checked_mul128(x, x), checked_mul128(y, y)),
                              checked_mul128(z, z));
    return lhs == checked_mul128(checked_mul128(i128(3), x), checked_mul128(y, z));
}

inline MarkovTriple make_markov_triple(i64 x, i64 y, i64 z) {
    std::array<i64, 3> v{x, y, z};
    std::sort(v.begin(), v.end());
    if (!is_markov_triple(v[0], v[1], v[2]))
        throw InvalidPair("not a Markov triple");
    return {v[0], v[1], v[2]};
}

// One Vieta move per coordinate: replace it by 3*(product of the other two)
// minus itself. Each result is again a solution; the move is an involution.
inline std::array<MarkovTriple, 3> vieta_neighbors(const MarkovTriple& tr) {
    auto jump = [](i64 keep1, i64 keep2, i64 drop) {
        return checked_sub(checked_mul(3, checked_mul(keep1, keep2)), drop);
    };
    return {make_markov_triple(jump(tr.y, tr.z, tr.x), tr.y, tr.z),
            make_markov_triple(tr.x, jump(tr.x, tr.z, tr.y), tr.z),
            make_markov_triple(tr.x, tr.y, jump(tr.x, tr.y, tr.z))};
}

// Every normalized triple with z <= max_z: breadth-first traversal from
// (1,1,1), pruning children whose maximum exceeds the bound. Sorted by
// (z, y, x).
inline std::vector<MarkovTriple> enumerate_triples(i64 max_z) {
    std::vector<MarkovTriple> out;
    if (max_z < 1) return out;
    std::set<MarkovTriple> seen{MarkovTriple{1, 1, 1}};
    std::vector<MarkovTriple> frontier{MarkovTriple{1, 1, 1}};
    while (!frontier.empty()) {
        MarkovTriple tr = frontier.back();
        frontier.pop_back();
        for (const MarkovTriple& next : vieta_neighbors(tr))
            if (next.z <= max_z && seen.insert(next).second)
                frontier.push_back(next);
    }
    out.assign(seen.begin(), seen.end());
    return out;
}

constexpr i64 kMarkovScanGuard = 100'000;

namespace detail {

inline i64 isqrt_u128(u128 v) {
    if (v == 0) return 0;
    u128 r = static_cast<u128>(std::max(0.0, __builtin_sqrt(static_cast<double>(v))));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return static_cast<i64>(r);
}

} // namespace detail

// Independent oracle: for each x <= y <= max_z solve the quadratic
// z^2 - 3xy z + (x^2 + y^2) = 0 over the integers and keep roots in
// [y, max_z].
inline std::vector<MarkovTriple> brute_markov_scan(i64 max_z) {
    if (max_z > kMarkovScanGuard)
        throw ModulusTooLarge("brute Markov scan limited to max_z <= 10^5");
    std::set<MarkovTriple> found;
    for (i64 x = 1; x <= max_z; ++x) {
        for (i64 y = x; y <= max_z; ++y) {
            u128 b = u128(3) * u128(x) * u128(y);
            u128 cc = u128(x) * x + u128(y) * y;
            if (b * b < 4 * cc) continue;
            u128 disc = b * b - 4 * cc;
            i64 root = detail::isqrt_u128(disc);
            if (u128(root) * u128(root) != disc) continue;
            if ((i64(b) - root) % 2 != 0) continue;
            for (i64 z : {(i64(b) - root) / 2, (i64(b) + root) / 2})
                if (z >= y && z <= max_z && is_markov_triple(x, y, z))
                    found.insert(MarkovTriple{x, y, z});
        }
    }
    return {found.begin(), found.end()};
}

// All normalized triples whose maximum is exactly p; nonempty iff p is a
// Markov number.
inline std::vector<MarkovTriple> triples_containing(i64 p) {
    if (p < 1) throw InvalidPair("triples_containing requires p >= 1");
    std::vector<MarkovTriple> out;
    for (const MarkovTriple& tr : enumerate_triples(p))
        if (tr.z == p) out.push_back(tr);
    return out;
}

// { +3 s t^{-1}, -3 s t^{-1} } mod p. t is invertible because the triple
// coordinates are pairwise coprime.
inline std::vector<i64> residue_set(i64 p, i64 s, i64 t) {
    if (!is_markov_triple(p, s, t))
        throw InvalidPair("residue_set requires p^2 + s^2 + t^2 = 3pst");
    if (p == 1) return {0};
    auto t_inv = mod_inverse(t, Modulus(p));
    if (!t_inv)
        throw ConsistencyFailure("t not invertible mod p in a Markov triple");
    i64 v = mul_mod(normalize_mod(checked_mul(3, s), p), *t_inv, p);
    std::vector<i64> out{v, normalize_mod(-v, p)};
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// A certifying (s, t): part of a triple with maximum p and
// q = sign * 3 s t^{-1} mod p.
struct ESWitness {
    i64 p = 0;
    i64 q = 0;
    i64 s = 0;
    i64 t = 0;
    MarkovTriple triple;
    int sign = 1;
};

// Search triples with p maximal, in canonical order, orderings (s,t) then
// (t,s); first match wins. Triples where p is not maximal contribute no new
// residues (tested residue invariance), so this restriction is complete.
inline std::optional<ESWitness> es_condition(i64 p, i64 q) {
    require_valid_pair(p, q);
    for (const MarkovTriple& tr : triples_containing(p)) {
        for (auto [s, t] : {std::pair{tr.x, tr.y}, std::pair{tr.y, tr.x}}) {
            i64 t_inv = mod_inverse(t, Modulus(p)).value();
            i64 plus = mul_mod(normalize_mod(3 * s, p), t_inv, p);
            i64 minus = normalize_mod(-plus, p);
            if (q % p == plus || q % p == minus) {
                ESWitness w;
                w.p = p;
                w.q = q;
                w.s = s;
                w.t = t;
                w.triple = tr;
                w.sign = q % p == plus ? 1 : -1;
                return w;
            }
        }
    }
    return std::nullopt;
}

// --- triple cache -----------------------------------------------------------
// One triple per line, "x y z" ASCII decimal, sorted by (z, y, x). The cached
// bound is the largest stored z; a request beyond it regenerates the file.

inline void write_triple_cache(std::ostream& os,
                               const std::vector<MarkovTriple>& triples) {
    for (const MarkovTriple& tr : triples)
        os << tr.x << ' ' << tr.y << ' ' << tr.z << '\n';
}

inline std::optional<std::vector<MarkovTriple>> read_triple_cache(std::istream& is) {
    std::vector<MarkovTriple> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        i64 x, y, z;
        if (!(ls >> x >> y >> z)) return std::nullopt;
        if (!is_markov_triple(x, y, z) || !(x <= y && y <= z)) return std::nullopt;
        MarkovTriple tr{x, y, z};
        if (!out.empty() && !(out.back() < tr)) return std::nullopt;
        out.push_back(tr);
    }
    return out;
}

inline std::vector<MarkovTriple> enumerate_triples_cached(
    i64 max_z, const std::filesystem::path& cache_path) {
    if (std::ifstream in{cache_path}) {
        if (auto cached = read_triple_cache(in)) {
            i64 cached_bound = cached->empty() ? 0 : cached->back().z;
            if (max_z <= cached_bound) {
                auto cut = std::partition_point(
                    cached->begin(), cached->end(),
                    [&](const MarkovTriple& tr) { return tr.z <= max_z; });
                return {cached->begin(), cut};
            }
        }
    }
    std::vector<MarkovTriple> fresh = enumerate_triples(max_z);
    if (std::ofstream out{cache_path}) write_triple_cache(out, fresh);
    return fresh;
}

} // namespace qhb
