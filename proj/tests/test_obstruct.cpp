#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "qhb/obstruct.hpp"

using namespace qhb;

TEST_CASE("qr_obstruction_pass examples") {
    CHECK(qr_obstruction_pass(2, 1));
    CHECK_FALSE(qr_obstruction_pass(3, 1)); // 2 is not in {0,1,4,7} mod 9
    CHECK(qr_obstruction_pass(10, 1));      // 3^2 = 9 mod 100
    CHECK_THROWS_AS(qr_obstruction_pass(4, 2), InvalidPair);
}

TEST_CASE("condition2 examples") {
    CHECK(condition2(10, 1) == 47);  // roots {3,47,53,97}; 47+3 = 50
    CHECK(condition2(17, 5) == 132); // 5*132+3 = 663 = 39*17
    CHECK_FALSE(condition2(5, 2).has_value());
    CHECK(condition2(26, 11) == 307);
    CHECK(condition2(2, 1) == 1);
}

TEST_CASE("q2_plus_9_divisible examples") {
    CHECK(q2_plus_9_divisible(17, 5)); // 34 = 2*17
    CHECK_FALSE(q2_plus_9_divisible(5, 2));
    CHECK(q2_plus_9_divisible(2, 1)); // 10 is even
}

TEST_CASE("es_to_c2_witness examples") {
    CHECK(es_to_c2_witness(5, 1, 1, 2) == 2);  // the -3s/t branch, c = a
    CHECK(es_to_c2_witness(5, 4, 1, 2) == 13); // the +3s/t branch, c = a^{-1}
    CHECK(es_to_c2_witness(2, 1, 1, 1) == 1);

    CHECK_THROWS_AS(es_to_c2_witness(5, 1, 1, 3), InvalidPair); // not a triple
    CHECK_THROWS_AS(es_to_c2_witness(5, 2, 1, 2), InvalidPair); // q not in residue set
}

TEST_CASE("witness construction lands in the accepted root set") {
    // Every (triple, coordinate, q) combination with modest maxima; the
    // acceptance suite extends the bound to 2000.
    for (const MarkovTriple& tr : enumerate_triples(300)) {
        i64 coords[3] = {tr.x, tr.y, tr.z};
        for (int i = 0; i < 3; ++i) {
            i64 p = coords[i];
            if (p < 2) continue;
            i64 u = coords[(i + 1) % 3], v = coords[(i + 2) % 3];
            for (auto [s, t] : {std::pair{u, v}, std::pair{v, u}}) {
                for (i64 q : residue_set(p, s, t)) {
                    if (q < 1 || q >= p || gcd(p, q) != 1) continue;
                    CAPTURE(p, q, s, t);
                    i64 c = es_to_c2_witness(p, q, s, t);
                    RootSet roots = sqrts_mod_p2(p * q - 1, p);
                    REQUIRE(roots.contains(c));
                    REQUIRE(normalize_mod(c * q + 3, p) == 0);
                }
            }
        }
    }
}

TEST_CASE("classify examples") {
    ObstructionReport r101 = classify(10, 1);
    CHECK(r101.qr_pass);
    CHECK(r101.condition2_c == 47);
    CHECK(r101.extension_x == 5);
    CHECK_FALSE(r101.es.has_value());
    CHECK(r101.q2_plus_9_mod_p == 0);
    CHECK(r101.consistent);
    CHECK(r101.pq_minus_1 == 9);
    CHECK(r101.roots.roots == std::vector<i64>{3, 47, 53, 97});

    ObstructionReport r21 = classify(2, 1);
    CHECK(r21.qr_pass);
    CHECK(r21.condition2_c == 1);
    CHECK(r21.es.has_value());
    CHECK(r21.consistent);

    ObstructionReport r31 = classify(3, 1);
    CHECK_FALSE(r31.qr_pass);
    CHECK_FALSE(r31.condition2_c.has_value());
    CHECK_FALSE(r31.extension_x.has_value());
    CHECK_FALSE(r31.es.has_value());
    CHECK(r31.consistent);
}

TEST_CASE("implication chain, p <= 200") {
    // es => cond2 => qr_pass and p | q^2+9; acceptance sweeps p <= 500.
    for (i64 p = 2; p <= 200; ++p) {
        for (i64 q = 1; q < p; ++q) {
            if (gcd(p, q) != 1) continue;
            ObstructionReport r = classify(p, q);
            CAPTURE(p, q);
            if (r.es) REQUIRE(r.condition2_c.has_value());
            if (r.condition2_c) {
                REQUIRE(r.qr_pass);
                REQUIRE(r.q2_plus_9_mod_p == 0);
                REQUIRE(r.extension_x.has_value());
            }
            REQUIRE(r.consistent);
        }
    }
}

TEST_CASE("search reproduces the paper pairs") {
    SearchFilter cond2_not_es;
    cond2_not_es.cond2 = true;
    cond2_not_es.es = false;
    auto rows = search(30, cond2_not_es);
    std::vector<std::pair<i64, i64>> pairs;
    for (const auto& r : rows) pairs.emplace_back(r.p, r.q);
    CHECK(pairs == std::vector<std::pair<i64, i64>>{{10, 1},
                                                    {10, 9},
                                                    {17, 5},
                                                    {17, 12},
                                                    {25, 4},
                                                    {25, 21},
                                                    {26, 11},
                                                    {26, 15}});
}

TEST_CASE("search filter examples") {
    SearchFilter es_only;
    es_only.es = true;
    auto rows = search(5, es_only);
    std::vector<std::pair<i64, i64>> pairs;
    for (const auto& r : rows) pairs.emplace_back(r.p, r.q);
    CHECK(pairs == std::vector<std::pair<i64, i64>>{{2, 1}, {5, 1}, {5, 4}});

    SearchFilter no_qr;
    no_qr.qr = false;
    auto rows2 = search(3, no_qr);
    std::vector<std::pair<i64, i64>> pairs2;
    for (const auto& r : rows2) pairs2.emplace_back(r.p, r.q);
    CHECK(pairs2 == std::vector<std::pair<i64, i64>>{{3, 1}, {3, 2}});

    auto rows3 = search(2, SearchFilter{});
    REQUIRE(rows3.size() == 1);
    CHECK(rows3[0].p == 2);
    CHECK(rows3[0].q == 1);
}

TEST_CASE("search equals pairwise classification on a sub-range") {
    auto rows = search(40, SearchFilter{});
    std::size_t idx = 0;
    for (i64 p = 2; p <= 40; ++p) {
        for (i64 q = 1; q < p; ++q) {
            if (gcd(p, q) != 1) continue;
            REQUIRE(idx < rows.size());
            ObstructionReport direct = classify(p, q);
            CHECK(rows[idx].p == direct.p);
            CHECK(rows[idx].q == direct.q);
            CHECK(rows[idx].condition2_c == direct.condition2_c);
            CHECK(rows[idx].extension_x == direct.extension_x);
            CHECK(rows[idx].qr_pass == direct.qr_pass);
            CHECK(rows[idx].es.has_value() == direct.es.has_value());
            ++idx;
        }
    }
    CHECK(idx == rows.size());
}

TEST_CASE("search guard") {
    CHECK_THROWS_AS(search(100'000, SearchFilter{}), ModulusTooLarge);
    CHECK_THROWS_AS(search(1, SearchFilter{}), ModulusTooLarge);
    // the guard is a parameter: tighten and loosen
    CHECK_THROWS_AS(search(12, SearchFilter{}, 10), ModulusTooLarge);
    CHECK_NOTHROW(search(12, SearchFilter{}, 12));
}
