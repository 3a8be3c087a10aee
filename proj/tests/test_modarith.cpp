#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qhb/modarith.hpp"

using namespace qhb;

TEST_CASE("gcd basics") {
    CHECK(gcd(10, 1) == 1);
    CHECK(gcd(0, 7) == 7);
    CHECK(gcd(84, 289) == 1); // 289 = 17^2, 84 = 2^2 * 3 * 7
    CHECK(gcd(0, 0) == 0);
    CHECK(gcd(-6, 4) == 2);
    CHECK(gcd(12, -18) == 6);
    CHECK_THROWS_AS(gcd(INT64_MIN, INT64_MIN), Overflow); // magnitude 2^63
}

TEST_CASE("gcd divides both arguments") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        i64 a = i64(rng() % 1'000'000) - 500'000;
        i64 b = i64(rng() % 1'000'000) - 500'000;
        i64 g = gcd(a, b);
        CHECK(g == gcd(b, a));
        if (g != 0) {
            CHECK(a % g == 0);
            CHECK(b % g == 0);
        } else {
            CHECK(a == 0);
            CHECK(b == 0);
        }
    }
}

TEST_CASE("mod_inverse examples") {
    CHECK(mod_inverse(1, Modulus(25)) == 1);
    CHECK(mod_inverse(2, Modulus(25)) == 13);
    CHECK_FALSE(mod_inverse(5, Modulus(25)).has_value());
    CHECK(mod_inverse(7, Modulus(1)) == 0);
    CHECK(mod_inverse(-3, Modulus(25)) == mod_inverse(22, Modulus(25)));
}

TEST_CASE("mod_inverse property: x exists iff gcd = 1, and a*x = 1") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 3000; ++i) {
        i64 m = 1 + i64(rng() % 10'000);
        i64 a = i64(rng() % (2 * m)) - m;
        auto x = mod_inverse(a, Modulus(m));
        if (gcd(a, m) == 1) {
            REQUIRE(x.has_value());
            CHECK(*x >= 0);
            CHECK(*x < m);
            CHECK(mul_mod(normalize_mod(a, m), *x, m) == normalize_mod(1, m));
        } else {
            CHECK_FALSE(x.has_value());
        }
    }
}

TEST_CASE("sqrts_mod_bruteforce examples") {
    CHECK(sqrts_mod_bruteforce(9, Modulus(100)).roots ==
          std::vector<i64>{3, 47, 53, 97});
    CHECK(sqrts_mod_bruteforce(2, Modulus(9)).roots.empty());
    CHECK(sqrts_mod_bruteforce(0, Modulus(4)).roots == std::vector<i64>{0, 2});
    CHECK_THROWS_AS(sqrts_mod_bruteforce(1, Modulus(200'000'000)), ModulusTooLarge);
}

TEST_CASE("sqrts_mod_p2 examples") {
    CHECK(sqrts_mod_p2(4, 5).roots == std::vector<i64>{2, 23});
    CHECK(sqrts_mod_p2(84, 17).roots == std::vector<i64>{132, 157});
    CHECK(sqrts_mod_p2(2, 3).roots.empty());
    CHECK(sqrts_mod_p2(9, 10).roots == std::vector<i64>{3, 47, 53, 97});
    CHECK_THROWS_AS(sqrts_mod_p2(5, 10), InvalidPair); // gcd(n, p) > 1
    CHECK_THROWS_AS(sqrts_mod_p2(1, 1), InvalidPair);
}

TEST_CASE("is_qr_mod_p2 examples") {
    CHECK(is_qr_mod_p2(9, 10));
    CHECK_FALSE(is_qr_mod_p2(2, 3));
    CHECK(is_qr_mod_p2(1, 2));
}

TEST_CASE("sqrts_mod_p2 equals the brute-force oracle") {
    // Acceptance runs the full p <= 100 sweep; a p <= 40 sweep keeps the
    // unit suite quick and covers even p, prime powers, and composites.
    for (i64 p = 2; p <= 40; ++p) {
        i64 p2 = p * p;
        for (i64 n = 0; n < p2; ++n) {
            if (gcd(n, p) != 1) continue;
            RootSet fast = sqrts_mod_p2(n, p);
            RootSet brute = sqrts_mod_bruteforce(n, Modulus(p2));
            REQUIRE(fast.roots == brute.roots);
        }
    }
}

TEST_CASE("root sets are symmetric under r -> m - r") {
    for (i64 p : {4, 9, 10, 12, 25, 26, 36, 97}) {
        i64 p2 = p * p;
        for (i64 n = 1; n < p2; n += 7) {
            if (gcd(n, p) != 1) continue;
            RootSet rs = sqrts_mod_p2(n, p);
            CHECK(std::is_sorted(rs.roots.begin(), rs.roots.end()));
            CHECK(std::adjacent_find(rs.roots.begin(), rs.roots.end()) ==
                  rs.roots.end());
            for (i64 r : rs.roots) {
                CHECK(mul_mod(r, r, p2) == rs.n);
                CHECK(rs.contains(normalize_mod(p2 - r, p2)));
            }
        }
    }
}

TEST_CASE("large p stays exact") {
    // pq-1 = -1 mod p, so roots only exist when every odd prime factor of p
    // is 1 mod 4. 999961 is such a prime near the top of the intended range.
    const i64 p = 999'961;
    const i64 n = p * 3 - 1;
    RootSet rs = sqrts_mod_p2(n, p);
    CHECK(rs.roots == std::vector<i64>{444'231'418'089, 555'690'583'432});
    for (i64 r : rs.roots) CHECK(mul_mod(r, r, p * p) == normalize_mod(n, p * p));

    // 999983 = 3 mod 4: -1 is a non-residue, so no pair (999983, q) passes.
    CHECK(sqrts_mod_p2(999'983 * i64(7) - 1, 999'983).roots.empty());
}
