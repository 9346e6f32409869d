#include <doctest.h>

#include <random>

#include "pn/arith.hpp"

using namespace pn;

namespace {

Int random_prime(std::mt19937_64& rng, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    return next_prime_in_ap(0, 1, dist(rng));
}

} // namespace

TEST_CASE("mo basics") {
    CHECK(mo(0, 1, 7) == 0);
    CHECK(mo(1, 3, 7) == 5);  // 5*3 = 15 ≡ 1 (mod 7)
    CHECK(mo(71, 253, 5) == 2);
    CHECK(mo(-1, 1, 7) == 6);
    CHECK_THROWS_AS(mo(1, 6, 9), invalid_input);
    try {
        mo(1, 6, 9);
    } catch (const invalid_input& e) {
        CHECK(std::string(e.what()).find("gcd = 3") != std::string::npos);
    }
}

TEST_CASE("mo_plus basics") {
    CHECK(mo_plus(0, 1, 11) == 11);
    CHECK(mo_plus(1, 1, 11) == 1);
    // p^-1 + q^-1 mod r for (5, 11, 23): (11 + 5)/55
    CHECK(mo_plus(11 + 5, 55, 23) == 12);
}

TEST_CASE("mo is well defined on representatives") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> dist(-1000000, 1000000);
    for (int rep = 0; rep < 200; ++rep) {
        Int m = random_prime(rng, 3, 100000);
        Int a = dist(rng), b = dist(rng), c = dist(rng);
        if (mpz_divisible_p(b.get_mpz_t(), m.get_mpz_t())) continue;
        CHECK(mo(a + c * m, b, m) == mo(a, b, m));
    }
}

TEST_CASE("crt basics") {
    CHECK(crt({{1, 2}, {2, 3}}) == 5);
    CHECK(crt({{0, 5}, {0, 11}, {0, 23}}) == 0);
    // h(71) = (2, 1, 13) against N_j for (5, 11, 23): 1336 ≡ 71
    Int p = 5, q = 11, r = 23;
    CHECK(crt({{Int(2 * 253 % 5), p}, {Int(115 % 11), q}, {Int(13 * 55 % 23), r}}) == 71);
    CHECK_THROWS_AS(crt({{1, 6}, {2, 4}}), invalid_input);
}

TEST_CASE("crt decodes back to its inputs") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<std::pair<Int, Int>> pairs;
        Int lo = 3;
        for (int i = 0; i < 4; ++i) {
            Int m = next_prime_in_ap(0, 1, lo);
            lo = m + 1 + static_cast<long>(rng() % 50);
            std::uniform_int_distribution<long> dist(0, static_cast<long>(m.get_ui()) - 1);
            pairs.emplace_back(dist(rng), m);
        }
        Int x = crt(pairs);
        Int prod = 1;
        for (const auto& [r, m] : pairs) {
            CHECK(x % m == r);
            prod *= m;
        }
        CHECK(x >= 0);
        CHECK(x < prod);
    }
}

TEST_CASE("primality: known values") {
    CHECK(is_probable_prime(2));
    CHECK(is_probable_prime(3));
    CHECK_FALSE(is_probable_prime(1));
    CHECK_FALSE(is_probable_prime(0));
    CHECK_FALSE(is_probable_prime(561));     // Carmichael
    CHECK_FALSE(is_probable_prime(341));     // 2-pseudoprime
    CHECK(is_probable_prime(Int("2305843009213693951")));  // 2^61 - 1
    CHECK(is_probable_prime(Int("170141183460469231731687303715884105727")));  // 2^127 - 1
    Int m61("2305843009213693951"), m89("618970019642690137449562111");
    CHECK(is_probable_prime(m89));
    CHECK_FALSE(is_probable_prime(m61 * m89));
    // deterministic: same answer on repeated runs
    Int big = (Int(1) << 200) + 235;
    CHECK(is_probable_prime(big) == is_probable_prime(big));
}

TEST_CASE("next_prime_in_ap examples") {
    CHECK(next_prime_in_ap(1, 6, 2) == 7);
    CHECK(next_prime_in_ap(2, 5, 3) == 7);
    CHECK(next_prime_in_ap(1, 30, 100) == 151);
    CHECK_THROWS_AS(next_prime_in_ap(2, 6, 2), invalid_input);

    Config tiny;
    tiny.ap_budget = 3;
    // 10^18, 10^18 + 1 = (10^6 + 1)(10^12 - 10^6 + 1), 10^18 + 2: all composite
    CHECK_THROWS_AS(next_prime_in_ap(0, 1, Int("1000000000000000000"), tiny), resource_error);
}

TEST_CASE("next_prime_in_ap output is prime and congruent") {
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 50; ++rep) {
        Int m = random_prime(rng, 5, 5000);
        std::uniform_int_distribution<long> adist(1, static_cast<long>(m.get_ui()) - 1);
        Int a = adist(rng);
        Int lower = 2 + static_cast<long>(rng() % 100000);
        Int p = next_prime_in_ap(a, m, lower);
        CHECK(is_probable_prime(p));
        CHECK(p >= lower);
        CHECK(p % m == a % m);
    }
}

TEST_CASE("lemma pq+1: p mo(p^-1,q) + q mo(q^-1,p) = pq + 1 on 1000 random pairs") {
    std::mt19937_64 rng(17);
    int done = 0;
    while (done < 1000) {
        Int p = random_prime(rng, 2, 200000);
        Int q = random_prime(rng, 2, 200000);
        if (p == q) continue;
        REQUIRE(p * mo(1, p, q) + q * mo(1, q, p) == p * q + 1);
        ++done;
    }
}

TEST_CASE("prime tuple invariants") {
    PrimeTuple t({5, 11, 23});
    CHECK(t.modulus() == 1265);
    CHECK(t.cofactor(0) == 253);
    CHECK(t.cofactor2(0, 2) == 11);
    CHECK(t.cofactor(1) * t.p(1) == t.modulus());
    CHECK(t.str() == "5*11*23");
    CHECK(t.without(1).str() == "5*23");
    CHECK_THROWS_AS(PrimeTuple({4, 5}), invalid_input);
    CHECK_THROWS_AS(PrimeTuple({5, 5}), invalid_input);
    CHECK(PrimeTuple({3, 5}).inverse_sum() == Rat(8, 15));
}

TEST_CASE("orientation sets") {
    OrientationSet s = OrientationSet::standard(3);
    CHECK(s.contains(2, 1));
    CHECK(s.contains(1, 0));
    CHECK_FALSE(s.contains(0, 1));
    CHECK(OrientationSet::mask_count(3) == 8);
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
        OrientationSet o = OrientationSet::from_mask(3, mask);
        CHECK(o.mask() == mask);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                if (i != j) CHECK(o.contains(i, j) != o.contains(j, i));
    }
}
