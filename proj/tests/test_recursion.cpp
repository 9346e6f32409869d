#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "pn/arith.hpp"
#include "pn/poly.hpp"
#include "pn/recursion.hpp"

using namespace pn;

namespace {

Int random_prime(std::mt19937_64& rng, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    return next_prime_in_ap(0, 1, dist(rng));
}

} // namespace

TEST_CASE("delta_minus_n against the dense oracle") {
    PrimeTuple base({2, 3, 5});
    auto provider = make_dense_provider(base);
    Int p = 7;
    CoeffVector lifted = expand_pn(PrimeTuple({2, 3, 5, 7}));
    const Int N = base.modulus();

    CHECK(delta_minus_n(p, *provider, 0) == 1);  // a(0) - a(-N)
    CHECK(delta_minus_n(p, *provider, 3) == lifted.at(3));  // 3 - 30 < 0

    for (Int k = -10; k < Int(lifted.coeffs.size()) + 2 * N; ++k)
        REQUIRE(delta_minus_n(p, *provider, k) == lifted.at(k) - lifted.at(k - N));

    CHECK_THROWS_AS(delta_minus_n(5, *provider, 3), invalid_input);  // 5 | 30

    // provider choice does not matter
    auto closed = make_closed_form_provider(base);
    for (Int k = 0; k < 80; ++k)
        REQUIRE(delta_minus_n(p, *closed, k) == delta_minus_n(p, *provider, k));
}

TEST_CASE("coeff_via_general and the telescoping identity") {
    PrimeTuple base({2, 3, 5});
    auto provider = make_dense_provider(base);
    Int p = 7;
    CoeffVector lifted = expand_pn(PrimeTuple({2, 3, 5, 7}));
    const Int N = base.modulus(), pN = p * N;

    CHECK(coeff_via_general(p, *provider, -1) == 0);
    CHECK(coeff_via_general(p, *provider, 9) == lifted.at(9));  // 9 - 210 < 0

    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 100; ++rep) {
        Int k = Int(rng() % 500) - 100;
        REQUIRE(coeff_via_general(p, *provider, k) == lifted.at(k) - lifted.at(k - pN));
        long long sum = 0;
        for (Int c = 0; c < p; ++c) sum += delta_minus_n(p, *provider, k - c * N);
        REQUIRE(sum == coeff_via_general(p, *provider, k));
    }
}

TEST_CASE("coeff_via_truncation paper value and bounds") {
    PrimeTuple base({5, 11});
    CHECK(coeff_via_truncation(23, base, 71) == 1);

    PrimeTuple full({5, 11, 23});
    Int deg = degree_pn(full);
    auto provider = make_closed_form_provider(base);
    CHECK(coeff_via_truncation(23, *provider, deg + 1) == 0);
    CHECK(coeff_via_truncation(23, *provider, deg + 500) == 0);
    CHECK(coeff_via_truncation(23, *provider, -3) == 0);

    CHECK_THROWS_AS(coeff_via_truncation(5, base, 3), invalid_input);  // 5 | 55
    auto dense235 = make_dense_provider(PrimeTuple({2, 3, 5}));
    CHECK_THROWS_AS(coeff_via_truncation(7, *dense235, 3), invalid_input);  // sum 31/30 >= 1
}

TEST_CASE("truncation agrees with the dense oracle on 500 random evaluations") {
    std::mt19937_64 rng(59);
    int done = 0;
    while (done < 500) {
        Int p = random_prime(rng, 3, 300);
        Int a = random_prime(rng, 3, 300);
        Int b = random_prime(rng, 3, 300);
        if (p == a || p == b || a == b) continue;
        PrimeTuple base({a, b});
        if (!(base.inverse_sum() < Rat(1))) continue;
        if (p * base.modulus() >= 100000) continue;
        CoeffVector lifted = expand_pn(base.with_appended(p));
        auto provider = make_dense_provider(base);
        Int k = rng() % (p * base.modulus());
        REQUIRE(coeff_via_truncation(p, *provider, k) == lifted.at(k));
        ++done;
    }
}

TEST_CASE("partial sums of the truncation series are coefficients of shifted exponents") {
    PrimeTuple base({5, 11});
    const Int N = base.modulus();
    Int p = 23;
    CoeffVector lifted = expand_pn(base.with_appended(p));
    auto provider = make_dense_provider(base);

    std::mt19937_64 rng(61);
    for (int rep = 0; rep < 40; ++rep) {
        Int k = rng() % (p * N);
        // terms of the full (unfiltered) series, ordered by m'
        std::vector<std::pair<Int, long long>> terms;
        for (std::size_t mask = 0; mask < 4; ++mask) {
            Int nt = 0;
            for (std::size_t i = 0; i < 2; ++i)
                if (mask >> i & 1) nt += base.cofactor(i);
            Int mprime = mo(k - nt, p, N);
            long long c = provider->coeff(mprime);
            terms.emplace_back(mprime, (mask == 1 || mask == 2) ? -c : c);
        }
        std::sort(terms.begin(), terms.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });

        std::set<long long> allowed{0};
        for (Int kp = k % N; kp < Int(lifted.coeffs.size()); kp += N) allowed.insert(lifted.at(kp));

        long long prefix = 0;
        CHECK(allowed.count(0) == 1);
        for (const auto& [m, v] : terms) {
            prefix += v;
            REQUIRE(allowed.count(prefix) == 1);
        }
    }
}

TEST_CASE("the three providers agree") {
    for (auto primes : {std::vector<Int>{2, 3, 5}, {3, 5, 7}, {5, 7, 11, 13}}) {
        PrimeTuple t(primes);
        auto dense = make_dense_provider(t);
        auto closed = make_closed_form_provider(t);
        auto recursive = make_recursive_provider(t);
        std::mt19937_64 rng(67);
        for (int rep = 0; rep < 150; ++rep) {
            Int k = rng() % t.modulus();
            long long want = dense->coeff(k);
            REQUIRE(closed->coeff(k) == want);
            REQUIRE(recursive->coeff(k) == want);
        }
        CHECK(dense->coeff(-5) == 0);
        CHECK(closed->coeff(t.modulus() + 1) == 0);
        CHECK(recursive->coeff(-5) == 0);
    }
    CHECK(make_recursive_provider(PrimeTuple({5, 7, 11, 13}))->coeff(233) == -2);
    // (2,3,5,7): the base (2,3,5) has inverse sum 31/30 >= 1
    CHECK_THROWS_AS(make_recursive_provider(PrimeTuple({2, 3, 5, 7})), unsupported_error);
}
