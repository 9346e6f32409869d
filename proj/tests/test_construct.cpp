#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "pn/arith.hpp"
#include "pn/construct.hpp"
#include "pn/engine.hpp"
#include "pn/poly.hpp"
#include "pn/recursion.hpp"

using namespace pn;

namespace {

Int random_prime(std::mt19937_64& rng, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    return next_prime_in_ap(0, 1, dist(rng));
}

Int ceil_rat(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

} // namespace

TEST_CASE("z_value basics") {
    PrimeTuple t({5, 11});
    CHECK(z_value(t, 1, {}) == Rat(0));
    Rat z = z_value(t, 1, {0});
    CHECK(z == Rat(4, 5));
    CHECK(ceil_rat(Rat(11) * z) == 9);
    CHECK(mo(1, 5, 11) == 9);
    CHECK_THROWS_AS(z_value(t, 1, {1}), invalid_input);
}

TEST_CASE("z identities on random tuples") {
    std::mt19937_64 rng(71);
    int done = 0;
    while (done < 50) {
        Int a = random_prime(rng, 3, 2000), b = random_prime(rng, 3, 2000),
            c = random_prime(rng, 3, 2000);
        if (a == b || b == c || a == c) continue;
        PrimeTuple t({a, b, c});
        for (std::size_t j = 0; j < 3; ++j) {
            std::vector<std::vector<std::size_t>> subsets{{}, {}, {}, {}};
            std::size_t w = 0;
            for (std::size_t i = 0; i < 3; ++i)
                if (i != j) subsets[++w] = {i};
            subsets[3] = {};
            for (std::size_t i = 0; i < 3; ++i)
                if (i != j) subsets[3].push_back(i);

            for (const auto& T : subsets) {
                Rat z = z_value(t, j, T);
                Rat lhs = Rat(t.p(j)) * z;
                Rat inv_sum(0);
                Int num = 0, den = 1;
                for (std::size_t i : T) {
                    inv_sum += Rat(1) / Rat(t.p(i));
                    num = num * t.p(i) + den;
                    den *= t.p(i);
                }
                inv_sum.canonicalize();
                Rat total = lhs + inv_sum;
                total.canonicalize();
                CHECK(total.get_den() == 1);  // p_j z_T + sum 1/p_i is an integer
                Int resid = T.empty() ? Int(0) : mo(num, den, t.p(j));
                CHECK(total.get_num() % t.p(j) == resid);  // ... congruent to sum p_i^-1
                if (inv_sum < 1) {
                    Int expect = T.empty() ? t.p(j) : mo_plus(num, den, t.p(j));
                    if (!T.empty()) CHECK(ceil_rat(Rat(t.p(j)) * z) == expect);
                }
            }
        }
        ++done;
    }
}

TEST_CASE("bounds_report") {
    BoundsReport b3 = bounds_report(3);
    CHECK(b3.pointwise_upper == Rat(3, 2));
    CHECK(b3.central_binom_lower == 1);
    CHECK(b3.maclaurin_threshold == Rat(3));

    BoundsReport b4 = bounds_report(4);
    CHECK(b4.pointwise_upper == Rat(4));
    CHECK(b4.central_binom_lower == 2);

    BoundsReport b5 = bounds_report(5);
    CHECK(b5.central_binom_lower == 6);

    BoundsReport b2 = bounds_report(2);
    CHECK(b2.pointwise_upper == Rat(1));
    CHECK(b2.central_binom_lower == 1);

    for (std::size_t n = 2; n <= 12; ++n) {
        BoundsReport b = bounds_report(n);
        CHECK(Rat(b.central_binom_lower) <= b.pointwise_upper);
    }
    CHECK_THROWS_AS(bounds_report(1), invalid_input);
}

TEST_CASE("enlarge on a generic triple") {
    PrimeTuple t({5, 7, 11});
    EnlargeResult er = enlarge(t);
    CHECK(er.cert.all_conditions_hold());
    CHECK(er.tuple.size() == 3);
    for (std::size_t j = 0; j < 3; ++j) CHECK(er.tuple.p(j) > t.p(j));

    ResidueProfile prof = residue_profile(er.tuple);
    CHECK(prof.generic);
    for (std::size_t j = 0; j < 3; ++j) {
        // floor(n/2) + 1 < c p_j' < d(S_j(N'))
        CHECK(Rat(2) < er.c * Rat(er.tuple.p(j)));
        CHECK(er.c * Rat(er.tuple.p(j)) < Rat(prof.dims[j].gap));
    }

    // order preservation, label by label
    ResidueProfile before = residue_profile(t);
    for (std::size_t j = 0; j < 3; ++j) {
        std::vector<std::size_t> ord_before(before.dims[j].by_subset.size()),
            ord_after(ord_before.size());
        std::iota(ord_before.begin(), ord_before.end(), 0);
        ord_after = ord_before;
        std::sort(ord_before.begin(), ord_before.end(), [&](std::size_t a, std::size_t b) {
            return before.dims[j].by_subset[a] < before.dims[j].by_subset[b];
        });
        std::sort(ord_after.begin(), ord_after.end(), [&](std::size_t a, std::size_t b) {
            return prof.dims[j].by_subset[a] < prof.dims[j].by_subset[b];
        });
        CHECK(ord_before == ord_after);
    }

    // heights agree: the region diagram only depends on the orders
    CHECK(RegionModel(er.tuple).scan_height().height == RegionModel(t).scan_height().height);

    VerifyReport rep = verify_certificate(er.cert);
    CHECK(rep.ok);
}

TEST_CASE("enlarge preconditions") {
    CHECK_THROWS_AS(enlarge(PrimeTuple({2, 3, 5})), invalid_input);  // sum >= 1
    CHECK_THROWS_AS(enlarge(PrimeTuple({3, 5, 7})), invalid_input);  // not generic
}

TEST_CASE("amplify from a pair") {
    AmplifyResult ar = amplify(PrimeTuple({3, 5}));
    CHECK(ar.tuple.size() == 3);
    CHECK(ar.cert.required_factor == 1);
    long long mag = ar.witness_coeff < 0 ? -ar.witness_coeff : ar.witness_coeff;
    CHECK(mag >= 1);
    CHECK(verify_certificate(ar.cert).ok);
}

TEST_CASE("chained amplification realizes the central-binomial product") {
    // (3,5) -> 3 -> 4 -> 5 primes; witnesses of size >= 1, 2, 6 = C(1,0) C(2,1) C(3,1)
    PrimeTuple t({3, 5});
    long long expected[3] = {1, 2, 6};
    for (int step = 0; step < 3; ++step) {
        AmplifyResult ar = amplify(t);
        long long mag = ar.witness_coeff < 0 ? -ar.witness_coeff : ar.witness_coeff;
        REQUIRE(mag >= expected[step]);
        REQUIRE(verify_certificate(ar.cert).ok);
        t = ar.tuple;
    }
    CHECK(t.size() == 5);
    CHECK(Rat(bounds_report(5).central_binom_lower) == Rat(6));
}

TEST_CASE("amplify a height-1 triple to a 4-tuple with a coefficient of size 2") {
    AmplifyResult ar = amplify(PrimeTuple({5, 7, 11}));
    CHECK(ar.tuple.size() == 4);
    CHECK(ar.cert.required_factor == 2);
    long long mag = ar.witness_coeff < 0 ? -ar.witness_coeff : ar.witness_coeff;
    CHECK(mag >= 2);

    // the witness re-verifies through the independent truncation route
    std::vector<Int> np(ar.tuple.primes().begin(), ar.tuple.primes().end() - 1);
    auto provider = make_closed_form_provider(PrimeTuple(np, false));
    CHECK(coeff_via_truncation(ar.tuple.primes().back(), *provider, ar.witness_k) ==
          ar.witness_coeff);

    VerifyReport rep = verify_certificate(ar.cert);
    CHECK(rep.ok);

    // json round-trip keeps the certificate verifiable
    Certificate back = Certificate::from_json(ar.cert.to_json());
    CHECK(back.witness_coeff == ar.witness_coeff);
    CHECK(verify_certificate(back).ok);
}

TEST_CASE("amplify caches its certificate") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "pn-amplify-cache";
    fs::remove_all(dir);
    Config cfg;
    cfg.cache_dir = dir.string();
    AmplifyResult first = amplify(PrimeTuple({3, 5}), cfg);
    AmplifyResult second = amplify(PrimeTuple({3, 5}), cfg);
    CHECK(first.cert.to_json() == second.cert.to_json());
    CHECK(second.witness_coeff == first.witness_coeff);
    fs::remove_all(dir);
}

TEST_CASE("construct_height1 for n = 2, 3, 4") {
    for (std::size_t n : {std::size_t{2}, std::size_t{3}, std::size_t{4}}) {
        Certificate cert = construct_height1(n);
        CHECK(cert.primes.size() == n);
        CHECK(cert.all_conditions_hold());
        CHECK(cert.has_height);
        CHECK(cert.height == 1);

        PrimeTuple t(cert.primes);
        CHECK(RegionModel(t).scan_height().height == 1);
        CHECK(verify_certificate(cert).ok);
    }
    Certificate c2 = construct_height1(2);
    CHECK(c2.primes == std::vector<Int>{2, 3});
    CHECK_THROWS_AS(construct_height1(1), invalid_input);
}

TEST_CASE("certificates round-trip through json and detect tampering") {
    Certificate cert = construct_height1(3);
    Certificate back = Certificate::from_json(cert.to_json());
    CHECK(back.kind == cert.kind);
    CHECK(back.primes == cert.primes);
    CHECK(back.conditions.size() == cert.conditions.size());
    CHECK(back.height == cert.height);
    CHECK(back.height_witness == cert.height_witness);
    CHECK(verify_certificate(back).ok);

    Certificate bad = back;
    bad.primes[0] = 7919;  // different prime: conditions no longer hold
    CHECK_FALSE(verify_certificate(bad).ok);

    Certificate composite = back;
    composite.primes[0] = 4;
    CHECK_FALSE(verify_certificate(composite).ok);

    Certificate wrong_height = back;
    wrong_height.height = 5;
    CHECK_FALSE(verify_certificate(wrong_height).ok);
}

TEST_CASE("certificate cache round-trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "pn-cache-test";
    fs::remove_all(dir);
    Config cfg;
    cfg.cache_dir = dir.string();

    Certificate first = construct_height1(3, cfg);
    fs::path expect = dir / ("height1-n3-b" + std::to_string(cfg.ap_budget) + "-s0.json");
    CHECK(fs::exists(expect));
    Certificate second = construct_height1(3, cfg);
    CHECK(second.to_json() == first.to_json());
    fs::remove_all(dir);
}
