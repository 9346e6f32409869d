#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pn/config.hpp"
#include "pn/types.hpp"

namespace pn {

/// One exact inequality instance recorded (and re-checkable) in a certificate.
struct Condition {
    std::string name;
    std::string lhs;
    std::string rel;
    std::string rhs;
    bool holds = false;
};

struct TraceStep {
    std::string action;
    int dim = -1;            // 0-based dimension, -1 when not applicable
    Int from;
    Int to;
    Int modulus;             // step of the AP that was searched
    std::uint64_t tried = 0; // candidates examined
};

/// Self-verifying record of a constructed tuple: everything re-derives from
/// `primes` (plus `input_primes` for the order-preservation statements).
struct Certificate {
    std::string kind;  // "height1" | "amplified" | "enlarged"
    std::vector<Int> primes;
    std::vector<Int> input_primes;  // construction input; empty for height1
    std::vector<Condition> conditions;

    std::optional<Rat> c;  // enlarge constant

    bool has_height = false;
    long long height = 0;
    Int height_witness;

    bool has_witness_coeff = false;  // amplified: explicit big coefficient
    Int witness_k;
    long long witness_coeff = 0;
    long long required_factor = 0;

    std::vector<TraceStep> trace;
    std::uint64_t ap_budget = 0;
    std::uint64_t seed = 0;

    bool all_conditions_hold() const;
    std::string to_json() const;
    static Certificate from_json(const std::string& text);
};

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> failures;
};

/// Re-derive every condition (and the measured height / witness coefficient)
/// from the certificate's primes; nothing stored is trusted.
VerifyReport verify_certificate(const Certificate& cert, const Config& cfg = Config::defaults());

/// Fractional part of sum_{i in T} (1 - mo(p_j^-1, p_i)/p_i), exact. j must
/// not lie in T. Satisfies: p_j z_T + sum_{i in T} 1/p_i is an integer, and
/// when that inverse sum is < 1, ceil(p_j z_T) = mo_plus(sum p_i^-1, p_j).
Rat z_value(const PrimeTuple& t, std::size_t j, const std::vector<std::size_t>& T);

struct EnlargeResult {
    PrimeTuple tuple;
    Rat c;
    Certificate cert;
};

/// Region-enlarging lift: same boundary orders in every dimension, all gaps
/// beyond floor(n/2)+1 < c p_j' < d(S_j(N')). Two phases: force every gap to
/// at least 3, then rescale every prime above (floor(n/2)+1)/c.
EnlargeResult enlarge(const PrimeTuple& t, const Config& cfg = Config::defaults());

struct AmplifyResult {
    PrimeTuple tuple;  // N' q
    Int witness_k;
    long long witness_coeff = 0;
    Certificate cert;
};

/// Height amplification: enlarge, adjoin q with mo(q^-1, p_j') = floor(c p_j'),
/// and exhibit k with |a_{qN'}(k)| >= binom(n-1, floor((n-1)/2)) * height(P_N').
AmplifyResult amplify(const PrimeTuple& t, const Config& cfg = Config::defaults());

/// Height-1 tuple for any n >= 2 by the inductive gap-lift construction; the
/// certificate carries every (a), (b), (c) instance and the measured height
/// when the region scan fits the budget.
Certificate construct_height1(std::size_t n, const Config& cfg = Config::defaults());

struct BoundsReport {
    std::size_t n = 0;
    Rat pointwise_upper;      // n * 2^(C(n-2,2) - 1); rational (3/2 at n = 3)
    Int central_binom_lower;  // prod_{i=1..n-2} C(i, floor(i/2))
    Rat maclaurin_threshold;  // 2n/(n-1)
};

BoundsReport bounds_report(std::size_t n);

} // namespace pn
