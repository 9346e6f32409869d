#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pn/config.hpp"
#include "pn/types.hpp"

namespace pn {

/// mo(num/den, m): the unique k in [0, m) with k*den ≡ num (mod m).
/// Requires gcd(den, m) = 1; throws invalid_input naming the offending gcd.
Int mo(const Int& num, const Int& den, const Int& m);

/// mo with 0 mapped to m, so the result lies in [1, m].
Int mo_plus(const Int& num, const Int& den, const Int& m);

/// Chinese remainder: the unique k in [0, prod m_i) matching every
/// (residue, modulus) pair. Moduli must be pairwise coprime.
Int crt(const std::vector<std::pair<Int, Int>>& pairs);

/// Miller-Rabin with a fixed, reproducible witness schedule: the proven
/// 12-witness set below 2^64, then ceil(e/2) pseudorandom witnesses derived
/// deterministically from (n, seed) for error probability < 2^-e.
bool is_probable_prime(const Int& n, unsigned error_exponent = 80, std::uint64_t seed = 0);

/// Smallest probable prime p >= lower with p ≡ a (mod m). Requires
/// gcd(a, m) = 1 and lower >= 2; throws resource_error (naming the last
/// candidate) after `budget` candidates.
Int next_prime_in_ap(const Int& a, const Int& m, const Int& lower,
                     const Config& cfg = Config::defaults());

} // namespace pn
