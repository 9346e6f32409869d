#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pn/errors.hpp"

namespace pn {

using Int = mpz_class;
using Rat = mpq_class;

std::string to_string(const Int& v);
std::string to_string(const Rat& v);

/// An ordered tuple of distinct (probable) primes p_1..p_n with N = prod p_i.
/// Indices are 0-based throughout the code; cofactor(i) = N/p_i and
/// cofactor2(i,j) = N/(p_i p_j) are the only quotients the polynomial needs.
class PrimeTuple {
public:
    /// `check` runs primality + distinctness validation; internal callers that
    /// extend an already-validated tuple may skip it.
    explicit PrimeTuple(std::vector<Int> primes, bool check = true);

    std::size_t size() const { return primes_.size(); }
    const Int& p(std::size_t i) const { return primes_.at(i); }
    const std::vector<Int>& primes() const { return primes_; }
    const Int& modulus() const { return n_; }

    Int cofactor(std::size_t i) const;                  // N_i
    Int cofactor2(std::size_t i, std::size_t j) const;  // N_{ij}

    PrimeTuple without(std::size_t i) const;
    PrimeTuple with_appended(const Int& p) const;
    PrimeTuple with_replaced(std::size_t i, const Int& p) const;

    /// Exact rational sum of the 1/p_i.
    Rat inverse_sum() const;

    std::string str() const;  // "5*11*23"

private:
    std::vector<Int> primes_;
    Int n_;
};

/// Tournament on [n]: exactly one of (i,j),(j,i) for each i != j. The i -> j
/// orientation selects the "1 - x^(...)" factor for dimension j in term i.
class OrientationSet {
public:
    /// The figures' choice {(i,j) : i > j}.
    static OrientationSet standard(std::size_t n);
    /// mask encodes, pair by pair in lexicographic (i<j) order, whether the
    /// pair is oriented (i,j) (bit set) or (j,i).
    static OrientationSet from_mask(std::size_t n, std::uint64_t mask);

    std::size_t n() const { return n_; }
    bool contains(std::size_t i, std::size_t j) const { return out_[i * n_ + j]; }
    std::uint64_t mask() const;
    static std::uint64_t mask_count(std::size_t n);  // 2^C(n,2)

private:
    OrientationSet(std::size_t n, std::vector<char> out) : n_(n), out_(std::move(out)) {}
    std::size_t n_ = 0;
    std::vector<char> out_;
};

/// Dense exact coefficient block of P_N (or its reduction mod 1 - x^N).
/// Individual coefficients fit comfortably in 64 bits at any expandable scale;
/// all arithmetic producing them is overflow-checked.
struct CoeffVector {
    std::vector<long long> coeffs;
    Int modulus;          // the N it belongs to
    bool reduced = false; // true when folded mod 1 - x^N

    long long at(const Int& k) const;  // 0 outside the stored range
    std::size_t degree() const;

    std::string to_csv() const;        // "index,coefficient" lines
    std::string to_json() const;       // array of decimal strings
};

} // namespace pn
