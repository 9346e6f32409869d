#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pn/config.hpp"
#include "pn/types.hpp"

namespace pn {

/// Exact degree of P_N: N - sum N_i + sum_{i<j} N_{ij}.
Int degree_pn(const PrimeTuple& t);

/// Ground-truth expansion of P_N(x) by sparse multiplication of the numerator
/// binomials followed by in-place power-series division by each denominator
/// factor; the remainder of every division is asserted to vanish. With
/// `reduced`, folds into P_N mod (1 - x^N). Throws resource_error when the
/// working array would exceed cfg.expansion_cap entries.
CoeffVector expand_pn(const PrimeTuple& t, bool reduced = false,
                      const Config& cfg = Config::defaults());

/// Height of a dense vector: max |coefficient| and the smallest index
/// attaining it. Throws invalid_input on an empty vector.
std::pair<long long, std::size_t> height_dense(const CoeffVector& v);

/// n = 2 closed form: {mo(k p^-1, q) < mo(p^-1, q)} - {mo(k q^-1, p) >= mo(q^-1, p)}
/// for 0 <= k < pq.
int pq_coeff(const Int& p, const Int& q, const Int& k);

/// The n x n matrix m[j][i] = mo(p_i^-1, p_j) (diagonal unused). Exposed so
/// the identity verifiers can be driven with a perturbed matrix as a negative
/// control.
std::vector<std::vector<Int>> inverse_matrix(const PrimeTuple& t);

/// Expand the decomposition of P_N mod (1 - x^N) as the n-term sum of
/// geometric products selected by the orientation set S, using the supplied
/// inverse-residue matrix. Length-N folded coefficient vector.
std::vector<long long> expand_pn_decomposition(const PrimeTuple& t, const OrientationSet& S,
                                               const std::vector<std::vector<Int>>& inv,
                                               const Config& cfg = Config::defaults());

/// True iff the S-decomposition reproduces P_N exactly, coefficient by
/// coefficient, modulo 1 - x^N.
bool verify_prop_pn(const PrimeTuple& t, const OrientationSet& S,
                    const Config& cfg = Config::defaults());

/// True iff the two-term split of P_N along dimensions (i, j) holds modulo
/// x^N - 1 (i != j, 0-based).
bool verify_prop_two(const PrimeTuple& t, std::size_t i, std::size_t j,
                     const Config& cfg = Config::defaults());

} // namespace pn
