#pragma once

#include <memory>

#include "pn/config.hpp"
#include "pn/types.hpp"

namespace pn {

/// Source of base coefficients a_N(k) for a fixed tuple. The contract covers
/// every integer k: implementations answer the true coefficient of x^k in
/// P_N(x), which is 0 for k < 0 and for k > deg P_N.
class CoeffProvider {
public:
    virtual ~CoeffProvider() = default;
    virtual long long coeff(const Int& k) const = 0;
    virtual const PrimeTuple& tuple() const = 0;
};

/// Expands P_N once up front; exact for every k, any tuple within the cap.
std::unique_ptr<CoeffProvider> make_dense_provider(PrimeTuple t,
                                                   const Config& cfg = Config::defaults());

/// Pointwise evaluation; valid only when deg P_N < N (checked), answers 0
/// outside [0, N) where the polynomial has no support.
std::unique_ptr<CoeffProvider> make_closed_form_provider(PrimeTuple t);

/// Peels off the largest prime with the truncation recursion down to the
/// n = 2 closed form, memoizing each level on k in [0, N). Each level's base
/// must satisfy sum 1/p_i < 1 (checked).
std::unique_ptr<CoeffProvider> make_recursive_provider(PrimeTuple t);

/// a_{pN}(k) - a_{pN}(k - N): sum of (-1)^|T| a_N(p^{-1}(k - N_T)) over the
/// subsets T with k ≡ N_T (mod p), where N_T = sum_{i in T} N_i.
long long delta_minus_n(const Int& p, const CoeffProvider& base, const Int& k);

/// a_{pN}(k) - a_{pN}(k - pN) = sum over all T of (-1)^|T| a_N(m_{k - N_T})
/// with m_k = p^{-1}(k - N mo(k N^{-1}, p)).
long long coeff_via_general(const Int& p, const CoeffProvider& base, const Int& k);

/// a_{pN}(k) itself, for sum 1/p_i < 1 on the base: the terms of
/// coeff_via_general filtered by the exact inequality p * m' <= k with
/// m' = mo((k - N_T) p^-1, N). (The fractional form m' <= k/p is implemented
/// as this integer comparison.)
long long coeff_via_truncation(const Int& p, const CoeffProvider& base, const Int& k);

/// Convenience: truncation with a closed-form inner provider.
long long coeff_via_truncation(const Int& p, const PrimeTuple& base, const Int& k);

} // namespace pn
