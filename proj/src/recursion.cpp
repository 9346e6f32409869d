#include "pn/recursion.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "pn/arith.hpp"
#include "pn/engine.hpp"
#include "pn/poly.hpp"

namespace pn {

namespace {

void check_coprime(const Int& p, const PrimeTuple& base, const char* who) {
    if (mpz_divisible_p(base.modulus().get_mpz_t(), p.get_mpz_t()))
        throw invalid_input(std::string(who) + ": " + p.get_str() + " already divides " +
                            base.modulus().get_str());
}

class DenseProvider final : public CoeffProvider {
public:
    DenseProvider(PrimeTuple t, const Config& cfg) : t_(std::move(t)), v_(expand_pn(t_, false, cfg)) {}
    long long coeff(const Int& k) const override { return v_.at(k); }
    const PrimeTuple& tuple() const override { return t_; }

private:
    PrimeTuple t_;
    CoeffVector v_;
};

class ClosedFormProvider final : public CoeffProvider {
public:
    explicit ClosedFormProvider(PrimeTuple t) : t_(std::move(t)), s_(OrientationSet::standard(t_.size())) {
        if (!(degree_pn(t_) < t_.modulus()))
            throw unsupported_error("closed-form provider: deg P_N >= N for " + t_.str());
    }
    long long coeff(const Int& k) const override {
        if (k < 0 || k >= t_.modulus()) return 0;
        return coeff_at(t_, k, s_);
    }
    const PrimeTuple& tuple() const override { return t_; }

private:
    PrimeTuple t_;
    OrientationSet s_;
};

class RecursiveProvider final : public CoeffProvider {
public:
    explicit RecursiveProvider(PrimeTuple t) : t_(std::move(t)) {
        if (t_.size() > 2) {
            std::size_t top = 0;
            for (std::size_t i = 1; i < t_.size(); ++i)
                if (t_.p(i) > t_.p(top)) top = i;
            top_prime_ = t_.p(top);
            PrimeTuple base = t_.without(top);
            if (!(base.inverse_sum() < Rat(1)))
                throw unsupported_error("recursive provider: base " + base.str() +
                                        " has sum 1/p_i >= 1; the truncation step does not apply");
            inner_ = std::make_unique<RecursiveProvider>(std::move(base));
        }
    }

    long long coeff(const Int& k) const override {
        if (k < 0) return 0;
        if (t_.size() == 2) {
            if (k >= t_.modulus()) return 0;
            return pq_coeff(t_.p(0), t_.p(1), k);
        }
        if (k >= t_.modulus()) return 0;  // deg P_N < N along the whole descent
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(k);
            if (it != memo_.end()) return it->second;
        }
        long long c = coeff_via_truncation(top_prime_, *inner_, k);
        std::lock_guard<std::mutex> lock(mu_);
        memo_.emplace(k, c);
        return c;
    }

    const PrimeTuple& tuple() const override { return t_; }

private:
    PrimeTuple t_;
    Int top_prime_;
    std::unique_ptr<RecursiveProvider> inner_;
    mutable std::mutex mu_;
    mutable std::map<Int, long long> memo_;
};

} // namespace

std::unique_ptr<CoeffProvider> make_dense_provider(PrimeTuple t, const Config& cfg) {
    return std::make_unique<DenseProvider>(std::move(t), cfg);
}

std::unique_ptr<CoeffProvider> make_closed_form_provider(PrimeTuple t) {
    return std::make_unique<ClosedFormProvider>(std::move(t));
}

std::unique_ptr<CoeffProvider> make_recursive_provider(PrimeTuple t) {
    return std::make_unique<RecursiveProvider>(std::move(t));
}

long long delta_minus_n(const Int& p, const CoeffProvider& base, const Int& k) {
    const PrimeTuple& t = base.tuple();
    check_coprime(p, t, "delta_minus_n");
    const std::size_t n = t.size();
    std::vector<Int> cof(n);
    for (std::size_t i = 0; i < n; ++i) cof[i] = t.cofactor(i);

    long long total = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Int nt = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) nt += cof[i];
        Int arg = k - nt;
        if (!mpz_divisible_p(arg.get_mpz_t(), p.get_mpz_t())) continue;
        long long c = base.coeff(arg / p);
        total += (__builtin_popcountll(mask) & 1) ? -c : c;
    }
    return total;
}

long long coeff_via_general(const Int& p, const CoeffProvider& base, const Int& k) {
    const PrimeTuple& t = base.tuple();
    check_coprime(p, t, "coeff_via_general");
    const Int& N = t.modulus();
    const std::size_t n = t.size();
    std::vector<Int> cof(n);
    for (std::size_t i = 0; i < n; ++i) cof[i] = t.cofactor(i);

    long long total = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Int nt = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) nt += cof[i];
        Int x = k - nt;
        Int m = (x - N * mo(x, N, p)) / p;  // exact: x - N*mo(..) ≡ 0 (mod p)
        long long c = base.coeff(m);
        total += (__builtin_popcountll(mask) & 1) ? -c : c;
    }
    return total;
}

long long coeff_via_truncation(const Int& p, const CoeffProvider& base, const Int& k) {
    const PrimeTuple& t = base.tuple();
    check_coprime(p, t, "coeff_via_truncation");
    if (!(t.inverse_sum() < Rat(1)))
        throw invalid_input("coeff_via_truncation: base " + t.str() + " has sum 1/p_i >= 1");
    const Int& N = t.modulus();
    const std::size_t n = t.size();
    std::vector<Int> cof(n);
    for (std::size_t i = 0; i < n; ++i) cof[i] = t.cofactor(i);

    long long total = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Int nt = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) nt += cof[i];
        Int mprime = mo(k - nt, p, N);
        if (p * mprime > k) continue;  // indicator {m' <= k p^-1} as p m' <= k
        long long c = base.coeff(mprime);
        total += (__builtin_popcountll(mask) & 1) ? -c : c;
    }
    return total;
}

long long coeff_via_truncation(const Int& p, const PrimeTuple& base, const Int& k) {
    auto provider = make_closed_form_provider(base);
    return coeff_via_truncation(p, *provider, k);
}

} // namespace pn
