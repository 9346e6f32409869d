#include "pn/arith.hpp"

#include <array>
#include <sstream>

namespace pn {

std::string to_string(const Int& v) { return v.get_str(); }

std::string to_string(const Rat& v) {
    Rat r(v);
    r.canonicalize();
    return r.get_str();
}

// --- PrimeTuple ------------------------------------------------------------

PrimeTuple::PrimeTuple(std::vector<Int> primes, bool check) : primes_(std::move(primes)), n_(1) {
    if (primes_.empty()) throw invalid_input("prime tuple must not be empty");
    for (const Int& p : primes_) {
        if (check) {
            if (p < 2) throw invalid_input("tuple entry " + p.get_str() + " is < 2");
            if (!is_probable_prime(p)) throw invalid_input("tuple entry " + p.get_str() + " is composite");
        }
        n_ *= p;
    }
    if (check) {
        for (std::size_t i = 0; i < primes_.size(); ++i)
            for (std::size_t j = i + 1; j < primes_.size(); ++j)
                if (primes_[i] == primes_[j])
                    throw invalid_input("tuple entries must be distinct; " + primes_[i].get_str() + " repeats");
    }
}

Int PrimeTuple::cofactor(std::size_t i) const { return n_ / p(i); }

Int PrimeTuple::cofactor2(std::size_t i, std::size_t j) const {
    if (i == j) throw invalid_input("cofactor2 needs two distinct indices");
    return n_ / (p(i) * p(j));
}

PrimeTuple PrimeTuple::without(std::size_t i) const {
    std::vector<Int> rest;
    rest.reserve(primes_.size() - 1);
    for (std::size_t j = 0; j < primes_.size(); ++j)
        if (j != i) rest.push_back(primes_[j]);
    return PrimeTuple(std::move(rest), false);
}

PrimeTuple PrimeTuple::with_appended(const Int& p) const {
    std::vector<Int> ext = primes_;
    ext.push_back(p);
    return PrimeTuple(std::move(ext), false);
}

PrimeTuple PrimeTuple::with_replaced(std::size_t i, const Int& p) const {
    std::vector<Int> ext = primes_;
    ext.at(i) = p;
    return PrimeTuple(std::move(ext), false);
}

Rat PrimeTuple::inverse_sum() const {
    Rat s(0);
    for (const Int& p : primes_) s += Rat(1) / Rat(p);
    s.canonicalize();
    return s;
}

std::string PrimeTuple::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (i) os << "*";
        os << primes_[i].get_str();
    }
    return os.str();
}

// --- OrientationSet ---------------------------------------------------------

OrientationSet OrientationSet::standard(std::size_t n) {
    std::vector<char> out(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) out[i * n + j] = 1;
    return OrientationSet(n, std::move(out));
}

OrientationSet OrientationSet::from_mask(std::size_t n, std::uint64_t mask) {
    std::vector<char> out(n * n, 0);
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++bit) {
            if (mask >> bit & 1)
                out[i * n + j] = 1;
            else
                out[j * n + i] = 1;
        }
    if (bit < 64 && (mask >> bit) != 0) throw invalid_input("orientation mask has bits beyond C(n,2)");
    return OrientationSet(n, std::move(out));
}

std::uint64_t OrientationSet::mask() const {
    std::uint64_t mask = 0;
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j, ++bit)
            if (out_[i * n_ + j]) mask |= std::uint64_t(1) << bit;
    return mask;
}

std::uint64_t OrientationSet::mask_count(std::size_t n) {
    return std::uint64_t(1) << (n * (n - 1) / 2);
}

// --- CoeffVector -------------------------------------------------------------

long long CoeffVector::at(const Int& k) const {
    if (k < 0 || k >= Int(coeffs.size())) return 0;
    return coeffs[k.get_ui()];
}

std::size_t CoeffVector::degree() const {
    std::size_t d = coeffs.size();
    while (d > 1 && coeffs[d - 1] == 0) --d;
    return d - 1;
}

std::string CoeffVector::to_csv() const {
    std::ostringstream os;
    os << "index,coefficient\n";
    for (std::size_t k = 0; k < coeffs.size(); ++k) os << k << "," << coeffs[k] << "\n";
    return os.str();
}

std::string CoeffVector::to_json() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k) os << ",";
        os << "\"" << coeffs[k] << "\"";
    }
    os << "]";
    return os.str();
}

// --- modular residues --------------------------------------------------------

Int mo(const Int& num, const Int& den, const Int& m) {
    if (m < 2) throw invalid_input("mo: modulus " + m.get_str() + " must be >= 2");
    Int inv;
    if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t())) {
        Int g;
        mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
        throw invalid_input("mo: denominator " + den.get_str() + " not invertible mod " + m.get_str() +
                            " (gcd = " + g.get_str() + ")");
    }
    Int r = num % m;
    if (r < 0) r += m;
    r = r * inv % m;
    return r;
}

Int mo_plus(const Int& num, const Int& den, const Int& m) {
    Int r = mo(num, den, m);
    return r == 0 ? m : r;
}

Int crt(const std::vector<std::pair<Int, Int>>& pairs) {
    Int x = 0, m = 1;
    for (const auto& [r, mod] : pairs) {
        if (mod < 1) throw invalid_input("crt: modulus " + mod.get_str() + " must be positive");
        Int g;
        mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), mod.get_mpz_t());
        if (g != 1)
            throw invalid_input("crt: moduli not pairwise coprime (gcd " + g.get_str() + " at modulus " +
                                mod.get_str() + ")");
        // x' = x + m * ((r - x) * m^-1 mod mod)
        Int t = mo(r - x, m, mod);
        x += m * t;
        m *= mod;
    }
    return x;
}

// --- primality ---------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// One strong-probable-prime round for odd n = d * 2^s + 1.
bool mr_round(const Int& n, const Int& a, const Int& d, unsigned long s) {
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Int n1 = n - 1;
    if (x == 1 || x == n1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == n1) return true;
    }
    return false;
}

constexpr std::array<unsigned, 12> kSmallWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

} // namespace

bool is_probable_prime(const Int& n, unsigned error_exponent, std::uint64_t seed) {
    if (n < 2) return false;
    for (unsigned p : kSmallWitnesses) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    // Deterministic for anything fitting 64 bits (proven witness set).
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        for (unsigned a : kSmallWitnesses)
            if (!mr_round(n, Int(a), d, s)) return false;
        return true;
    }
    for (unsigned a : kSmallWitnesses)
        if (!mr_round(n, Int(a), d, s)) return false;

    // Fixed-schedule witnesses: state depends only on (n, seed), so repeated
    // runs agree. Each round contributes an error factor of 1/4.
    unsigned rounds = (error_exponent + 1) / 2;
    std::uint64_t state = seed ^ mpz_fdiv_ui(n.get_mpz_t(), 0x7fffffffffffffe7ULL) ^ 0x243f6a8885a308d3ULL;
    Int span = n - 4;
    for (unsigned i = 0; i < rounds; ++i) {
        Int a = 2 + Int(mo(Int(splitmix64(state)), 1, span));
        if (!mr_round(n, a, d, s)) return false;
    }
    return true;
}

Int next_prime_in_ap(const Int& a, const Int& m, const Int& lower, const Config& cfg) {
    if (m < 1) throw invalid_input("next_prime_in_ap: modulus must be positive");
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (m > 1 && g != 1)
        throw invalid_input("next_prime_in_ap: residue " + a.get_str() + " not coprime to modulus " +
                            m.get_str() + " (gcd = " + g.get_str() + ")");
    if (lower < 2) throw invalid_input("next_prime_in_ap: lower bound must be >= 2");

    Int x = m == 1 ? lower : Int(lower + mo(a - lower, 1, m));  // smallest value >= lower in the class
    for (std::uint64_t tried = 0; tried < cfg.ap_budget; ++tried, x += m) {
        if (is_probable_prime(x, cfg.mr_error_exponent, cfg.seed)) return x;
    }
    throw resource_error("next_prime_in_ap: no prime ≡ " + a.get_str() + " (mod " + m.get_str() +
                         ") within " + std::to_string(cfg.ap_budget) + " candidates; last tried " +
                         Int(x - m).get_str());
}

} // namespace pn
