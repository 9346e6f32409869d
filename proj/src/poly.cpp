#include "pn/poly.hpp"

#include <algorithm>
#include <thread>

#include "pn/arith.hpp"

namespace pn {

namespace {

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw internal_error("coefficient overflow in exact expansion");
    return r;
}

long long checked_sub(long long a, long long b) {
    long long r;
    if (__builtin_sub_overflow(a, b, &r)) throw internal_error("coefficient overflow in exact expansion");
    return r;
}

std::size_t to_index(const Int& v, const char* what) {
    if (v < 0 || !v.fits_ulong_p()) throw resource_error(std::string(what) + " does not fit an array index");
    return static_cast<std::size_t>(v.get_ui());
}

// b_k = a_k + b_{k-e}, one independent chain per residue class mod e.
void divide_by_binomial(std::vector<long long>& a, std::size_t e, unsigned threads) {
    const std::size_t len = a.size();
    auto chain = [&](std::size_t r0, std::size_t r1) {
        for (std::size_t r = r0; r < r1; ++r)
            for (std::size_t k = r + e; k < len; k += e) a[k] = checked_add(a[k], a[k - e]);
    };
    if (threads <= 1 || e < 2 * threads || len < (std::size_t{1} << 18)) {
        chain(0, e);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t per = (e + threads - 1) / threads;
    for (std::size_t r0 = 0; r0 < e; r0 += per)
        pool.emplace_back(chain, r0, std::min(e, r0 + per));
    for (auto& th : pool) th.join();
}

} // namespace

Int degree_pn(const PrimeTuple& t) {
    const std::size_t n = t.size();
    Int d = t.modulus();
    for (std::size_t i = 0; i < n; ++i) d -= t.cofactor(i);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d += t.cofactor2(i, j);
    return d;
}

CoeffVector expand_pn(const PrimeTuple& t, bool reduced, const Config& cfg) {
    const std::size_t n = t.size();
    const Int& N = t.modulus();

    Int required = N + 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) required += t.cofactor2(i, j);
    if (required > Int(static_cast<unsigned long>(cfg.expansion_cap)))
        throw resource_error("expand_pn: requires " + required.get_str() + " coefficients, cap is " +
                             std::to_string(cfg.expansion_cap));

    std::size_t len = to_index(required, "expand_pn length");
    std::vector<long long> a(len, 0);
    a[0] = 1;

    std::vector<std::size_t> numer{to_index(N, "N")};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) numer.push_back(to_index(t.cofactor2(i, j), "N_ij"));

    for (std::size_t e : numer)
        for (std::size_t k = len; k-- > e;) a[k] = checked_sub(a[k], a[k - e]);

    unsigned threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t e = to_index(t.cofactor(i), "N_i");
        divide_by_binomial(a, e, threads);
        for (std::size_t k = a.size() - e; k < a.size(); ++k)
            if (a[k] != 0)
                throw internal_error("expand_pn: division by 1 - x^" + std::to_string(e) +
                                     " left a nonzero remainder");
        a.resize(a.size() - e);
    }

    if (a.empty() || a.back() == 0) throw internal_error("expand_pn: leading coefficient vanished");

    CoeffVector out;
    out.modulus = N;
    if (reduced && Int(a.size()) > N) {
        std::size_t nn = to_index(N, "N");
        std::vector<long long> folded(nn, 0);
        for (std::size_t k = 0; k < a.size(); ++k)
            folded[k % nn] = checked_add(folded[k % nn], a[k]);
        out.coeffs = std::move(folded);
        out.reduced = true;
    } else {
        out.coeffs = std::move(a);
        out.reduced = reduced;
    }
    return out;
}

std::pair<long long, std::size_t> height_dense(const CoeffVector& v) {
    if (v.coeffs.empty()) throw invalid_input("height_dense: empty coefficient vector");
    long long best = 0;
    std::size_t witness = 0;
    for (std::size_t k = 0; k < v.coeffs.size(); ++k) {
        long long mag = v.coeffs[k] < 0 ? -v.coeffs[k] : v.coeffs[k];
        if (mag > best) {
            best = mag;
            witness = k;
        }
    }
    return {best, witness};
}

int pq_coeff(const Int& p, const Int& q, const Int& k) {
    if (k < 0 || k >= p * q)
        throw invalid_input("pq_coeff: exponent " + k.get_str() + " outside [0, pq)");
    int up = mo(k, p, q) < mo(1, p, q) ? 1 : 0;
    int down = mo(k, q, p) >= mo(1, q, p) ? 1 : 0;
    return up - down;
}

// --- identity verifiers -------------------------------------------------------

namespace {

using Folded = std::vector<long long>;

// g[(e + a*step) mod N] += sign * f[e], a = 0..count-1
Folded mul_geometric(const Folded& f, std::size_t step, std::size_t count, int sign, std::size_t N) {
    Folded g(N, 0);
    for (std::size_t e = 0; e < N; ++e) {
        if (f[e] == 0) continue;
        std::size_t pos = e;
        for (std::size_t a = 0; a < count; ++a) {
            g[pos] = checked_add(g[pos], sign * f[e]);
            pos += step;
            if (pos >= N) pos -= N;
        }
    }
    return g;
}

// f := f * (1 - x^e) mod (1 - x^N)
Folded mul_binomial(const Folded& f, std::size_t e, std::size_t N) {
    Folded g = f;
    for (std::size_t pos = 0; pos < N; ++pos) {
        if (f[pos] == 0) continue;
        std::size_t q = (pos + e) % N;
        g[q] = checked_sub(g[q], f[pos]);
    }
    return g;
}

void add_into(Folded& acc, const Folded& f) {
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] = checked_add(acc[k], f[k]);
}

std::size_t folded_size(const PrimeTuple& t, const Config& cfg) {
    const Int& N = t.modulus();
    if (N > Int(static_cast<unsigned long>(cfg.expansion_cap)))
        throw resource_error("identity check: N = " + N.get_str() + " exceeds cap " +
                             std::to_string(cfg.expansion_cap));
    return static_cast<std::size_t>(N.get_ui());
}

Folded folded_reference(const PrimeTuple& t, const Config& cfg) {
    CoeffVector v = expand_pn(t, true, cfg);
    Folded ref(folded_size(t, cfg), 0);
    for (std::size_t k = 0; k < v.coeffs.size(); ++k) ref[k] = v.coeffs[k];
    return ref;
}

} // namespace

std::vector<std::vector<Int>> inverse_matrix(const PrimeTuple& t) {
    const std::size_t n = t.size();
    std::vector<std::vector<Int>> inv(n, std::vector<Int>(n, 0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (i != j) inv[j][i] = mo(1, t.p(i), t.p(j));
    return inv;
}

std::vector<long long> expand_pn_decomposition(const PrimeTuple& t, const OrientationSet& S,
                                               const std::vector<std::vector<Int>>& inv,
                                               const Config& cfg) {
    const std::size_t n = t.size();
    if (S.n() != n) throw invalid_input("orientation set size does not match tuple");
    const std::size_t N = folded_size(t, cfg);

    Folded acc(N, 0);
    for (std::size_t i = 0; i < n; ++i) {
        Folded term(N, 0);
        term[0] = 1;
        // (1 - x^N) / (1 - x^{N_i})
        std::size_t Ni = static_cast<std::size_t>(t.cofactor(i).get_ui());
        term = mul_geometric(term, Ni, static_cast<std::size_t>(t.p(i).get_ui()), 1, N);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            std::size_t Nj = static_cast<std::size_t>(t.cofactor(j).get_ui());
            std::size_t pj = static_cast<std::size_t>(t.p(j).get_ui());
            std::size_t c = static_cast<std::size_t>(inv[j][i].get_ui());
            if (S.contains(i, j)) {
                // (1 - x^{c N_j}) / (1 - x^{N_j}) = 1 + x^{N_j} + ... + x^{(c-1) N_j}
                term = mul_geometric(term, Nj, c, 1, N);
            } else {
                // (x^N - x^{c N_j}) / (1 - x^{N_j}) = -(x^{c N_j} + ... + x^{(p_j - 1) N_j})
                Folded shifted(N, 0);
                for (std::size_t e = 0; e < N; ++e)
                    if (term[e] != 0) shifted[(e + c * Nj) % N] = term[e];
                term = mul_geometric(shifted, Nj, pj - c, -1, N);
            }
        }
        for (std::size_t j1 = 0; j1 < n; ++j1) {
            if (j1 == i) continue;
            for (std::size_t j2 = j1 + 1; j2 < n; ++j2) {
                if (j2 == i) continue;
                term = mul_binomial(term, static_cast<std::size_t>(t.cofactor2(j1, j2).get_ui()), N);
            }
        }
        add_into(acc, term);
    }
    return acc;
}

bool verify_prop_pn(const PrimeTuple& t, const OrientationSet& S, const Config& cfg) {
    return expand_pn_decomposition(t, S, inverse_matrix(t), cfg) == folded_reference(t, cfg);
}

bool verify_prop_two(const PrimeTuple& t, std::size_t i, std::size_t j, const Config& cfg) {
    const std::size_t n = t.size();
    if (i == j || i >= n || j >= n) throw invalid_input("verify_prop_two: need two distinct dimensions");
    const std::size_t N = folded_size(t, cfg);

    auto stride_compose = [&](const PrimeTuple& sub, const Int& stride) {
        CoeffVector v = expand_pn(sub, false, cfg);
        Folded g(N, 0);
        std::size_t st = static_cast<std::size_t>(mpz_fdiv_ui(stride.get_mpz_t(), N));
        std::size_t pos = 0;
        for (std::size_t e = 0; e < v.coeffs.size(); ++e) {
            if (v.coeffs[e] != 0) g[pos] = checked_add(g[pos], v.coeffs[e]);
            pos += st;
            if (pos >= N) pos -= N;
        }
        return g;
    };

    std::size_t Ni = static_cast<std::size_t>(t.cofactor(i).get_ui());
    std::size_t Nj = static_cast<std::size_t>(t.cofactor(j).get_ui());
    std::size_t cij = static_cast<std::size_t>(mo(1, t.p(j), t.p(i)).get_ui());  // mo(p_j^-1, p_i)
    std::size_t cji = static_cast<std::size_t>(mo(1, t.p(i), t.p(j)).get_ui());  // mo(p_i^-1, p_j)
    std::size_t pj = static_cast<std::size_t>(t.p(j).get_ui());

    // (1 - x^{cij N_i})/(1 - x^{N_i}) * P_{N_i}(x^{p_i}) * prod_{k != i,j} (1 - x^{N_ik})
    Folded term1 = stride_compose(t.without(i), t.p(i));
    term1 = mul_geometric(term1, Ni, cij, 1, N);
    for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j) term1 = mul_binomial(term1, static_cast<std::size_t>(t.cofactor2(i, k).get_ui()), N);

    // x^{cij N_i} * (x^N - x^{cji N_j})/(1 - x^{N_j}) * P_{N_j}(x^{p_j}) * prod (1 - x^{N_jk})
    Folded term2 = stride_compose(t.without(j), t.p(j));
    {
        Folded shifted(N, 0);
        std::size_t off = (cij * Ni + cji * Nj) % N;
        for (std::size_t e = 0; e < N; ++e)
            if (term2[e] != 0) shifted[(e + off) % N] = term2[e];
        term2 = mul_geometric(shifted, Nj, pj - cji, -1, N);
    }
    for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j) term2 = mul_binomial(term2, static_cast<std::size_t>(t.cofactor2(j, k).get_ui()), N);

    add_into(term1, term2);
    return term1 == folded_reference(t, cfg);
}

} // namespace pn
