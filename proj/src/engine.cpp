#include "pn/engine.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "pn/arith.hpp"
#include "pn/poly.hpp"

namespace pn {

namespace {

std::vector<std::size_t> others_of(std::size_t n, std::size_t i) {
    std::vector<std::size_t> o;
    o.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
        if (j != i) o.push_back(j);
    return o;
}

} // namespace

ResidueProfile residue_profile(const PrimeTuple& t) {
    const std::size_t n = t.size();
    ResidueProfile prof;
    prof.dims.resize(n);

    auto inv = inverse_matrix(t);
    for (std::size_t j = 0; j < n; ++j) {
        auto others = others_of(n, j);
        const Int& pj = t.p(j);
        DimensionProfile& dim = prof.dims[j];
        dim.by_subset.assign(std::size_t{1} << others.size(), 0);
        for (std::size_t mask = 1; mask < dim.by_subset.size(); ++mask) {
            std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
            Int v = dim.by_subset[mask & (mask - 1)] + inv[j][others[low]];
            if (v >= pj) v -= pj;
            dim.by_subset[mask] = v;
        }
        dim.boundaries = dim.by_subset;
        std::sort(dim.boundaries.begin(), dim.boundaries.end());
        dim.all_distinct =
            std::adjacent_find(dim.boundaries.begin(), dim.boundaries.end()) == dim.boundaries.end();
        dim.boundaries.erase(std::unique(dim.boundaries.begin(), dim.boundaries.end()),
                             dim.boundaries.end());
        dim.gap = pj;
        for (std::size_t x = 0; x < dim.boundaries.size(); ++x) {
            Int next = x + 1 < dim.boundaries.size() ? dim.boundaries[x + 1] : pj;
            Int g = next - dim.boundaries[x];
            if (g < dim.gap) dim.gap = g;
        }
    }

    prof.deg_lt_n = degree_pn(t) < t.modulus();
    prof.maclaurin_ok =
        n < 2 || t.inverse_sum() < Rat(2 * static_cast<long>(n), static_cast<long>(n) - 1);
    prof.generic = prof.deg_lt_n;
    for (const auto& dim : prof.dims) prof.generic = prof.generic && dim.all_distinct;
    return prof;
}

// --- pointwise closed form -----------------------------------------------------

CoeffEvaluator::CoeffEvaluator(PrimeTuple t, OrientationSet S) : t_(std::move(t)), s_(std::move(S)) {
    const std::size_t n = t_.size();
    if (s_.n() != n) throw invalid_input("coeff evaluator: orientation set size mismatch");

    inv_ = inverse_matrix(t_);
    inv_nj_.resize(n);
    shift_.resize(n);
    std::vector<std::vector<std::size_t>> others(n), posin(n, std::vector<std::size_t>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        inv_nj_[j] = mo(1, t_.cofactor(j), t_.p(j));
        others[j] = others_of(n, j);
        for (std::size_t u = 0; u < others[j].size(); ++u) posin[j][others[j][u]] = u;
        shift_[j].assign(std::size_t{1} << (n - 1), 0);
        for (std::size_t mask = 1; mask < shift_[j].size(); ++mask) {
            std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
            Int v = shift_[j][mask & (mask - 1)] + inv_[j][others[j][low]];
            if (v >= t_.p(j)) v -= t_.p(j);
            shift_[j][mask] = v;
        }
    }

    std::size_t np = (n - 1) * (n - 2) / 2;
    amasks_ = std::size_t{1} << np;
    tmask_.assign(n * amasks_ * n, 0);
    sign_.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && s_.contains(j, i)) sign_[i] = -sign_[i];
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t a = 0; a < others[i].size(); ++a)
            for (std::size_t b = a + 1; b < others[i].size(); ++b)
                pairs.emplace_back(others[i][a], others[i][b]);
        for (std::size_t amask = 0; amask < amasks_; ++amask) {
            std::uint8_t* row = &tmask_[(i * amasks_ + amask) * n];
            for (std::size_t pbit = 0; pbit < pairs.size(); ++pbit) {
                if (!(amask >> pbit & 1)) continue;
                auto [a, b] = pairs[pbit];
                row[a] |= std::uint8_t(1) << posin[a][b];
                row[b] |= std::uint8_t(1) << posin[b][a];
            }
        }
    }
}

long long CoeffEvaluator::operator()(const Int& k) const {
    const std::size_t n = t_.size();
    if (k < 0 || k >= t_.modulus())
        throw invalid_input("coeff_at: exponent " + k.get_str() + " outside [0, N)");

    std::vector<Int> h(n);
    for (std::size_t j = 0; j < n; ++j) h[j] = (k % t_.p(j)) * inv_nj_[j] % t_.p(j);

    long long total = 0;
    Int v;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t amask = 0; amask < amasks_; ++amask) {
            const std::uint8_t* row = &tmask_[(i * amasks_ + amask) * n];
            int prod = 1;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                v = h[j] - shift_[j][row[j]];
                if (v < 0) v += t_.p(j);
                bool ind = s_.contains(i, j) ? (v < inv_[j][i]) : (v >= inv_[j][i]);
                if (!ind) {
                    prod = 0;
                    break;
                }
            }
            if (prod) total += (__builtin_popcountll(amask) & 1) ? -sign_[i] : sign_[i];
        }
    }
    return total;
}

long long coeff_at(const PrimeTuple& t, const Int& k, const OrientationSet& S) {
    return CoeffEvaluator(t, S)(k);
}

long long coeff_at(const PrimeTuple& t, const Int& k) {
    return coeff_at(t, k, OrientationSet::standard(t.size()));
}

bool zero_by_prop(const PrimeTuple& t, const Int& k, std::size_t i) {
    if (i >= t.size()) throw invalid_input("zero_by_prop: dimension out of range");
    if (!(degree_pn(t) < t.modulus()))
        throw invalid_input("zero_by_prop: requires deg P_N < N");
    Int ni = t.cofactor(i);
    if (k <= 0 || k >= ni)
        throw invalid_input("zero_by_prop: exponent must satisfy 0 < k < N_i");
    Int hi = mo(k, ni, t.p(i));
    ResidueProfile prof = residue_profile(t);
    const auto& b = prof.dims[i].boundaries;
    return !std::binary_search(b.begin(), b.end(), hi);
}

// --- region model ----------------------------------------------------------------

RegionModel::RegionModel(PrimeTuple t, const Config& cfg)
    : RegionModel(std::move(t), OrientationSet::standard(0), cfg) {}

RegionModel::RegionModel(PrimeTuple t, OrientationSet S, const Config& cfg)
    : t_(std::move(t)), s_(S.n() ? std::move(S) : OrientationSet::standard(t_.size())) {
    (void)cfg;
    const std::size_t n = t_.size();
    if (s_.n() != n) throw invalid_input("RegionModel: orientation set size mismatch");
    prof_ = residue_profile(t_);
    if (!prof_.deg_lt_n)
        throw unsupported_error("RegionModel: deg P_N >= N for " + t_.str() +
                                "; the region model is undefined there, use coeff_at");

    auto inv = inverse_matrix(t_);
    crt_basis_.resize(n);
    inv_nj_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        // k ≡ h_j N_j (mod p_j) for all j is solved by k = sum h_j N_j mod N:
        // N_j vanishes modulo every other prime.
        crt_basis_[j] = t_.cofactor(j);
        inv_nj_[j] = mo(1, crt_basis_[j], t_.p(j));
    }

    maxm_ = 0;
    for (std::size_t j = 0; j < n; ++j) maxm_ = std::max(maxm_, prof_.dims[j].boundaries.size());
    subsets_ = std::size_t{1} << (n - 1);
    std::size_t np = (n - 1) * (n - 2) / 2;
    amasks_ = std::size_t{1} << np;

    ind_.assign(n * n * maxm_ * subsets_, 0);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& dim = prof_.dims[j];
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            const Int& c = inv[j][i];
            for (std::size_t x = 0; x < dim.boundaries.size(); ++x) {
                for (std::size_t tm = 0; tm < subsets_; ++tm) {
                    Int v = dim.boundaries[x] - dim.by_subset[tm];
                    if (v < 0) v += t_.p(j);
                    bool b = s_.contains(i, j) ? (v < c) : (v >= c);
                    ind_[((j * n + i) * maxm_ + x) * subsets_ + tm] = b;
                }
            }
        }
    }

    std::vector<std::vector<std::size_t>> others(n), posin(n, std::vector<std::size_t>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        others[j] = others_of(n, j);
        for (std::size_t u = 0; u < others[j].size(); ++u) posin[j][others[j][u]] = u;
    }
    tmask_.assign(n * amasks_ * n, 0);
    sign_.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && s_.contains(j, i)) sign_[i] = -sign_[i];
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t a = 0; a < others[i].size(); ++a)
            for (std::size_t b = a + 1; b < others[i].size(); ++b)
                pairs.emplace_back(others[i][a], others[i][b]);
        for (std::size_t amask = 0; amask < amasks_; ++amask) {
            std::uint8_t* row = &tmask_[(i * amasks_ + amask) * n];
            for (std::size_t pbit = 0; pbit < pairs.size(); ++pbit) {
                if (!(amask >> pbit & 1)) continue;
                auto [a, b] = pairs[pbit];
                row[a] |= std::uint8_t(1) << posin[a][b];
                row[b] |= std::uint8_t(1) << posin[b][a];
            }
        }
    }
}

std::uint64_t RegionModel::region_count() const {
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < t_.size(); ++j) total *= intervals(j);
    return total;
}

Region RegionModel::region_of(const Int& k) const {
    if (k < 0 || k >= t_.modulus())
        throw invalid_input("region_of: exponent outside [0, N)");
    const std::size_t n = t_.size();
    Region r(n);
    for (std::size_t j = 0; j < n; ++j) {
        Int h = (k % t_.p(j)) * inv_nj_[j] % t_.p(j);
        const auto& b = prof_.dims[j].boundaries;
        r[j] = static_cast<int>(std::upper_bound(b.begin(), b.end(), h) - b.begin()) - 1;
    }
    return r;
}

Int RegionModel::representative(const Region& r) const {
    const std::size_t n = t_.size();
    if (r.size() != n) throw invalid_input("representative: region arity mismatch");
    Int k = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (r[j] < 0 || static_cast<std::size_t>(r[j]) >= intervals(j))
            throw invalid_input("representative: interval index out of range");
        k += prof_.dims[j].boundaries[static_cast<std::size_t>(r[j])] * crt_basis_[j];
    }
    return k % t_.modulus();
}

Int RegionModel::exponent_for(const std::vector<Int>& h) const {
    const std::size_t n = t_.size();
    if (h.size() != n) throw invalid_input("exponent_for: residue vector arity mismatch");
    Int k = 0;
    for (std::size_t j = 0; j < n; ++j) k += h[j] * crt_basis_[j];
    return k % t_.modulus();
}

std::vector<RegionModel::RegionLabels> RegionModel::region_labels(const Region& r) const {
    const std::size_t n = t_.size();
    if (r.size() != n) throw invalid_input("region_labels: region arity mismatch");
    auto smallest_mask = [&](std::size_t j, const Int& value) {
        const auto& labels = prof_.dims[j].by_subset;
        for (std::size_t mask = 0; mask < labels.size(); ++mask)
            if (labels[mask] == value) return mask;
        throw internal_error("region_labels: boundary value without a subset label");
    };
    std::vector<RegionLabels> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t x = static_cast<std::size_t>(r[j]);
        out[j].lower = smallest_mask(j, prof_.dims[j].boundaries.at(x));
        if (x + 1 < intervals(j)) out[j].upper = smallest_mask(j, prof_.dims[j].boundaries[x + 1]);
    }
    return out;
}

long long RegionModel::coeff_of_region(const Region& r) const {
    const std::size_t n = t_.size();
    long long total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t amask = 0; amask < amasks_; ++amask) {
            const std::uint8_t* row = &tmask_[(i * amasks_ + amask) * n];
            int prod = 1;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                if (!ind_[((j * n + i) * maxm_ + static_cast<std::size_t>(r[j])) * subsets_ + row[j]]) {
                    prod = 0;
                    break;
                }
            }
            if (prod) total += (__builtin_popcountll(amask) & 1) ? -sign_[i] : sign_[i];
        }
    }
    return total;
}

std::uint64_t RegionModel::linear_index(const Region& r) const {
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < t_.size(); ++j) idx = idx * intervals(j) + static_cast<std::uint64_t>(r[j]);
    return idx;
}

long long RegionModel::lookup(const Int& k) const {
    Region r = region_of(k);
    std::uint64_t idx = linear_index(r);
    {
        std::lock_guard<std::mutex> lock(cache_mu_);
        auto it = cache_.find(idx);
        if (it != cache_.end()) return it->second;
    }
    long long c = coeff_of_region(r);
    std::lock_guard<std::mutex> lock(cache_mu_);
    cache_.emplace(idx, c);
    return c;
}

HeightScan RegionModel::scan_height(const Config& cfg) const {
    const std::size_t n = t_.size();
    const std::uint64_t total = region_count();
    if (total > cfg.region_scan_cap)
        throw resource_error("scan_height: " + std::to_string(total) +
                             " regions exceed the scan budget of " +
                             std::to_string(cfg.region_scan_cap));

    struct Best {
        long long height = -1;
        Int witness;
    };
    auto decode = [&](std::uint64_t idx) {
        Region r(n);
        for (std::size_t j = n; j-- > 0;) {
            r[j] = static_cast<int>(idx % intervals(j));
            idx /= intervals(j);
        }
        return r;
    };
    auto run = [&](std::uint64_t lo, std::uint64_t hi, Best& best) {
        Region r = decode(lo);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            long long c = coeff_of_region(r);
            long long mag = c < 0 ? -c : c;
            if (mag > best.height) {
                best.height = mag;
                best.witness = representative(r);
            } else if (mag == best.height) {
                Int w = representative(r);
                if (w < best.witness) best.witness = w;
            }
            // increment mixed-radix counter
            for (std::size_t j = n; j-- > 0;) {
                if (static_cast<std::size_t>(++r[j]) < intervals(j)) break;
                r[j] = 0;
            }
        }
    };

    unsigned threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));
    std::vector<Best> bests(threads);
    if (threads <= 1) {
        run(0, total, bests[0]);
    } else {
        std::vector<std::thread> pool;
        std::uint64_t per = (total + threads - 1) / threads;
        for (unsigned tno = 0; tno < threads; ++tno) {
            std::uint64_t lo = tno * per, hi = std::min<std::uint64_t>(total, lo + per);
            pool.emplace_back(run, lo, hi, std::ref(bests[tno]));
        }
        for (auto& th : pool) th.join();
    }
    HeightScan out;
    out.regions = total;
    out.height = -1;
    for (const Best& b : bests) {
        if (b.height > out.height || (b.height == out.height && b.witness < out.witness)) {
            out.height = b.height;
            out.witness = b.witness;
        }
    }
    return out;
}

std::string RegionModel::table_csv() const {
    const std::size_t n = t_.size();
    std::ostringstream os;
    for (std::size_t j = 1; j <= n; ++j) os << "x_" << j << ",";
    os << "coefficient,representative_k\n";
    Region r(n, 0);
    for (std::uint64_t idx = 0, total = region_count(); idx < total; ++idx) {
        for (std::size_t j = 0; j < n; ++j) os << r[j] << ",";
        os << coeff_of_region(r) << "," << representative(r).get_str() << "\n";
        for (std::size_t j = n; j-- > 0;) {
            if (static_cast<std::size_t>(++r[j]) < intervals(j)) break;
            r[j] = 0;
        }
    }
    return os.str();
}

// --- n = 3 classification and tables -----------------------------------------------

namespace {

struct TripleResidues {
    // role order (P, Q, R); r[j][i] = mo(role_i^-1, role_j), rsum[j] = mo_plus of the
    // two-inverse sum in dimension j.
    Int single[3][3];
    Int sum_plus[3];
};

TripleResidues residues_for(const Int& P, const Int& Q, const Int& R) {
    TripleResidues t;
    const Int* roles[3] = {&P, &Q, &R};
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
            if (i != j) t.single[j][i] = mo(1, *roles[i], *roles[j]);
    for (int j = 0; j < 3; ++j) {
        int a = (j + 1) % 3, b = (j + 2) % 3;
        t.sum_plus[j] = mo_plus(*roles[a] + *roles[b], *roles[a] * *roles[b], *roles[j]);
    }
    return t;
}

} // namespace

TripleClass classify_pqr(const Int& p, const Int& q, const Int& r) {
    const Int* in[3] = {&p, &q, &r};
    static constexpr std::size_t perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    TripleClass first;
    bool found = false;
    int case_seen = 0;
    bool multiple_cases = false;

    for (const auto& pm : perms) {
        const Int &P = *in[pm[0]], &Q = *in[pm[1]], &R = *in[pm[2]];
        TripleResidues t = residues_for(P, Q, R);
        // role indices: 0 = P, 1 = Q, 2 = R
        bool row1 = t.sum_plus[2] < t.single[2][0] && t.single[2][0] <= t.single[2][1];
        bool row2 = t.single[1][2] <= t.single[1][0] && t.single[1][0] < t.sum_plus[1];
        bool row3c1 = t.single[0][1] <= t.single[0][2] && t.single[0][2] < t.sum_plus[0];
        bool row3c2 = t.single[0][2] <= t.single[0][1] && t.single[0][1] < t.sum_plus[0];
        bool row1r = t.sum_plus[2] > t.single[2][0] && t.single[2][0] >= t.single[2][1];
        bool row2r = t.single[1][2] >= t.single[1][0] && t.single[1][0] > t.sum_plus[1];
        bool row3c3 = t.single[0][1] >= t.single[0][2] && t.single[0][2] > t.sum_plus[0];
        bool row3c4 = t.single[0][2] >= t.single[0][1] && t.single[0][1] > t.sum_plus[0];

        int cases[4] = {row1 && row2 && row3c1, row1 && row2 && row3c2,
                        row1r && row2r && row3c3, row1r && row2r && row3c4};
        for (int c = 0; c < 4; ++c) {
            if (!cases[c]) continue;
            if (!found) {
                found = true;
                case_seen = c + 1;
                first.case_id = c + 1;
                first.perm = {pm[0], pm[1], pm[2]};
            } else if (case_seen != c + 1) {
                multiple_cases = true;
            }
        }
    }
    if (!found)
        throw internal_error("classify_pqr: no case matched for (" + p.get_str() + ", " + q.get_str() +
                             ", " + r.get_str() + ")");
    if (multiple_cases)
        throw unsupported_error("classify_pqr: tied residues make several cases match for (" +
                                p.get_str() + ", " + q.get_str() + ", " + r.get_str() +
                                "); the triple is degenerate");
    return first;
}

namespace {

// Figure tables: fig[x][y][z] with x the p-direction interval, y the q-direction,
// z the r-direction.
constexpr int kFigCase1[4][4][4] = {
    {{1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}, {0, -1, 0, 0}},
    {{1, 0, 0, 1}, {0, 0, 0, 0}, {-1, -1, 0, 0}, {0, -1, 0, 1}},
    {{0, 0, -1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}},
    {{0, -1, -1, 0}, {0, 0, 0, 0}, {0, 0, 1, 1}, {0, -1, 0, 1}}};

constexpr int kFigCase2[4][4][4] = {
    {{1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}, {0, -1, 0, 0}},
    {{0, 0, -1, -1}, {0, 1, 0, -1}, {0, 1, 1, 0}, {0, 0, 0, 0}},
    {{0, 0, -1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}},
    {{0, -1, -1, 0}, {0, 0, 0, 0}, {0, 0, 1, 1}, {0, -1, 0, 1}}};

} // namespace

std::array<int, 64> table_pqr(const PrimeTuple& t, const Config& cfg) {
    if (t.size() != 3) throw invalid_input("table_pqr: needs a prime triple");
    ResidueProfile prof = residue_profile(t);
    if (!prof.generic)
        throw unsupported_error("table_pqr: " + t.str() +
                                " is not generic; the 64-region table degenerates, use coeff_at");
    TripleClass cls = classify_pqr(t.p(0), t.p(1), t.p(2));
    const auto& fig = (cls.case_id == 1 || cls.case_id == 3) ? kFigCase1 : kFigCase2;
    bool reversed = cls.case_id >= 3;

    RegionModel model(t, cfg);
    std::array<int, 64> out{};
    for (int x1 = 0; x1 < 4; ++x1)
        for (int x2 = 0; x2 < 4; ++x2)
            for (int x3 = 0; x3 < 4; ++x3) {
                int in[3] = {x1, x2, x3};
                int cx[3];
                for (int role = 0; role < 3; ++role) {
                    int v = in[cls.perm[static_cast<std::size_t>(role)]];
                    cx[role] = reversed ? 3 - v : v;
                }
                int value = fig[cx[0]][cx[1]][cx[2]];
                Region r{x1, x2, x3};
                if (value != model.coeff_of_region(r))
                    throw internal_error("table_pqr: figure transport disagrees with the region model at (" +
                                         std::to_string(x1) + "," + std::to_string(x2) + "," +
                                         std::to_string(x3) + ") for " + t.str());
                out[static_cast<std::size_t>(x1 * 16 + x2 * 4 + x3)] = value;
            }
    return out;
}

namespace {

// Contribution of the i-th decomposition term to a region; depends only on the
// coordinates other than i. Recomputed directly from residues; only used at
// n = 3 figure scale.
int term_contribution(const Region& r, std::size_t i, const PrimeTuple& t, const OrientationSet& S) {
    auto inv = inverse_matrix(t);
    ResidueProfile prof = residue_profile(t);
    const std::size_t n = t.size();
    auto others = others_of(n, i);
    int total = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < others.size(); ++a)
        for (std::size_t b = a + 1; b < others.size(); ++b) pairs.emplace_back(others[a], others[b]);
    int base = 1;
    for (std::size_t j = 0; j < n; ++j)
        if (j != i && S.contains(j, i)) base = -base;
    for (std::size_t amask = 0; amask < (std::size_t{1} << pairs.size()); ++amask) {
        int prod = 1;
        for (std::size_t j = 0; j < n && prod; ++j) {
            if (j == i) continue;
            Int shift = 0;
            for (std::size_t pbit = 0; pbit < pairs.size(); ++pbit) {
                if (!(amask >> pbit & 1)) continue;
                auto [a, b] = pairs[pbit];
                if (a == j) shift += inv[j][b];
                if (b == j) shift += inv[j][a];
            }
            Int v = prof.dims[j].boundaries[static_cast<std::size_t>(r[j])] - shift % t.p(j);
            while (v < 0) v += t.p(j);
            bool ind = S.contains(i, j) ? (v < inv[j][i]) : (v >= inv[j][i]);
            if (!ind) prod = 0;
        }
        if (prod) total += (__builtin_popcountll(amask) & 1) ? -base : base;
    }
    return total;
}

} // namespace

std::string table3_svg(const PrimeTuple& t, const Config& cfg) {
    if (t.size() != 3) throw invalid_input("table3_svg: needs a prime triple");
    std::array<int, 64> table = table_pqr(t, cfg);
    OrientationSet S = OrientationSet::standard(3);

    const int cell = 28, pad = 46;
    const int gridw = 4 * cell;

    std::ostringstream os;
    int width = pad * 5 + gridw * 4;
    int height = pad * 3 + gridw * 2 + 40;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"monospace\" font-size=\"12\">\n";
    os << "<text x=\"" << pad << "\" y=\"20\">P_" << t.str()
       << " region coefficients (rows: q index bottom-up, cols: p index; one grid per r layer)</text>\n";

    auto draw_grid = [&](int gx, int gy, const std::string& label, auto value_of) {
        int ox = pad + gx * (gridw + pad);
        int oy = 40 + gy * (gridw + pad);
        os << "<text x=\"" << ox << "\" y=\"" << oy - 6 << "\">" << label << "</text>\n";
        for (int u = 0; u <= 4; ++u) {
            os << "<line x1=\"" << ox << "\" y1=\"" << oy + u * cell << "\" x2=\"" << ox + gridw
               << "\" y2=\"" << oy + u * cell << "\" stroke=\"black\"/>\n";
            os << "<line x1=\"" << ox + u * cell << "\" y1=\"" << oy << "\" x2=\"" << ox + u * cell
               << "\" y2=\"" << oy + gridw << "\" stroke=\"black\"/>\n";
        }
        for (int cx = 0; cx < 4; ++cx)
            for (int cy = 0; cy < 4; ++cy) {
                std::string v = value_of(cx, cy);
                if (v.empty() || v == "0") continue;
                os << "<text x=\"" << ox + cx * cell + cell / 2 - 4 << "\" y=\""
                   << oy + (3 - cy) * cell + cell / 2 + 4 << "\">" << v << "</text>\n";
            }
    };

    for (int z = 0; z < 4; ++z)
        draw_grid(z, 0, "r-layer " + std::to_string(z), [&](int x, int y) {
            return std::to_string(table[static_cast<std::size_t>(x * 16 + y * 4 + z)]);
        });

    const char* panel_names[3] = {"panel q-r (term p)", "panel p-r (term q)", "panel p-q (term r)"};
    for (std::size_t i = 0; i < 3; ++i) {
        auto others = others_of(3, i);
        draw_grid(static_cast<int>(i), 1, panel_names[i], [&](int xa, int xb) -> std::string {
            Region r{0, 0, 0};
            r[others[0]] = xa;
            r[others[1]] = xb;
            int v = term_contribution(r, i, t, S);
            if (v > 0) return "+";
            if (v < 0) return "-";
            return "";
        });
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace pn
