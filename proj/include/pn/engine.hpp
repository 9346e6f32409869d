#pragma once

#include <array>
#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pn/config.hpp"
#include "pn/types.hpp"

namespace pn {

/// Boundary data for one dimension j: the residues mo(sum_{i in T} p_i^-1, p_j)
/// labelled by subset T of the other indices (bitmask in ascending index
/// order), their distinct sorted values, and the smallest gap d(S_j) taken
/// over the value set together with p_j itself.
struct DimensionProfile {
    std::vector<Int> by_subset;
    std::vector<Int> boundaries;  // distinct, ascending; boundaries[0] == 0
    Int gap;
    bool all_distinct = false;
};

struct ResidueProfile {
    std::vector<DimensionProfile> dims;
    bool deg_lt_n = false;     // exact integer comparison deg P_N < N
    bool maclaurin_ok = false; // fast sufficient condition: sum 1/p_i < 2n/(n-1)
    bool generic = false;      // deg_lt_n and all dimensions fully distinct
};

ResidueProfile residue_profile(const PrimeTuple& t);

/// Per-dimension interval index of a coefficient-constant box. Intervals are
/// half-open [boundary, next boundary) with p_j closing the top one.
using Region = std::vector<int>;

/// Pointwise coefficient of x^k in the reduction of P_N mod (1 - x^N),
/// valid for 0 <= k < N and any orientation set; equals the coefficient of
/// P_N itself whenever deg P_N < N. Cost is O(n * 2^C(n-1,2) * n) residue
/// operations, independent of the size of N.
long long coeff_at(const PrimeTuple& t, const Int& k, const OrientationSet& S);
long long coeff_at(const PrimeTuple& t, const Int& k);

/// coeff_at with the per-tuple tables (inverse residues, subset shifts)
/// hoisted out of the evaluation loop; for sweeps over many exponents.
class CoeffEvaluator {
public:
    CoeffEvaluator(PrimeTuple t, OrientationSet S);
    long long operator()(const Int& k) const;
    const PrimeTuple& tuple() const { return t_; }

private:
    PrimeTuple t_;
    OrientationSet s_;
    std::vector<std::vector<Int>> inv_;    // inv_[j][i] = mo(p_i^-1, p_j)
    std::vector<std::vector<Int>> shift_;  // shift_[j][mask over others(j)]
    std::vector<Int> inv_nj_;              // N_j^-1 mod p_j
    std::vector<std::uint8_t> tmask_;      // [(i*amasks + amask)*n + j]
    std::vector<int> sign_;
    std::size_t amasks_ = 0;
};

/// True iff 0 < k < N_i, deg P_N < N and mo(k N_i^-1, p_i) is not a boundary
/// residue of dimension i; true forces the coefficient of x^k to vanish.
bool zero_by_prop(const PrimeTuple& t, const Int& k, std::size_t i);

struct HeightScan {
    long long height = 0;
    Int witness;              // smallest representative exponent attaining it
    std::uint64_t regions = 0;
};

/// The region model of a tuple with deg P_N < N. Coefficients are constant on
/// the boxes cut out by the distinct boundary residues of each dimension;
/// tuples that are non-generic only through coinciding boundaries degenerate
/// gracefully (coinciding values are merged, leaving fewer intervals).
class RegionModel {
public:
    explicit RegionModel(PrimeTuple t, const Config& cfg = Config::defaults());
    RegionModel(PrimeTuple t, OrientationSet S, const Config& cfg = Config::defaults());

    const PrimeTuple& tuple() const { return t_; }
    const ResidueProfile& profile() const { return prof_; }

    std::size_t intervals(std::size_t j) const { return prof_.dims[j].boundaries.size(); }
    std::uint64_t region_count() const;

    Region region_of(const Int& k) const;
    /// Lower-left corner exponent: crt of the lower boundary residues.
    Int representative(const Region& r) const;
    /// The unique exponent in [0, N) with the given per-dimension residues
    /// h_j = mo(k N_j^-1, p_j).
    Int exponent_for(const std::vector<Int>& h) const;

    /// The defining boundary subsets of a region: per dimension, the smallest
    /// T-mask labelling the lower boundary and the one labelling the upper
    /// boundary (nullopt when p_j itself closes the interval).
    struct RegionLabels {
        std::size_t lower = 0;
        std::optional<std::size_t> upper;
    };
    std::vector<RegionLabels> region_labels(const Region& r) const;
    long long coeff_of_region(const Region& r) const;
    /// Coefficient of x^k located through its region (cached representatives).
    long long lookup(const Int& k) const;

    /// Exhaustive scan over all regions; witness merging is deterministic
    /// (largest |coefficient|, then smallest representative exponent)
    /// regardless of thread count.
    HeightScan scan_height(const Config& cfg = Config::defaults()) const;

    /// CSV lines "x_1,..,x_n,coefficient,representative_k" in lexicographic
    /// region order.
    std::string table_csv() const;

private:
    std::uint64_t linear_index(const Region& r) const;

    PrimeTuple t_;
    OrientationSet s_;
    ResidueProfile prof_;
    std::vector<Int> crt_basis_;   // k = sum h_j * basis_j mod N
    std::vector<Int> inv_nj_;      // N_j^-1 mod p_j
    // indicator tables: ind_[((j*n + i)*maxm + x)*subsets + T]
    std::vector<unsigned char> ind_;
    std::vector<std::uint8_t> tmask_;  // [i][Amask][j] -> subset mask for dim j
    std::vector<int> sign_;            // (-1)^{#incoming(i)}
    std::size_t maxm_ = 0, subsets_ = 0, amasks_ = 0;
    mutable std::mutex cache_mu_;
    mutable std::unordered_map<std::uint64_t, long long> cache_;
};

/// Lemma classification of a prime triple: the case (1-4) and the permutation
/// of the inputs under which the displayed inequality chain holds; perm[t] is
/// the input index playing display role t (roles p, q, r). Ties that make two
/// different cases match are refused as degenerate.
struct TripleClass {
    int case_id = 0;
    std::array<std::size_t, 3> perm{0, 1, 2};
};

TripleClass classify_pqr(const Int& p, const Int& q, const Int& r);

/// The 64-entry coefficient table of a generic triple, keyed by region index
/// in *input* dimension order (linear index x1*16 + x2*4 + x3). Entries are
/// the hard-coded case-1/case-2 figure tables transported through the
/// canonical permutation, with every axis reversed for cases 3/4; each entry
/// is checked against the region model before returning.
std::array<int, 64> table_pqr(const PrimeTuple& t, const Config& cfg = Config::defaults());

/// Three-panel + four-layer SVG rendering of the 64-region table.
std::string table3_svg(const PrimeTuple& t, const Config& cfg = Config::defaults());

} // namespace pn
