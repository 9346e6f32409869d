#include "pn/construct.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "pn/arith.hpp"
#include "pn/engine.hpp"
#include "pn/poly.hpp"
#include "pn/recursion.hpp"

namespace pn {

namespace {

using nlohmann::json;

Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Rat frac_part(const Rat& x) { return x - Rat(floor_rat(x)); }

std::string rat_str(const Rat& x) {
    Rat r(x);
    r.canonicalize();
    return r.get_str();
}

Condition make_condition(std::string name, std::string lhs, std::string rel, std::string rhs,
                         bool holds) {
    return Condition{std::move(name), std::move(lhs), std::move(rel), std::move(rhs), holds};
}

/// Subset labels of dimension j sorted by boundary value; comparable across
/// lifts because the labels are the T-masks themselves.
std::vector<std::size_t> dimension_order(const ResidueProfile& prof, std::size_t j) {
    const auto& vals = prof.dims[j].by_subset;
    std::vector<std::size_t> order(vals.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    return order;
}

std::string order_str(const std::vector<std::size_t>& order) {
    std::ostringstream os;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i) os << ",";
        os << order[i];
    }
    return os.str();
}

Int binom(unsigned long n, unsigned long k) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

long long to_ll(const Int& v, const char* what) {
    if (!v.fits_slong_p()) throw internal_error(std::string(what) + " exceeds a machine word");
    return v.get_si();
}

// --- shared condition generators -------------------------------------------------

std::vector<Condition> height1_conditions(const std::vector<Int>& ps) {
    std::vector<Condition> out;
    const std::size_t n = ps.size();
    for (std::size_t v = 1; v < n; ++v) {
        PrimeTuple prefix(std::vector<Int>(ps.begin(), ps.begin() + static_cast<long>(v)), false);
        ResidueProfile pre_prof = residue_profile(prefix);
        for (std::size_t u = 0; u < v; ++u) {
            Int lhs_a = mo(1, ps[v], ps[u]);
            const Int& rhs_a = pre_prof.dims[u].gap;
            out.push_back(make_condition(
                "a[u=" + std::to_string(u + 1) + ",v=" + std::to_string(v + 1) + "]",
                lhs_a.get_str(), "<", rhs_a.get_str(), lhs_a < rhs_a));

            std::vector<Int> head(ps.begin(), ps.begin() + static_cast<long>(u));
            head.push_back(ps[v]);
            PrimeTuple vt(std::move(head), false);
            Int rhs_b = residue_profile(vt).dims[u].gap;
            Int lhs_b = ps[v] - mo(1, ps[u], ps[v]);
            out.push_back(make_condition(
                "b[u=" + std::to_string(u + 1) + ",v=" + std::to_string(v + 1) + "]",
                lhs_b.get_str(), "<", rhs_b.get_str(), lhs_b < rhs_b));
        }
    }
    PrimeTuple t(ps, false);
    Rat s = t.inverse_sum();
    out.push_back(make_condition("c", rat_str(s), "<", "1", s < Rat(1)));
    return out;
}

std::vector<Condition> enlarge_conditions(const std::vector<Int>& input,
                                          const std::vector<Int>& output, const Rat& c) {
    std::vector<Condition> out;
    const std::size_t n = input.size();
    PrimeTuple t_in(input, false), t_out(output, false);
    ResidueProfile prof_in = residue_profile(t_in);
    ResidueProfile prof_out = residue_profile(t_out);

    Rat s = t_out.inverse_sum();
    out.push_back(make_condition("inverse-sum", rat_str(s), "<", "1", s < Rat(1)));
    out.push_back(make_condition("generic", prof_out.generic ? "true" : "false", "==", "true",
                                 prof_out.generic));
    Int scale_floor(static_cast<unsigned long>(n / 2 + 1));
    for (std::size_t j = 0; j < n; ++j) {
        out.push_back(make_condition("grow[" + std::to_string(j + 1) + "]", output[j].get_str(), ">",
                                     input[j].get_str(), output[j] > input[j]));
        auto before = dimension_order(prof_in, j);
        auto after = dimension_order(prof_out, j);
        out.push_back(make_condition("order[" + std::to_string(j + 1) + "]", order_str(after), "==",
                                     order_str(before), before == after));
        Rat cp = c * Rat(output[j]);
        out.push_back(make_condition("scale[" + std::to_string(j + 1) + "]", rat_str(cp), ">",
                                     scale_floor.get_str(), cp > Rat(scale_floor)));
        out.push_back(make_condition("gap[" + std::to_string(j + 1) + "]", rat_str(cp), "<",
                                     prof_out.dims[j].gap.get_str(),
                                     cp < Rat(prof_out.dims[j].gap)));
    }
    return out;
}

std::vector<Condition> amplify_conditions(const std::vector<Int>& input,
                                          const std::vector<Int>& output, const Rat& c) {
    // output = p_1' .. p_n' q
    std::vector<Condition> out;
    const std::size_t n = output.size() - 1;
    std::vector<Int> np(output.begin(), output.end() - 1);
    const Int& q = output.back();
    out = enlarge_conditions(input, np, c);

    PrimeTuple nt(np, false);
    out.push_back(make_condition("q-bound", q.get_str(), ">", nt.modulus().get_str(),
                                 q > nt.modulus()));
    for (std::size_t j = 0; j < n; ++j) {
        Int fl = floor_rat(c * Rat(np[j]));
        Int got = mo(1, q, np[j]);
        out.push_back(make_condition("q-residue[" + std::to_string(j + 1) + "]", got.get_str(), "==",
                                     fl.get_str(), got == fl));
    }
    PrimeTuple full(output, false);
    bool gen = residue_profile(full).generic;
    out.push_back(make_condition("generic-with-q", gen ? "true" : "false", "==", "true", gen));
    Rat s = full.inverse_sum();
    out.push_back(make_condition("inverse-sum-with-q", rat_str(s), "<", "1", s < Rat(1)));
    return out;
}

// --- certificate cache -------------------------------------------------------------

std::string cache_path(const Config& cfg, const std::string& kind, std::size_t n,
                       const std::string& extra) {
    std::ostringstream os;
    os << cfg.cache_dir << "/" << kind << "-n" << n << "-b" << cfg.ap_budget << "-s" << cfg.seed;
    if (!extra.empty()) os << "-" << extra;
    os << ".json";
    return os.str();
}

std::optional<Certificate> cache_load(const Config& cfg, const std::string& kind, std::size_t n,
                                      const std::string& extra) {
    if (cfg.cache_dir.empty()) return std::nullopt;
    std::ifstream in(cache_path(cfg, kind, n, extra));
    if (!in) return std::nullopt;
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        Certificate cert = Certificate::from_json(buf.str());
        if (verify_certificate(cert, cfg).ok) return cert;
    } catch (const std::exception&) {
        // fall through: stale or corrupt cache entries are recomputed
    }
    return std::nullopt;
}

void cache_store(const Config& cfg, const std::string& kind, std::size_t n,
                 const std::string& extra, const Certificate& cert) {
    if (cfg.cache_dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(cfg.cache_dir, ec);
    std::ofstream out(cache_path(cfg, kind, n, extra));
    if (out) out << cert.to_json();
}

} // namespace

// --- certificate plumbing ------------------------------------------------------------

bool Certificate::all_conditions_hold() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const Condition& c) { return c.holds; });
}

std::string Certificate::to_json() const {
    json j;
    j["kind"] = kind;
    auto dump_ints = [](const std::vector<Int>& v) {
        std::vector<std::string> out;
        out.reserve(v.size());
        for (const Int& x : v) out.push_back(x.get_str());
        return out;
    };
    j["primes"] = dump_ints(primes);
    j["input_primes"] = dump_ints(input_primes);
    j["conditions"] = json::array();
    for (const Condition& c : conditions)
        j["conditions"].push_back(
            {{"name", c.name}, {"lhs", c.lhs}, {"rel", c.rel}, {"rhs", c.rhs}, {"holds", c.holds}});
    if (c) {
        j["c"] = {{"num", c->get_num().get_str()}, {"den", c->get_den().get_str()}};
    }
    if (has_height) {
        j["height"] = {{"value", std::to_string(height)}, {"witness", height_witness.get_str()}};
    }
    if (has_witness_coeff) {
        j["witness"] = {{"k", witness_k.get_str()},
                        {"coeff", std::to_string(witness_coeff)},
                        {"required_factor", std::to_string(required_factor)}};
    }
    j["trace"] = json::array();
    for (const TraceStep& s : trace)
        j["trace"].push_back({{"action", s.action},
                              {"dim", s.dim},
                              {"from", s.from.get_str()},
                              {"to", s.to.get_str()},
                              {"modulus", s.modulus.get_str()},
                              {"tried", s.tried}});
    j["budget"] = ap_budget;
    j["seed"] = seed;
    return j.dump(2) + "\n";
}

Certificate Certificate::from_json(const std::string& text) {
    json j = json::parse(text);
    Certificate cert;
    cert.kind = j.at("kind").get<std::string>();
    auto load_ints = [](const json& arr) {
        std::vector<Int> out;
        for (const auto& s : arr) out.emplace_back(s.get<std::string>());
        return out;
    };
    cert.primes = load_ints(j.at("primes"));
    if (j.contains("input_primes")) cert.input_primes = load_ints(j.at("input_primes"));
    for (const auto& c : j.at("conditions"))
        cert.conditions.push_back(Condition{c.at("name").get<std::string>(),
                                            c.at("lhs").get<std::string>(),
                                            c.at("rel").get<std::string>(),
                                            c.at("rhs").get<std::string>(), c.at("holds").get<bool>()});
    if (j.contains("c"))
        cert.c = Rat(Int(j["c"].at("num").get<std::string>()),
                     Int(j["c"].at("den").get<std::string>()));
    if (j.contains("height")) {
        cert.has_height = true;
        cert.height = std::stoll(j["height"].at("value").get<std::string>());
        cert.height_witness = Int(j["height"].at("witness").get<std::string>());
    }
    if (j.contains("witness")) {
        cert.has_witness_coeff = true;
        cert.witness_k = Int(j["witness"].at("k").get<std::string>());
        cert.witness_coeff = std::stoll(j["witness"].at("coeff").get<std::string>());
        cert.required_factor = std::stoll(j["witness"].at("required_factor").get<std::string>());
    }
    if (j.contains("trace"))
        for (const auto& s : j["trace"])
            cert.trace.push_back(TraceStep{s.at("action").get<std::string>(), s.at("dim").get<int>(),
                                           Int(s.at("from").get<std::string>()),
                                           Int(s.at("to").get<std::string>()),
                                           Int(s.at("modulus").get<std::string>()),
                                           s.at("tried").get<std::uint64_t>()});
    cert.ap_budget = j.value("budget", std::uint64_t{0});
    cert.seed = j.value("seed", std::uint64_t{0});
    return cert;
}

// --- z ---------------------------------------------------------------------------------

Rat z_value(const PrimeTuple& t, std::size_t j, const std::vector<std::size_t>& T) {
    if (j >= t.size()) throw invalid_input("z_value: dimension out of range");
    Rat acc(0);
    for (std::size_t i : T) {
        if (i == j) throw invalid_input("z_value: T must not contain j");
        if (i >= t.size()) throw invalid_input("z_value: subset index out of range");
        acc += Rat(1) - Rat(mo(1, t.p(j), t.p(i))) / Rat(t.p(i));
    }
    acc.canonicalize();
    return frac_part(acc);
}

// --- enlarge ------------------------------------------------------------------------------

EnlargeResult enlarge(const PrimeTuple& t, const Config& cfg) {
    const std::size_t n = t.size();
    if (!(t.inverse_sum() < Rat(1)))
        throw invalid_input("enlarge: sum 1/p_i must be < 1 for " + t.str());
    ResidueProfile prof0 = residue_profile(t);
    if (!prof0.generic) throw invalid_input("enlarge: " + t.str() + " is not generic");

    std::vector<std::vector<std::size_t>> orig_order(n);
    for (std::size_t j = 0; j < n; ++j) orig_order[j] = dimension_order(prof0, j);

    Certificate cert;
    cert.kind = "enlarged";
    cert.input_primes = t.primes();
    cert.ap_budget = cfg.ap_budget;
    cert.seed = cfg.seed;

    std::vector<Int> ps = t.primes();
    auto product_without = [&](std::size_t j) {
        Int m = 1;
        for (std::size_t i = 0; i < n; ++i)
            if (i != j) m *= ps[i];
        return m;
    };

    // Phase 1: lift each prime inside its class mod the product of the others
    // until every gap in its dimension is at least 3.
    for (std::size_t j = 0; j < n; ++j) {
        Int step = product_without(j);
        Int cand = ps[j];
        Int from = ps[j];
        std::uint64_t tried = 0;
        for (;; cand += step) {
            if (++tried > cfg.ap_budget)
                throw resource_error("enlarge: gap lift for dimension " + std::to_string(j + 1) +
                                     " exhausted " + std::to_string(cfg.ap_budget) + " candidates");
            if (!is_probable_prime(cand, cfg.mr_error_exponent, cfg.seed)) continue;
            ps[j] = cand;
            ResidueProfile prof = residue_profile(PrimeTuple(ps, false));
            if (prof.dims[j].all_distinct && prof.dims[j].gap >= 3 &&
                dimension_order(prof, j) == orig_order[j])
                break;
        }
        cert.trace.push_back(TraceStep{"lift-gap", static_cast<int>(j), from, ps[j], step, tried});
    }

    // Phase 2: c below every 1/p_j'', then rescale every prime above
    // (floor(n/2)+1)/c, keeping orders and c p_j' < d(S_j).
    Int maxp = *std::max_element(ps.begin(), ps.end());
    Rat c(Int(1), maxp + 1);
    c.canonicalize();
    Int min_p = Int(static_cast<unsigned long>(n / 2 + 1)) * (maxp + 1) + 1;

    for (std::size_t j = 0; j < n; ++j) {
        Int step = product_without(j);
        Int from = ps[j];
        Int lower = std::max(min_p, Int(ps[j] + 1));
        std::uint64_t tried = 0;
        for (;;) {
            if (++tried > cfg.ap_budget)
                throw resource_error("enlarge: rescale for dimension " + std::to_string(j + 1) +
                                     " exhausted the AP budget");
            Int cand = next_prime_in_ap(from % step, step, lower, cfg);
            ps[j] = cand;
            ResidueProfile prof = residue_profile(PrimeTuple(ps, false));
            if (prof.dims[j].all_distinct && dimension_order(prof, j) == orig_order[j] &&
                c * Rat(cand) < Rat(prof.dims[j].gap))
                break;
            lower = cand + 1;
        }
        cert.trace.push_back(TraceStep{"lift-scale", static_cast<int>(j), from, ps[j], step, tried});
    }

    PrimeTuple out(ps, false);
    cert.primes = ps;
    cert.c = c;
    cert.conditions = enlarge_conditions(t.primes(), ps, c);
    if (!cert.all_conditions_hold())
        throw construction_error("enlarge: postcondition failed for " + out.str());
    return EnlargeResult{out, c, std::move(cert)};
}

// --- amplify -------------------------------------------------------------------------------

AmplifyResult amplify(const PrimeTuple& t, const Config& cfg) {
    const std::size_t n = t.size();
    if (auto cached = cache_load(cfg, "amplified", n + 1, "in" + t.modulus().get_str())) {
        AmplifyResult out{PrimeTuple(cached->primes, false), cached->witness_k,
                          cached->witness_coeff, *cached};
        return out;
    }
    EnlargeResult er = enlarge(t, cfg);
    const PrimeTuple& np = er.tuple;
    const Int& N = np.modulus();

    RegionModel model(np, cfg);
    HeightScan scan = model.scan_height(cfg);
    Region top_region = model.region_of(scan.witness);
    long long m_signed = model.coeff_of_region(top_region);

    // Corner + floor(c p_j') puts all 2^n shifted exponents inside the same
    // maximal region.
    std::vector<Int> fl(n), cof(n);
    for (std::size_t j = 0; j < n; ++j) {
        fl[j] = floor_rat(er.c * Rat(np.p(j)));
        cof[j] = np.cofactor(j);
    }
    std::vector<Int> h(n);
    for (std::size_t j = 0; j < n; ++j)
        h[j] = model.profile().dims[j].boundaries[static_cast<std::size_t>(top_region[j])] + fl[j];
    Int k0 = model.exponent_for(h);

    std::vector<Int> shifted(std::size_t{1} << n);
    std::uint64_t probes = 0;
    for (std::size_t mask = 0; mask < shifted.size(); ++mask) {
        Int e = k0;
        for (std::size_t j = 0; j < n; ++j)
            if (mask >> j & 1) e -= fl[j] * cof[j];
        e %= N;
        if (e < 0) e += N;
        shifted[mask] = e;
        if (++probes > cfg.region_probe_budget)
            throw resource_error("amplify: probe budget exhausted");
        if (model.lookup(e) != m_signed)
            throw construction_error("amplify: shifted exponent " + e.get_str() +
                                     " left the maximal region; k-bar search failed for " + np.str());
    }

    // q ≡ fl_j^{-1} (mod p_j') for all j, q > N', and N'q must stay generic.
    std::vector<std::pair<Int, Int>> residues;
    for (std::size_t j = 0; j < n; ++j) residues.emplace_back(mo(1, fl[j], np.p(j)), np.p(j));
    Int rq = crt(residues);
    Int lower = N + 1;
    Int q;
    std::uint64_t tried = 0;
    for (;;) {
        if (++tried > cfg.ap_budget) throw resource_error("amplify: q search exhausted the AP budget");
        q = next_prime_in_ap(rq, N, lower, cfg);
        if (residue_profile(np.with_appended(q)).generic) break;
        lower = q + 1;
    }

    // Sandwich: q * max_{|T|>s} e_T < k < q * min_{|T|<=s} e_T with k ≡ q k0 (mod N').
    std::size_t s = n / 2;
    Int lo(-1), hi(-1);
    for (std::size_t mask = 0; mask < shifted.size(); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) > s) {
            if (lo < 0 || shifted[mask] > lo) lo = shifted[mask];
        } else {
            if (hi < 0 || shifted[mask] < hi) hi = shifted[mask];
        }
    }
    if (!(lo < hi))
        throw construction_error("amplify: exponent separation failed (lo = " + lo.get_str() +
                                 ", hi = " + hi.get_str() + ")");
    Int kbar = q * k0 % N;
    Int base = q * lo + 1;
    Int k = base + mo(kbar - base, 1, N);
    if (!(k < q * hi))
        throw construction_error("amplify: no k in the sandwich window; window [" +
                                 Int(q * lo).get_str() + ", " + Int(q * hi).get_str() + "]");

    auto inner = make_closed_form_provider(np);
    long long witness_coeff = coeff_via_truncation(q, *inner, k);
    long long required = to_ll(binom(static_cast<unsigned long>(n - 1),
                                     static_cast<unsigned long>((n - 1) / 2)),
                               "central binomial");
    long long target = required * scan.height;
    long long mag = witness_coeff < 0 ? -witness_coeff : witness_coeff;
    if (mag < target)
        throw construction_error("amplify: witness coefficient " + std::to_string(witness_coeff) +
                                 " below required " + std::to_string(target));

    AmplifyResult out{np.with_appended(q), k, witness_coeff, Certificate{}};
    Certificate& cert = out.cert;
    cert = std::move(er.cert);
    cert.kind = "amplified";
    cert.primes = out.tuple.primes();
    cert.c = er.c;
    cert.conditions = amplify_conditions(t.primes(), cert.primes, er.c);
    cert.conditions.push_back(make_condition("amplified-coefficient", std::to_string(mag), ">=",
                                             std::to_string(target), mag >= target));
    cert.has_height = true;
    cert.height = scan.height;
    cert.height_witness = scan.witness;
    cert.has_witness_coeff = true;
    cert.witness_k = k;
    cert.witness_coeff = witness_coeff;
    cert.required_factor = required;
    cert.trace.push_back(TraceStep{"pick-q", -1, rq, q, N, tried});
    if (!cert.all_conditions_hold())
        throw construction_error("amplify: postcondition failed for " + out.tuple.str());
    cache_store(cfg, "amplified", n + 1, "in" + t.modulus().get_str(), cert);
    return out;
}

// --- height-1 construction ---------------------------------------------------------------

Certificate construct_height1(std::size_t n, const Config& cfg) {
    if (n < 2) throw invalid_input("construct_height1: n must be >= 2");
    if (auto cached = cache_load(cfg, "height1", n, "")) return *cached;

    Certificate cert;
    cert.kind = "height1";
    cert.ap_budget = cfg.ap_budget;
    cert.seed = cfg.seed;

    std::vector<Int> ps{2, 3};
    for (std::size_t m = 3; m <= n; ++m) {
        // Lift the current m-1 primes: orders kept, every dimension gap > 1,
        // and each prime beyond double its predecessor.
        for (std::size_t i = 0; i + 1 < m; ++i) {
            Int step = 1;
            for (std::size_t j = 0; j + 1 < m; ++j)
                if (j != i) step *= ps[j];
            ResidueProfile before = residue_profile(PrimeTuple(ps, false));
            bool check_order = before.dims[i].all_distinct;
            std::vector<std::size_t> order0 = dimension_order(before, i);

            Int from = ps[i];
            Int cand = ps[i];
            std::uint64_t tried = 0;
            for (;; cand += step) {
                if (++tried > cfg.ap_budget)
                    throw resource_error("construct_height1: lift of p_" + std::to_string(i + 1) +
                                         " exhausted the AP budget");
                if (i > 0 && cand <= 2 * ps[i - 1]) continue;
                if (!is_probable_prime(cand, cfg.mr_error_exponent, cfg.seed)) continue;
                ps[i] = cand;
                ResidueProfile prof = residue_profile(PrimeTuple(ps, false));
                if (!prof.dims[i].all_distinct || prof.dims[i].gap < 2) continue;
                if (check_order && dimension_order(prof, i) != order0) continue;
                break;
            }
            if (ps[i] != from)
                cert.trace.push_back(
                    TraceStep{"lift-gap", static_cast<int>(i), from, ps[i], step, tried});
        }

        // New top prime ≡ 1 mod everything, large enough for condition (c).
        PrimeTuple cur(ps, false);
        Rat s = cur.inverse_sum();
        if (!(s < Rat(1)))
            throw construction_error("construct_height1: prefix inverse sum reached 1");
        Int lower = floor_rat(Rat(1) / (Rat(1) - s)) + 1;
        lower = std::max(lower, Int(ps.back() + 1));
        Int top = next_prime_in_ap(1, cur.modulus(), lower, cfg);
        cert.trace.push_back(TraceStep{"pick-top", static_cast<int>(m - 1), lower, top,
                                       cur.modulus(), 0});
        ps.push_back(top);
    }

    cert.primes = ps;
    cert.conditions = height1_conditions(ps);
    if (!cert.all_conditions_hold()) {
        for (const Condition& c : cert.conditions)
            if (!c.holds)
                throw construction_error("construct_height1: condition " + c.name + " failed: " +
                                         c.lhs + " " + c.rel + " " + c.rhs);
    }

    // Measure the height when the region scan fits the budget (n <= 5).
    PrimeTuple out(ps, false);
    std::uint64_t regions = 1;
    bool scan_fits = true;
    {
        ResidueProfile prof = residue_profile(out);
        for (const auto& d : prof.dims) {
            regions *= d.boundaries.size();
            if (regions > cfg.region_scan_cap) {
                scan_fits = false;
                break;
            }
        }
    }
    if (scan_fits) {
        RegionModel model(out, cfg);
        HeightScan scan = model.scan_height(cfg);
        cert.has_height = true;
        cert.height = scan.height;
        cert.height_witness = scan.witness;
    }

    cache_store(cfg, "height1", n, "", cert);
    return cert;
}

// --- bounds -----------------------------------------------------------------------------

BoundsReport bounds_report(std::size_t n) {
    if (n < 2) throw invalid_input("bounds_report: n must be >= 2");
    BoundsReport rep;
    rep.n = n;

    // n * 2^(C(n-2,2) - 1), exact rational (the exponent is -1 for n <= 3)
    unsigned long choose2 = n >= 4 ? (n - 2) * (n - 3) / 2 : 0;
    if (choose2 == 0) {
        rep.pointwise_upper = Rat(Int(static_cast<unsigned long>(n)), Int(2));
    } else {
        Int pow2 = Int(1) << (choose2 - 1);
        rep.pointwise_upper = Rat(Int(static_cast<unsigned long>(n)) * pow2);
    }
    rep.pointwise_upper.canonicalize();

    rep.central_binom_lower = 1;
    for (unsigned long i = 1; i + 2 <= n; ++i)
        rep.central_binom_lower *= binom(i, i / 2);

    rep.maclaurin_threshold = Rat(Int(2 * static_cast<unsigned long>(n)),
                                  Int(static_cast<unsigned long>(n - 1)));
    rep.maclaurin_threshold.canonicalize();
    return rep;
}

// --- verification -------------------------------------------------------------------------

VerifyReport verify_certificate(const Certificate& cert, const Config& cfg) {
    VerifyReport rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.failures.push_back(msg);
    };

    try {
        PrimeTuple t(cert.primes, true);  // primality + distinctness

        std::vector<Condition> expect;
        if (cert.kind == "height1") {
            expect = height1_conditions(cert.primes);
        } else if (cert.kind == "enlarged") {
            if (!cert.c || cert.input_primes.empty())
                throw invalid_input("enlarged certificate lacks c or input primes");
            expect = enlarge_conditions(cert.input_primes, cert.primes, *cert.c);
        } else if (cert.kind == "amplified") {
            if (!cert.c || cert.input_primes.empty())
                throw invalid_input("amplified certificate lacks c or input primes");
            expect = amplify_conditions(cert.input_primes, cert.primes, *cert.c);
        } else {
            throw invalid_input("unknown certificate kind '" + cert.kind + "'");
        }

        for (const Condition& c : expect)
            if (!c.holds) fail("condition " + c.name + " does not hold: " + c.lhs + " " + c.rel +
                               " " + c.rhs);

        if (cert.kind == "amplified") {
            if (!cert.has_witness_coeff) {
                fail("amplified certificate lacks a witness coefficient");
            } else {
                std::vector<Int> np(cert.primes.begin(), cert.primes.end() - 1);
                PrimeTuple base(np, false);
                auto inner = make_closed_form_provider(base);
                long long got = coeff_via_truncation(cert.primes.back(), *inner, cert.witness_k);
                if (got != cert.witness_coeff)
                    fail("witness coefficient mismatch: recomputed " + std::to_string(got) +
                         ", recorded " + std::to_string(cert.witness_coeff));
                long long mag = got < 0 ? -got : got;
                RegionModel model(base, cfg);
                long long base_height = model.scan_height(cfg).height;
                if (mag < cert.required_factor * base_height)
                    fail("witness coefficient below the required amplification factor");
            }
        } else if (cert.has_height) {
            RegionModel model(t, cfg);
            HeightScan scan = model.scan_height(cfg);
            if (scan.height != cert.height)
                fail("height mismatch: scanned " + std::to_string(scan.height) + ", recorded " +
                     std::to_string(cert.height));
            else if (scan.witness != cert.height_witness)
                fail("height witness mismatch: scanned " + scan.witness.get_str() + ", recorded " +
                     cert.height_witness.get_str());
        }
    } catch (const std::exception& e) {
        fail(e.what());
    }
    return rep;
}

} // namespace pn
