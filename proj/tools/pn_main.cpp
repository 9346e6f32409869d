#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pn/arith.hpp"
#include "pn/construct.hpp"
#include "pn/engine.hpp"
#include "pn/poly.hpp"
#include "pn/recursion.hpp"

namespace {

using namespace pn;

std::vector<Int> parse_ints(const std::string& list) {
    std::vector<Int> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.emplace_back(item);
    }
    if (out.empty()) throw invalid_input("empty prime list");
    return out;
}

PrimeTuple parse_tuple(const std::string& list) { return PrimeTuple(parse_ints(list)); }

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw invalid_input("cannot open output file " + path);
    out << content;
}

struct Cli {
    Config cfg;
    std::string primes;
    std::string k_str;
    std::string method = "closed";
    std::string format = "csv";
    std::string out_path;
    std::string cert_path;
    std::size_t n = 0;
    bool reduced = false;
    bool identities = false;
    int reps = 3;
};

long long eval_method(const Cli& cli, const PrimeTuple& t, const Int& k, const std::string& method) {
    if (method == "oracle") return expand_pn(t, false, cli.cfg).at(k);
    if (method == "recursive") return make_recursive_provider(t)->coeff(k);
    if (method == "closed") {
        if (k < 0 || k >= t.modulus()) {
            if (!(degree_pn(t) < t.modulus()))
                throw invalid_input("closed method needs 0 <= k < N when deg P_N >= N");
            return 0;
        }
        return coeff_at(t, k);
    }
    throw invalid_input("unknown method '" + method + "'");
}

int run_coeff(const Cli& cli) {
    PrimeTuple t = parse_tuple(cli.primes);
    Int k(cli.k_str);
    if (!(degree_pn(t) < t.modulus()) && cli.method == "closed")
        std::cerr << "note: deg P_N >= N; reporting the coefficient of the reduction mod 1 - x^N\n";
    std::cout << eval_method(cli, t, k, cli.method) << "\n";
    return 0;
}

int run_poly(const Cli& cli) {
    PrimeTuple t = parse_tuple(cli.primes);
    CoeffVector v = expand_pn(t, cli.reduced, cli.cfg);
    write_output(cli.out_path, cli.format == "json" ? v.to_json() + "\n" : v.to_csv());
    return 0;
}

int run_height(const Cli& cli) {
    PrimeTuple t = parse_tuple(cli.primes);
    if (cli.method == "dense" || cli.method == "oracle") {
        auto [h, w] = height_dense(expand_pn(t, false, cli.cfg));
        std::cout << "height=" << h << " witness=" << w << "\n";
    } else if (cli.method == "region" || cli.method == "closed") {
        RegionModel model(t, cli.cfg);
        HeightScan s = model.scan_height(cli.cfg);
        std::cout << "height=" << s.height << " witness=" << s.witness.get_str() << "\n";
    } else {
        throw invalid_input("height method must be dense or region");
    }
    return 0;
}

int run_classify(const Cli& cli) {
    std::vector<Int> ps = parse_ints(cli.primes);
    if (ps.size() != 3) throw invalid_input("classify3 needs exactly three primes");
    PrimeTuple t(ps);  // validates primality
    TripleClass c = classify_pqr(t.p(0), t.p(1), t.p(2));
    std::cout << "case=" << c.case_id << " order=" << t.p(c.perm[0]).get_str() << ","
              << t.p(c.perm[1]).get_str() << "," << t.p(c.perm[2]).get_str() << "\n";
    return 0;
}

int run_table3(const Cli& cli) {
    PrimeTuple t = parse_tuple(cli.primes);
    table_pqr(t, cli.cfg);  // classification + figure transport, verified entry by entry
    if (cli.format == "svg") {
        write_output(cli.out_path, table3_svg(t, cli.cfg));
    } else {
        RegionModel model(t, cli.cfg);
        write_output(cli.out_path, model.table_csv());
    }
    return 0;
}

int run_construct_height1(const Cli& cli) {
    Certificate cert = construct_height1(cli.n, cli.cfg);
    write_output(cli.out_path, cert.to_json());
    return 0;
}

int run_construct_amplify(const Cli& cli) {
    PrimeTuple t = parse_tuple(cli.primes);
    AmplifyResult ar = amplify(t, cli.cfg);
    write_output(cli.out_path, ar.cert.to_json());
    return 0;
}

int run_bounds(const Cli& cli) {
    BoundsReport b = bounds_report(cli.n);
    std::cout << "n=" << b.n << " upper=" << to_string(b.pointwise_upper)
              << " lower=" << b.central_binom_lower.get_str()
              << " maclaurin=" << to_string(b.maclaurin_threshold) << "\n";
    return 0;
}

int run_verify(const Cli& cli) {
    if (cli.identities) {
        PrimeTuple t = parse_tuple(cli.primes);
        const std::size_t nn = t.size();
        bool ok = true;
        std::uint64_t smax = OrientationSet::mask_count(nn);
        if (nn <= 3) {
            for (std::uint64_t mask = 0; mask < smax; ++mask)
                ok = ok && verify_prop_pn(t, OrientationSet::from_mask(nn, mask), cli.cfg);
        } else {
            std::uint64_t state = cli.cfg.seed * 2654435761u + 1;
            for (int rep = 0; rep < 8; ++rep) {
                state = state * 6364136223846793005ULL + 1442695040888963407ULL;
                ok = ok && verify_prop_pn(t, OrientationSet::from_mask(nn, state % smax), cli.cfg);
            }
        }
        for (std::size_t i = 0; i < nn && ok; ++i)
            for (std::size_t j = 0; j < nn && ok; ++j)
                if (i != j) ok = ok && verify_prop_two(t, i, j, cli.cfg);
        for (std::size_t i = 0; i < nn && ok; ++i)
            for (std::size_t j = i + 1; j < nn && ok; ++j)
                ok = ok && (t.p(i) * mo(1, t.p(i), t.p(j)) + t.p(j) * mo(1, t.p(j), t.p(i)) ==
                            t.p(i) * t.p(j) + 1);
        std::cout << (ok ? "identities: ok" : "identities: FAILED") << "\n";
        return ok ? 0 : 1;
    }
    if (cli.cert_path.empty()) throw invalid_input("verify needs a certificate file or --identities");
    std::ifstream in(cli.cert_path);
    if (!in) throw invalid_input("cannot read certificate " + cli.cert_path);
    std::stringstream buf;
    buf << in.rdbuf();
    Certificate cert = Certificate::from_json(buf.str());
    VerifyReport rep = verify_certificate(cert, cli.cfg);
    if (rep.ok) {
        std::cout << "certificate: ok\n";
        return 0;
    }
    for (const std::string& f : rep.failures) std::cout << "failure: " << f << "\n";
    return 1;
}

int run_bench(const Cli& cli) {
    PrimeTuple t = parse_tuple(cli.primes);
    Int k = cli.k_str.empty() ? Int(degree_pn(t) / 2) : Int(cli.k_str);
    struct Row {
        const char* name;
        long long value;
        double usec;
    };
    std::vector<Row> rows;
    for (const char* method : {"closed", "recursive", "oracle"}) {
        long long value = 0;
        auto start = std::chrono::steady_clock::now();
        for (int rep = 0; rep < cli.reps; ++rep) value = eval_method(cli, t, k, method);
        auto stop = std::chrono::steady_clock::now();
        double us = std::chrono::duration<double, std::micro>(stop - start).count() / cli.reps;
        rows.push_back({method, value, us});
    }
    bool agree = rows[0].value == rows[1].value && rows[1].value == rows[2].value;
    std::cout << "method,coefficient,microseconds\n";
    for (const Row& r : rows)
        std::cout << r.name << "," << r.value << "," << static_cast<long long>(r.usec) << "\n";
    if (!agree) {
        std::cout << "MISMATCH between methods\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact coefficients, heights and extremal constructions for the polynomials P_N"};

    Cli cli;
    std::string config_path;
    app.add_option("--config", config_path, "key=value configuration file")->envname("PN_CONFIG");
    auto* opt_threads =
        app.add_option("--threads", cli.cfg.threads, "region scan parallelism (0 = hardware)")
            ->envname("PN_THREADS");
    auto* opt_seed = app.add_option("--seed", cli.cfg.seed, "seed for randomized witness schedules")
                         ->envname("PN_SEED");
    auto* opt_budget =
        app.add_option("--budget", cli.cfg.ap_budget, "max candidates per AP prime search")
            ->envname("PN_BUDGET");
    auto* opt_cap = app.add_option("--cap", cli.cfg.expansion_cap, "dense expansion coefficient cap")
                        ->envname("PN_CAP");
    auto* opt_cache = app.add_option("--cache-dir", cli.cfg.cache_dir, "certificate cache directory")
                          ->envname("PN_CACHE_DIR");

    app.fallthrough();

    auto* coeff = app.add_subcommand("coeff", "coefficient of x^k in P_N");
    coeff->fallthrough();
    coeff->add_option("--primes", cli.primes, "comma separated primes")->required();
    coeff->add_option("--k", cli.k_str, "exponent")->required();
    coeff->add_option("--method", cli.method, "closed | recursive | oracle");

    auto* poly = app.add_subcommand("poly", "dense expansion of P_N");
    poly->fallthrough();
    poly->add_option("--primes", cli.primes)->required();
    poly->add_flag("--reduced", cli.reduced, "reduce mod 1 - x^N");
    poly->add_option("--format", cli.format, "csv | json");
    poly->add_option("--out", cli.out_path, "output file (default stdout)");

    auto* height = app.add_subcommand("height", "height of P_N with witness exponent");
    height->fallthrough();
    height->add_option("--primes", cli.primes)->required();
    height->add_option("--method", cli.method, "dense | region")->required();

    auto* classify = app.add_subcommand("classify3", "case of a prime triple");
    classify->fallthrough();
    classify->add_option("--primes", cli.primes)->required();

    auto* table3 = app.add_subcommand("table3", "64-region coefficient table of a generic triple");
    table3->fallthrough();
    table3->add_option("--primes", cli.primes)->required();
    table3->add_option("--format", cli.format, "csv | svg");
    table3->add_option("--out", cli.out_path, "output file (default stdout)");

    auto* construct = app.add_subcommand("construct", "extremal tuple constructions");
    construct->fallthrough();
    auto* height1 = construct->add_subcommand("height1", "height-1 tuple with n primes");
    height1->fallthrough();
    height1->add_option("--n", cli.n, "number of primes")->required();
    height1->add_option("--out", cli.out_path, "certificate file (default stdout)");
    auto* amplify_cmd = construct->add_subcommand("amplify", "central-binomial height amplification");
    amplify_cmd->fallthrough();
    amplify_cmd->add_option("--primes", cli.primes, "generic tuple with sum 1/p_i < 1")->required();
    amplify_cmd->add_option("--out", cli.out_path, "certificate file (default stdout)");
    construct->require_subcommand(1);

    auto* bounds = app.add_subcommand("bounds", "pointwise upper and central-binomial lower bounds");
    bounds->fallthrough();
    bounds->add_option("--n", cli.n)->required();

    auto* verify = app.add_subcommand("verify", "re-verify a certificate or the identity suite");
    verify->fallthrough();
    verify->add_option("certificate", cli.cert_path, "certificate json file");
    verify->add_flag("--identities", cli.identities, "run the polynomial identity suite");
    verify->add_option("--primes", cli.primes, "tuple for --identities");

    auto* bench = app.add_subcommand("bench", "timing table for the three coefficient methods");
    bench->fallthrough();
    bench->add_option("--primes", cli.primes)->required();
    bench->add_option("--k", cli.k_str, "exponent (default deg/2)");
    bench->add_option("--reps", cli.reps, "repetitions per method");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);

        // precedence: flags > PN_* environment > config file. Flags and env
        // both count as "set" in CLI11, so the file only fills the rest.
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw invalid_input("cannot read config file " + config_path);
            std::string line;
            while (std::getline(in, line)) {
                auto eq = line.find('=');
                if (eq == std::string::npos || line.empty() || line[0] == '#') continue;
                std::string key = line.substr(0, eq), value = line.substr(eq + 1);
                if (key == "threads" && !opt_threads->count())
                    cli.cfg.threads = static_cast<unsigned>(std::stoul(value));
                else if (key == "seed" && !opt_seed->count())
                    cli.cfg.seed = std::stoull(value);
                else if (key == "budget" && !opt_budget->count())
                    cli.cfg.ap_budget = std::stoull(value);
                else if (key == "cap" && !opt_cap->count())
                    cli.cfg.expansion_cap = std::stoul(value);
                else if (key == "cache-dir" && !opt_cache->count())
                    cli.cfg.cache_dir = value;
            }
        }

        if (coeff->parsed()) return run_coeff(cli);
        if (poly->parsed()) return run_poly(cli);
        if (height->parsed()) return run_height(cli);
        if (classify->parsed()) return run_classify(cli);
        if (table3->parsed()) return run_table3(cli);
        if (construct->parsed()) {
            if (height1->parsed()) return run_construct_height1(cli);
            return run_construct_amplify(cli);
        }
        if (bounds->parsed()) return run_bounds(cli);
        if (verify->parsed()) return run_verify(cli);
        if (bench->parsed()) return run_bench(cli);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {  // covers invalid_input and bad integer literals
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const unsupported_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        std::cerr << "resource: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << "\n";
        return 1;
    }
}
