#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pn/arith.hpp"
#include "pn/construct.hpp"
#include "pn/engine.hpp"
#include "pn/poly.hpp"
#include "pn/recursion.hpp"

namespace py = pybind11;
using namespace pn;

namespace {

Int to_int(const py::handle& obj) { return Int(py::str(obj).cast<std::string>()); }

py::object to_pyint(const Int& v) {
    return py::module_::import("builtins").attr("int")(v.get_str());
}

std::vector<Int> to_ints(const py::sequence& seq) {
    std::vector<Int> out;
    out.reserve(seq.size());
    for (const auto& x : seq) out.push_back(to_int(x));
    return out;
}

PrimeTuple tuple_of(const py::sequence& primes) { return PrimeTuple(to_ints(primes)); }

py::object frac(const Rat& r) {
    return py::module_::import("fractions")
        .attr("Fraction")(to_pyint(r.get_num()), to_pyint(r.get_den()));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact coefficients, heights and extremal constructions for the polynomials P_N";

    py::register_exception<invalid_input>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<resource_error>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<unsupported_error>(m, "Unsupported", PyExc_RuntimeError);
    py::register_exception<construction_error>(m, "ConstructionError", PyExc_RuntimeError);

    m.def("mo", [](py::object num, py::object den, py::object mod) {
        return to_pyint(mo(to_int(num), to_int(den), to_int(mod)));
    }, py::arg("num"), py::arg("den"), py::arg("mod"),
       "least nonnegative k with k*den == num (mod m)");

    m.def("mo_plus", [](py::object num, py::object den, py::object mod) {
        return to_pyint(mo_plus(to_int(num), to_int(den), to_int(mod)));
    });

    m.def("crt", [](const std::vector<std::pair<py::object, py::object>>& pairs) {
        std::vector<std::pair<Int, Int>> conv;
        conv.reserve(pairs.size());
        for (const auto& [r, md] : pairs) conv.emplace_back(to_int(r), to_int(md));
        return to_pyint(crt(conv));
    }, "combine (residue, modulus) pairs with pairwise coprime moduli");

    m.def("is_probable_prime", [](py::object n) { return is_probable_prime(to_int(n)); });

    m.def("next_prime_in_ap", [](py::object a, py::object m, py::object lower) {
        return to_pyint(next_prime_in_ap(to_int(a), to_int(m), to_int(lower)));
    }, py::arg("a"), py::arg("m"), py::arg("lower"));

    m.def("degree", [](py::sequence primes) { return to_pyint(degree_pn(tuple_of(primes))); });

    m.def("expand", [](py::sequence primes, bool reduced) {
        CoeffVector v = expand_pn(tuple_of(primes), reduced);
        py::list out;
        for (long long c : v.coeffs) out.append(c);
        return out;
    }, py::arg("primes"), py::arg("reduced") = false,
       "dense exact coefficients of P_N by expansion");

    m.def("pq_coeff", [](py::object p, py::object q, py::object k) {
        return pq_coeff(to_int(p), to_int(q), to_int(k));
    });

    m.def("coeff", [](py::sequence primes, py::object k, const std::string& method) -> py::object {
        PrimeTuple t = tuple_of(primes);
        Int kk = to_int(k);
        if (method == "closed") return py::cast(coeff_at(t, kk));
        if (method == "oracle") return py::cast(expand_pn(t).at(kk));
        if (method == "recursive") return py::cast(make_recursive_provider(t)->coeff(kk));
        throw invalid_input("unknown method '" + method + "'");
    }, py::arg("primes"), py::arg("k"), py::arg("method") = "closed",
       "coefficient of x^k in P_N via the chosen algorithm");

    m.def("height", [](py::sequence primes, const std::string& method) {
        PrimeTuple t = tuple_of(primes);
        if (method == "dense") {
            auto [h, w] = height_dense(expand_pn(t));
            return py::make_tuple(h, to_pyint(Int(static_cast<unsigned long>(w))));
        }
        HeightScan s = RegionModel(t).scan_height();
        return py::make_tuple(s.height, to_pyint(s.witness));
    }, py::arg("primes"), py::arg("method") = "region",
       "(height, witness exponent) of P_N");

    m.def("residue_profile", [](py::sequence primes) {
        ResidueProfile prof = residue_profile(tuple_of(primes));
        py::list dims;
        for (const auto& d : prof.dims) {
            py::list bounds, labels;
            for (const Int& b : d.boundaries) bounds.append(to_pyint(b));
            for (const Int& b : d.by_subset) labels.append(to_pyint(b));
            py::dict dim;
            dim["boundaries"] = bounds;
            dim["by_subset"] = labels;
            dim["gap"] = to_pyint(d.gap);
            dim["all_distinct"] = d.all_distinct;
            dims.append(dim);
        }
        py::dict out;
        out["dims"] = dims;
        out["generic"] = prof.generic;
        out["deg_lt_n"] = prof.deg_lt_n;
        out["maclaurin_ok"] = prof.maclaurin_ok;
        return out;
    });

    m.def("zero_by_prop", [](py::sequence primes, py::object k, std::size_t i) {
        return zero_by_prop(tuple_of(primes), to_int(k), i);
    }, py::arg("primes"), py::arg("k"), py::arg("dim"));

    m.def("classify3", [](py::object p, py::object q, py::object r) {
        TripleClass c = classify_pqr(to_int(p), to_int(q), to_int(r));
        return py::make_tuple(c.case_id, py::make_tuple(c.perm[0], c.perm[1], c.perm[2]));
    }, "lemma case (1-4) and the role permutation of a prime triple");

    m.def("table3", [](py::sequence primes) {
        std::array<int, 64> t = table_pqr(tuple_of(primes));
        py::list out;
        for (int v : t) out.append(v);
        return out;
    }, "64 region coefficients of a generic triple, linear index x1*16 + x2*4 + x3");

    m.def("coeff_via_truncation", [](py::object p, py::sequence base, py::object k) {
        return coeff_via_truncation(to_int(p), tuple_of(base), to_int(k));
    }, py::arg("p"), py::arg("base"), py::arg("k"));

    m.def("z_value", [](py::sequence primes, std::size_t j, const std::vector<std::size_t>& T) {
        return frac(z_value(tuple_of(primes), j, T));
    });

    m.def("bounds", [](std::size_t n) {
        BoundsReport b = bounds_report(n);
        py::dict out;
        out["n"] = b.n;
        out["pointwise_upper"] = frac(b.pointwise_upper);
        out["central_binom_lower"] = to_pyint(b.central_binom_lower);
        out["maclaurin_threshold"] = frac(b.maclaurin_threshold);
        return out;
    });

    m.def("construct_height1", [](std::size_t n) { return construct_height1(n).to_json(); },
          "height-1 tuple certificate (json text)");

    m.def("amplify", [](py::sequence primes) {
        AmplifyResult ar = amplify(tuple_of(primes));
        return py::make_tuple(ar.cert.to_json(), to_pyint(ar.witness_k), ar.witness_coeff);
    }, "(certificate json, witness exponent, witness coefficient)");

    m.def("enlarge", [](py::sequence primes) {
        EnlargeResult er = enlarge(tuple_of(primes));
        py::list out;
        for (const Int& p : er.tuple.primes()) out.append(to_pyint(p));
        return py::make_tuple(out, frac(er.c), er.cert.to_json());
    });

    m.def("verify_certificate", [](const std::string& json_text) {
        VerifyReport rep = verify_certificate(Certificate::from_json(json_text));
        return py::make_tuple(rep.ok, rep.failures);
    });
}
