#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "im3/runner.hpp"

namespace py = pybind11;
using namespace im3;
using nlohmann::json;

static py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null: return py::none();
        case json::value_t::boolean: return py::bool_(j.get<bool>());
        case json::value_t::number_integer: return py::int_(j.get<i64>());
        case json::value_t::number_unsigned: return py::int_(j.get<u64>());
        case json::value_t::number_float: return py::float_(j.get<double>());
        case json::value_t::string: return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list l;
            for (const auto& e : j) l.append(json_to_py(e));
            return l;
        }
        case json::value_t::object: {
            py::dict d;
            for (auto it = j.begin(); it != j.end(); ++it)
                d[py::str(it.key())] = json_to_py(it.value());
            return d;
        }
        default: return py::none();
    }
}

static py::list py_run_curve(const std::string& spec_json, u64 primes_up_to, bool shortcut,
                             int threads) {
    CurveSpec spec = parse_curve_spec(spec_json);
    RunOptions opt;
    opt.primes_up_to = primes_up_to;
    opt.shortcut = shortcut;
    opt.threads = threads;
    RunResult rr = run_curve(spec, opt);
    py::list out;
    for (const auto& r : rr.records) out.append(json_to_py(json::parse(record_to_jsonl(spec, r))));
    return out;
}

static py::tuple py_count_triple(const std::string& spec_json, u64 p) {
    CurveSpec spec = parse_curve_spec(spec_json);
    PointCounts pc = count_triple(spec.model, p);
    return py::make_tuple(pc.n1, pc.n2, pc.n3);
}

static py::tuple py_lpoly(u64 p, i64 n1, i64 n2, i64 n3) {
    LPolynomial L = lpoly_from_counts({p, n1, n2, n3});
    return py::make_tuple(L.a1, L.a2, L.a3);
}

static py::tuple py_shortcut(u64 p, i64 n1, i64 n2) {
    LPolynomial L = shortcut_inert(p, n1, n2);
    return py::make_tuple(L.a1, L.a2, L.a3);
}

static py::dict py_split_type(i64 d, u64 p) {
    ImagQuadField M(d);
    auto st = M.split_type(p);
    py::dict out;
    out["kind"] = st.kind == SplitKind::Split ? "split"
                  : st.kind == SplitKind::Inert ? "inert"
                                                : "ramified";
    if (st.pi) out["pi"] = py::make_tuple(st.pi->x, st.pi->y);
    return out;
}

static py::dict py_class_number(i64 D) {
    auto r = class_number(D);
    py::dict out;
    out["D"] = r.D;
    out["h"] = r.h;
    py::list forms;
    for (const auto& f : r.forms) forms.append(py::make_tuple(f.a, f.b, f.c));
    out["forms"] = forms;
    return out;
}

static py::dict py_signature(const std::string& spec_json) {
    CurveSpec spec = parse_curve_spec(spec_json);
    if (!spec.automorphism) throw Unsupported("spec has no automorphism field");
    SignatureReport r = act(*spec.automorphism, spec.model);
    py::dict out;
    py::list ev;
    for (const auto& e : r.eigenvalues) ev.append(e.str());
    out["eigenvalues"] = ev;
    out["unital"] = r.unital;
    out["generated_algebra"] = r.generated_algebra;
    if (r.signature) out["signature"] = py::make_tuple(r.signature->first, r.signature->second);
    else out["signature"] = py::none();
    return out;
}

static i64 py_ec_ap(i64 A, i64 B, u64 p) { return ec_count({A, B}, p).ap; }

static py::list py_match(const std::vector<std::pair<u64, i64>>& aps, i64 coeff_bound,
                         u64 prime_bound) {
    std::vector<EllipticAp> v;
    for (const auto& [p, a] : aps) v.push_back({p, a});
    py::list out;
    for (const auto& E : find_matching_curve(v, coeff_bound, prime_bound))
        out.append(py::make_tuple(E.A, E.B));
    return out;
}

PYBIND11_MODULE(_core, m) {
    m.doc() = "point counts, L-polynomials and imaginary-multiplication checks for genus-3 "
              "Jacobians";

    py::register_exception<Error>(m, "Im3Error");

    m.def("run_curve", &py_run_curve, py::arg("spec_json"), py::arg("primes_up_to"),
          py::arg("shortcut") = false, py::arg("threads") = 0,
          "verify every identity prime by prime; returns one record dict per good prime");
    m.def("count_triple", &py_count_triple, py::arg("spec_json"), py::arg("p"),
          "(N1, N2, N3) over F_p, F_p^2, F_p^3");
    m.def("lpoly_from_counts", &py_lpoly, py::arg("p"), py::arg("n1"), py::arg("n2"),
          py::arg("n3"), "(a1, a2, a3) via Newton identities");
    m.def("shortcut_inert", &py_shortcut, py::arg("p"), py::arg("n1"), py::arg("n2"));
    m.def("split_type", &py_split_type, py::arg("d"), py::arg("p"));
    m.def("class_number", &py_class_number, py::arg("D"));
    m.def("class_number_one_discs", &class_number_one_discs, py::arg("bound"));
    m.def("signature_report", &py_signature, py::arg("spec_json"));
    m.def("ec_ap", &py_ec_ap, py::arg("A"), py::arg("B"), py::arg("p"));
    m.def("find_matching_curve", &py_match, py::arg("aps"), py::arg("coeff_bound") = 200,
          py::arg("prime_bound") = 300);
}
