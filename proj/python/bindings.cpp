#include "tqk/cli.hpp"
#include "tqk/errors.hpp"
#include "tqk/serialize.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace tqk;

namespace {

// Structured results cross the boundary as JSON text; the package decodes them.
std::string dump(const json& j) { return j.dump(); }

std::map<i64, std::string> poly_map(const LaurentPoly& p) {
    std::map<i64, std::string> out;
    for (const auto& [e, c] : p.coeffs()) out[e] = c.get_str();
    return out;
}

std::string decay_json(const DecayReport& r) {
    json j = report_summary(r);
    json ks = json::array(), res = json::array();
    for (i64 k : r.levels) ks.push_back(k);
    for (double x : r.residual) res.push_back(x);
    j["levels"] = ks;
    j["residual"] = res;
    return dump(j);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Knot states of torus knots on the quantum torus";
    py::register_exception<tqk::Error>(m, "TqkError", PyExc_ValueError);

    m.attr("version") = kVersion;

    m.def("jones", [](i64 a, i64 b, i64 ell) { return poly_map(jones(make_knot(a, b), ell)); },
          py::arg("a"), py::arg("b"), py::arg("ell"));
    m.def("alexander", [](i64 a, i64 b) { return poly_map(alexander(make_knot(a, b))); }, py::arg("a"), py::arg("b"));
    m.def("jones_recurrence_is_zero",
          [](i64 a, i64 b, i64 ell) { return jones_recurrence_residual(make_knot(a, b), ell).is_zero(); });
    m.def("jones_eval", [](i64 a, i64 b, i64 ell, i64 k) { return jones_eval_cd(make_knot(a, b), ell, k); },
          py::arg("a"), py::arg("b"), py::arg("ell"), py::arg("k"));

    m.def("state_xi", [](i64 a, i64 b, i64 k) { return build_state(make_knot(a, b), k).c; },
          "Z_k on the xi basis of H_k", py::arg("a"), py::arg("b"), py::arg("k"));
    m.def("state_psi", [](i64 a, i64 b, i64 k) {
        std::vector<cd> out;
        for (const auto& z : compute_state<double>(make_knot(a, b), k).psi) out.push_back(z.to_cd());
        return out;
    }, "Z_k on the Psi basis of H_{D,k}", py::arg("a"), py::arg("b"), py::arg("k"));
    m.def("eval_state",
          [](i64 a, i64 b, i64 k, double p, double q) { return eval_state(make_knot(a, b), k, p, q); },
          py::arg("a"), py::arg("b"), py::arg("k"), py::arg("p"), py::arg("q"));
    m.def("residual_inhomogeneous", [](i64 a, i64 b, i64 k) { return residual_inhomogeneous(make_knot(a, b), k); });

    m.def("gammas_json", [](i64 a, i64 b, i64 k, unsigned digits) {
        StateOptions opt;
        opt.digits = digits;
        return dump(gamma_json(extract_gammas(make_knot(a, b), k, opt)));
    }, py::arg("a"), py::arg("b"), py::arg("k"), py::arg("digits") = 16);
    m.def("charvar_json", [](i64 a, i64 b) { return dump(charvar_json(make_knot(a, b))); });
    m.def("gamma_topological", [](i64 a, i64 b, i64 ell, i64 k) {
        return gamma_topological(make_knot(a, b), ell, k);
    });

    m.def("check_abelian_json", [](i64 a, i64 b, double q, const std::vector<i64>& levels) {
        return decay_json(check_abelian(make_knot(a, b), q, levels));
    });
    m.def("check_irreducible_json", [](i64 a, i64 b, i64 ell, double t, const std::vector<i64>& levels) {
        return decay_json(check_irreducible(make_knot(a, b), ell, t, levels));
    });
    m.def("probe_microsupport_json", [](i64 a, i64 b, double p, double q, const std::vector<i64>& levels, bool control) {
        ProbeOptions po;
        po.control = control;
        return decay_json(probe_microsupport(make_knot(a, b), p, q, levels, po));
    }, py::arg("a"), py::arg("b"), py::arg("p"), py::arg("q"), py::arg("levels"), py::arg("control") = false);

    m.def("run_cli", [](std::vector<std::string> args) {
        args.insert(args.begin(), "tqk");
        std::vector<const char*> argv;
        for (const auto& s : args) argv.push_back(s.c_str());
        std::ostringstream out, err;
        const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
