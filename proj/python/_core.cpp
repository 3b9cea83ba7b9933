#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qbound/bounds.hpp"
#include "qbound/counting.hpp"
#include "qbound/energy.hpp"
#include "qbound/oracle.hpp"
#include "qbound/potential.hpp"
#include "qbound/regge.hpp"
#include "qbound/transform.hpp"
#include "qbound/verify.hpp"

namespace py = pybind11;
using namespace qbound;

namespace {

py::dict count_to_dict(const CountResult& r) {
    py::dict d;
    d["classifier"] = r.cls == Finiteness::Finite     ? "FINITE"
                      : r.cls == Finiteness::Infinite ? "INFINITE"
                                                      : "MARGINAL";
    if (r.cls == Finiteness::Finite) d["count"] = r.count;
    d["lower"] = r.lower;
    d["upper"] = r.upper;
    d["evidence"] = r.evidence;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "bound-state counting and closed-form bounds for 1D/2D "
                "radial Schrodinger operators";

    py::class_<Potential>(mod, "Potential")
        .def("__call__", &Potential::operator())
        .def("eval_xy", &Potential::eval_xy)
        .def("breakpoints", &Potential::breakpoints)
        .def("support_end", &Potential::support_end)
        .def("compact_support", &Potential::compact_support)
        .def("to_json", [](const Potential& v) { return potential_to_json(v); })
        .def_static("from_json",
                    [](const std::string& s) { return potential_from_json(s); });

    mod.def(
        "catalog",
        [](const std::string& name, const std::map<std::string, double>& params) {
            return make_catalog({name, params});
        },
        py::arg("name"), py::arg("params") = std::map<std::string, double>{});
    mod.def("square_well", &make_square_well, py::arg("depth"), py::arg("radius"),
            py::arg("dim") = 2);
    mod.def("square_well_1d", &make_square_well_1d);
    mod.def("delta_shell", &make_delta_shell, py::arg("strength"),
            py::arg("radius") = 1.0, py::arg("eps") = 1e-3);
    mod.def("delta_line", &make_delta_line, py::arg("strength"),
            py::arg("eps") = 1e-3);

    mod.def("count_1d", [](const Potential& v) {
        return count_to_dict(count_bound_states_1d(v));
    });
    mod.def(
        "count_channel",
        [](const Potential& v, int dim, double m) {
            return count_to_dict(count_channel(v, dim, m));
        },
        py::arg("v"), py::arg("dim") = 2, py::arg("m") = 0.0);
    mod.def("count_total_2d", [](const Potential& v) {
        return count_to_dict(count_total_2d(v));
    });

    mod.def(
        "eigenvalue",
        [](const Potential& v, int dim, double m, int i) {
            return energy::eigenvalue(v, dim, m, i);
        },
        py::arg("v"), py::arg("dim") = 2, py::arg("m") = 0.0, py::arg("i") = 0);
    mod.def("spectrum_1d",
            [](const Potential& v) { return energy::spectrum_1d(v); });
    mod.def(
        "ground_bracket_2d",
        [](const Potential& shape, double g) {
            auto br = energy::ground_bracket_2d(shape, g);
            py::dict d;
            d["lower_kappa2"] = br.lower_kappa2;
            d["upper_kappa2"] = br.upper_kappa2;
            d["x_value"] = br.x_value;
            d["lower_ok"] = br.lower_ok;
            d["upper_ok"] = br.upper_ok;
            d["note"] = br.note;
            return d;
        },
        py::arg("shape"), py::arg("g"));

    mod.def("bound_report", [](const Potential& v) {
        auto rep = bounds::full_report(v);
        py::dict d;
        for (const auto& [id, e] : rep.entries) {
            py::dict entry;
            entry["value"] = e.value;
            entry["applicable"] = e.applicable;
            entry["error_estimate"] = e.quadrature_error;
            entry["reason"] = e.reason;
            d[id.c_str()] = entry;
        }
        return d;
    });

    mod.def("regge_intercepts",
            [](const Potential& v) { return regge::intercepts(v); });
    mod.def("count_via_trajectories",
            [](const Potential& v) { return regge::count_via_trajectories(v); });

    mod.def("log_map", &log_map, py::arg("u"), py::arg("R") = 1.0);
    mod.def("inverse_log_map", &inverse_log_map, py::arg("v"), py::arg("R") = 1.0);

    mod.def("fd_count_1d", [](const Potential& v) {
        auto o = oracle::fd_count_1d(v);
        return py::make_tuple(o.count, o.stable);
    });

    mod.def(
        "verify_all",
        [](int trials, unsigned seed) {
            py::dict d;
            for (const auto& s : verify::run_all(trials, seed)) {
                py::dict e;
                e["passed"] = s.passed;
                e["failed"] = s.failed;
                e["counterexamples"] = s.failures;
                d[s.name.c_str()] = e;
            }
            return d;
        },
        py::arg("trials") = 50, py::arg("seed") = 7);
}
