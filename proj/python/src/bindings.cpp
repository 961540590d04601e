#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <string>
#include <vector>

#include "isav/config.hpp"
#include "isav/diagnostics.hpp"
#include "isav/error.hpp"
#include "isav/potentials.hpp"
#include "isav/runner.hpp"

namespace py = pybind11;
using namespace isav;

namespace {

py::array_t<double> to_array(const Field& u) {
    py::array_t<double> out({u.grid().nx(), u.grid().ny()});
    const auto values = u.values();
    std::copy(values.begin(), values.end(), out.mutable_data());
    return out;
}

py::object optional_value(const std::optional<double>& v) {
    return v ? py::object(py::float_(*v)) : py::object(py::none());
}

py::dict record_dict(const StepRecord& r) {
    py::dict d;
    d["step"] = r.step;
    d["t"] = r.t;
    d["E_orig"] = r.E_orig;
    d["E_mod"] = r.E_mod;
    d["E2"] = optional_value(r.E2);
    d["D_be"] = optional_value(r.D_be);
    d["D_bdf"] = optional_value(r.D_bdf);
    d["r_drift"] = r.r_drift;
    d["mass"] = r.mass;
    d["min_phi"] = r.min_phi;
    d["max_phi"] = r.max_phi;
    return d;
}

PotentialSpec make_potential(const std::string& kind, double eps, double beta, double sigma, double c_add) {
    PotentialSpec p;
    p.kind = potential_kind_from_string(kind);
    p.eps = eps;
    p.beta = beta;
    p.sigma = sigma;
    p.c_add = c_add;
    p.validate();
    return p;
}

}  // namespace

PYBIND11_MODULE(_isav, m) {
    m.doc() = "SAV and improved-SAV gradient-flow solver";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    auto scheme_error = py::register_exception<SchemeError>(m, "SchemeError", PyExc_RuntimeError);
    py::register_exception<NonPositiveEnergy>(m, "NonPositiveEnergy", scheme_error.ptr());

    m.def("presets", [] {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& p : list_presets()) out.emplace_back(p.name, p.description);
        return out;
    });

    m.def("resolve_config", [](const std::string& text) { return dump_config(parse_config(text)); },
          py::arg("text"), "Expands presets and defaults; returns the resolved config as JSON text.");

    m.def(
        "run",
        [](const std::string& text, bool write_files) {
            const RunConfig cfg = parse_config(text);
            const RunResult result = [&] {
                py::gil_scoped_release release;
                return run_simulation(cfg, RunOptions{true, write_files});
            }();
            py::list records;
            for (const auto& r : result.records) records.append(record_dict(r));
            py::dict out;
            out["records"] = records;
            out["phi"] = to_array(result.final_state.phi);
            out["r"] = result.final_state.r;
            return out;
        },
        py::arg("text"), py::arg("write_files") = false,
        "Runs a JSON config. Returns the step records and the final field.");

    m.def(
        "converge",
        [](const std::string& text, std::vector<double> taus, std::vector<int> grids, double ref_tau, int ref_grid) {
            if (taus.empty() == grids.empty()) throw ValidationError("give exactly one of taus or grids");
            const RunConfig cfg = parse_config(text);
            ConvergenceOptions options;
            options.ref_tau = ref_tau;
            options.ref_grid = ref_grid;
            std::vector<ConvergenceRow> rows;
            {
                py::gil_scoped_release release;
                rows = taus.empty() ? spatial_study(cfg, grids, options) : temporal_study(cfg, taus, options);
            }
            py::list out;
            for (const auto& row : rows) {
                py::dict d;
                d["n"] = row.n;
                d["tau"] = row.tau;
                d["error"] = row.error;
                d["order"] = optional_value(row.order);
                out.append(d);
            }
            return out;
        },
        py::arg("text"), py::arg("taus") = std::vector<double>{}, py::arg("grids") = std::vector<int>{},
        py::arg("ref_tau") = 1e-5, py::arg("ref_grid") = 64);

    m.def(
        "potential",
        [](const std::string& kind, py::array_t<double, py::array::c_style | py::array::forcecast> phi, int order,
           double eps, double beta, double sigma, double c_add) {
            const PotentialSpec p = make_potential(kind, eps, beta, sigma, c_add);
            if (order < 0 || order > 2) throw ValidationError("order must be 0, 1 or 2");
            py::array_t<double> out(phi.request().shape);
            const double* in = phi.data();
            double* dst = out.mutable_data();
            for (py::ssize_t i = 0; i < phi.size(); ++i) {
                dst[i] = order == 0 ? p.F(in[i]) : order == 1 ? p.f(in[i]) : p.fprime(in[i]);
            }
            return out;
        },
        py::arg("kind"), py::arg("phi"), py::arg("order") = 0, py::arg("eps") = 1.0, py::arg("beta") = 0.0,
        py::arg("sigma") = 0.0, py::arg("c_add") = 0.0, "F (order 0), f (1) or f' (2) evaluated elementwise.");
}
