// pybind11 bindings exposing the main operations of the toolkit.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "exclusionlab/bilocality.hpp"
#include "exclusionlab/metrics.hpp"
#include "exclusionlab/ncmodel.hpp"
#include "exclusionlab/pbr.hpp"
#include "exclusionlab/qcore.hpp"
#include "exclusionlab/version.hpp"

namespace py = pybind11;
namespace xl = exclusionlab;

namespace {

xl::NoiseMode noise_mode_from_string(const std::string& s) {
    if (s == "global") return xl::NoiseMode::Global;
    if (s == "per_qubit") return xl::NoiseMode::PerQubit;
    throw std::invalid_argument("noise mode must be 'global' or 'per_qubit'");
}

std::optional<xl::NoiseChannel> make_noise(const std::string& mode, double visibility) {
    if (mode.empty() || mode == "none") return std::nullopt;
    return xl::NoiseChannel{noise_mode_from_string(mode), visibility};
}

py::dict ce_report_to_dict(const xl::CeReport& r) {
    py::dict d;
    py::dict per_task;
    for (const auto& [t, v] : r.per_task) per_task[py::str(xl::to_string(t))] = v;
    d["per_task"] = per_task;
    d["total"] = r.total;
    py::dict per_event;
    for (xl::TaskLabel t : xl::all_task_labels()) {
        py::list row;
        for (int y = 1; y <= 4; ++y) row.append(r.per_event[xl::task_index(t)][y - 1]);
        per_event[py::str(xl::to_string(t))] = row;
    }
    d["per_event"] = per_event;
    d["noise_mode"] = r.noise_mode;
    d["visibility"] = r.visibility;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Conclusive-exclusion toolkit: two-qubit exclusion tasks, CE metrics, "
              "noncontextual-model optimization and bilocality analyses";
    m.attr("__version__") = xl::kVersion;
    m.attr("NONCONTEXTUAL_BOUND") = xl::kNoncontextualBound;

    m.def("tasks_json", [] {
        py::list out;
        for (const xl::ExclusionTask& t : xl::build_all_tasks())
            out.append(xl::task_to_json(t).dump());
        return out;
    }, "JSON description of the four exclusion tasks");

    m.def("verify_operational_identity", [](double perturb_plus) {
        xl::OperationalIdentityReport r = xl::verify_operational_identity(perturb_plus);
        return py::make_tuple(r.passed, r.max_deviation);
    }, py::arg("perturb_plus") = 0.0);

    m.def("ce_total", [](const std::string& noise, double visibility) {
        return ce_report_to_dict(xl::ce_total(xl::build_all_tasks(),
                                              make_noise(noise, visibility)));
    }, py::arg("noise") = "none", py::arg("visibility") = 1.0,
       "CE report for the four quantum tasks, optionally under depolarizing noise");

    m.def("find_threshold", [](const std::string& mode, double tol) {
        return xl::find_threshold(noise_mode_from_string(mode), tol);
    }, py::arg("mode"), py::arg("tol") = 1e-9,
       "visibility where CE crosses 15/4");

    m.def("sweep_csv", [](const std::string& mode, double lo, double hi, double step) {
        std::vector<double> grid;
        for (double v = lo; v <= hi + 1e-12; v += step) grid.push_back(std::min(v, hi));
        return xl::sweep_noise(noise_mode_from_string(mode), grid).to_csv();
    }, py::arg("mode"), py::arg("lo") = 0.0, py::arg("hi") = 1.0, py::arg("step") = 0.01);

    m.def("toy_model_ce", [] {
        auto [quad, xi] = xl::toy_model_quad();
        return ce_report_to_dict(xl::model_ce(quad, quad, xi));
    }, "CE of the bound-saturating stabilizer model");

    m.def("maximize_ce", [](std::size_t n, std::size_t restarts, std::uint64_t seed) {
        xl::MaximizeResult r = xl::maximize_ce(n, restarts, seed);
        py::dict d;
        d["best_found"] = r.best_found;
        d["analytic_bound"] = r.analytic_bound;
        d["bound_respected"] = r.bound_respected;
        d["model_json"] = xl::model_to_json(r.q_a, r.responses).dump();
        return d;
    }, py::arg("n") = 4, py::arg("restarts") = 32, py::arg("seed") = 0);

    m.def("quantum_behavior_ce", [](const std::string& noise, double visibility) {
        xl::Behavior b = xl::quantum_behavior(xl::build_all_tasks(),
                                              make_noise(noise, visibility));
        py::dict d = ce_report_to_dict(xl::ce_from_behavior(b));
        d["no_signaling_error"] = b.no_signaling_error();
        return d;
    }, py::arg("noise") = "none", py::arg("visibility") = 1.0);

    m.def("best_classical_ce", [](std::size_t card, std::size_t restarts, std::uint64_t seed) {
        xl::ClassicalSearchResult r = xl::best_classical_ce(card, card, restarts, seed);
        py::dict d;
        d["best_total"] = r.best_total;
        d["analytic_bound"] = r.analytic_bound;
        d["bound_respected"] = r.bound_respected;
        return d;
    }, py::arg("card") = 4, py::arg("restarts") = 8, py::arg("seed") = 0);

    m.def("possibilistic_verdict", [](double eps) {
        xl::SupportPattern sp = xl::support_of(xl::quantum_behavior(xl::build_all_tasks()), eps);
        xl::PossibilisticVerdict v = xl::possibilistic_feasibility(sp);
        py::dict d;
        d["infeasible"] = v.infeasible;
        if (v.infeasible) {
            d["witness_f_a"] = v.witness_f_a;
            d["witness_f_b"] = v.witness_f_b;
            d["witness_task"] = xl::to_string(v.witness_task);
        }
        return d;
    }, py::arg("eps") = 1e-9,
       "possibilistic feasibility verdict for the ideal quantum support");
}
