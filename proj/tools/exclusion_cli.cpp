// Command-line front end: constructs the exclusion scenario, runs the
// verification battery, noise sweeps, ontological-model and classical
// bilocal searches, and emits JSON/CSV reports with reproducible seeds.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "exclusionlab/bilocality.hpp"
#include "exclusionlab/metrics.hpp"
#include "exclusionlab/ncmodel.hpp"
#include "exclusionlab/pbr.hpp"
#include "exclusionlab/qcore.hpp"
#include "exclusionlab/version.hpp"

namespace xl = exclusionlab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariantFailure = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitNumericalAnomaly = 4;

struct CommonOpts {
    bool deterministic = false;
    std::string out_path;
};

json report_envelope(bool deterministic) {
    json j;
    j["library_version"] = xl::kVersion;
    const xl::Tolerances& tol = xl::tolerances();
    j["tolerances"] = {{"norm", tol.norm}, {"herm", tol.herm}, {"povm", tol.povm},
                       {"psd", tol.psd}};
    if (!deterministic) {
        auto now = std::chrono::system_clock::now().time_since_epoch();
        j["timestamp_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    }
    return j;
}

void emit(const json& j, const CommonOpts& opts) {
    std::string text = j.dump(2) + "\n";
    if (opts.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opts.out_path);
        if (!f) throw std::invalid_argument("cannot open output path: " + opts.out_path);
        f << text;
    }
}

void emit_text(const std::string& text, const CommonOpts& opts) {
    if (opts.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opts.out_path);
        if (!f) throw std::invalid_argument("cannot open output path: " + opts.out_path);
        f << text;
    }
}

std::vector<double> parse_grid(const std::string& spec) {
    // "a:b:step"
    std::vector<double> parts;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t colon = spec.find(':', pos);
        std::string tok = spec.substr(pos, colon == std::string::npos ? colon : colon - pos);
        parts.push_back(std::stod(tok));
        if (colon == std::string::npos) break;
        pos = colon + 1;
    }
    if (parts.size() != 3 || parts[2] <= 0.0)
        throw std::invalid_argument("grid must be a:b:step with step > 0");
    std::vector<double> grid;
    for (double v = parts[0]; v <= parts[1] + 1e-12; v += parts[2])
        grid.push_back(std::min(v, parts[1]));
    return grid;
}

xl::NoiseMode parse_noise(const std::string& s) {
    if (s == "global") return xl::NoiseMode::Global;
    if (s == "per_qubit") return xl::NoiseMode::PerQubit;
    throw std::invalid_argument("noise mode must be global or per_qubit");
}

int cmd_verify(double perturb_plus, const CommonOpts& opts) {
    json report = report_envelope(opts.deterministic);
    json checks = json::array();
    std::string first_failure;
    auto record = [&](const std::string& name, bool passed, double value) {
        checks.push_back({{"name", name}, {"passed", passed}, {"value", value}});
        if (!passed && first_failure.empty()) first_failure = name;
    };

    std::array<xl::ExclusionTask, 4> tasks = xl::build_all_tasks();

    double max_exclusion = 0.0;
    double max_state_mismatch = 0.0;
    for (const xl::ExclusionTask& task : tasks) {
        for (int y = 1; y <= 4; ++y) {
            max_exclusion = std::max(
                max_exclusion,
                xl::born_probability(task.measurement[y - 1], task.states[y - 1]));
            xl::DensityOperator mapped = xl::product_state(task.coordinates[y - 1]);
            max_state_mismatch = std::max(
                max_state_mismatch, mapped.matrix().max_abs_diff(task.states[y - 1].matrix()));
        }
    }
    record("perfect_exclusion_events", max_exclusion <= 1e-12, max_exclusion);
    record("index_map_matches_states", max_state_mismatch <= 1e-12, max_state_mismatch);

    xl::OperationalIdentityReport op = xl::verify_operational_identity(perturb_plus);
    record("operational_identity", op.passed, op.max_deviation);

    xl::CeReport quantum = xl::ce_total(tasks);
    record("quantum_ce_total", std::abs(quantum.total - 4.0) <= 1e-12, quantum.total);
    report["total_quantum"] = quantum.total;

    auto [toy_quad, toy_xi] = xl::toy_model_quad();
    xl::QuadValidation qv = xl::validate_quad(toy_quad);
    record("toy_quad_valid", qv.passed,
           std::max({qv.max_negativity, qv.max_normalization_error, qv.max_identity_violation}));
    xl::CeReport toy = xl::model_ce(toy_quad, toy_quad, toy_xi);
    record("toy_ce_total", std::abs(toy.total - 3.75) <= 1e-12, toy.total);
    report["total_toy"] = toy.total;

    xl::CertificationReport cert = xl::certify_bound_steps(toy_quad, toy_quad, toy_xi);
    record("toy_bound_certification", cert.passed, cert.min_slack);

    report["checks"] = std::move(checks);
    report["passed"] = first_failure.empty();
    if (!first_failure.empty()) report["first_failure"] = first_failure;
    emit(report, opts);
    if (!first_failure.empty()) {
        std::cerr << "verify failed: " << first_failure << "\n";
        return kExitInvariantFailure;
    }
    return kExitOk;
}

int cmd_sweep(const std::string& noise, const std::string& grid_spec, const CommonOpts& opts) {
    xl::NoiseMode mode = parse_noise(noise);
    xl::NoiseSweep sw = xl::sweep_noise(mode, parse_grid(grid_spec), 1e-9);
    emit_text(sw.to_csv(), opts);
    return kExitOk;
}

int cmd_ncmax(std::size_t n, std::size_t restarts, std::uint64_t seed, const CommonOpts& opts) {
    xl::MaximizeResult res = xl::maximize_ce(n, restarts, seed);
    json report = report_envelope(opts.deterministic);
    report["ontic_n"] = n;
    report["restarts"] = restarts;
    report["seed"] = seed;
    report["best_found"] = res.best_found;
    report["analytic_bound"] = res.analytic_bound;
    report["bound_respected"] = res.bound_respected;
    report["model"] = xl::model_to_json(res.q_a, res.responses);
    emit(report, opts);
    return res.bound_respected ? kExitOk : kExitInvariantFailure;
}

int cmd_bilocal(const std::string& sub, std::size_t card, std::size_t restarts,
                std::uint64_t seed, double eps, const CommonOpts& opts) {
    json report = report_envelope(opts.deterministic);
    if (sub == "quantum") {
        std::array<xl::ExclusionTask, 4> tasks = xl::build_all_tasks();
        xl::Behavior b = xl::quantum_behavior(tasks);
        xl::CeReport ce = xl::ce_from_behavior(b);
        xl::SupportPattern sp = xl::support_of(b, eps);
        report["ce"] = ce.to_json();
        report["behavior"] = b.to_json();
        report["support"] = sp.to_json();
        // The 16 conclusive-exclusion events: outcome Y at the very source
        // coordinates that prepare the state it excludes. (The behavior has
        // further zero entries; the full pattern is under "support".)
        json impossible = json::array();
        for (xl::TaskLabel t : xl::all_task_labels())
            for (int y = 1; y <= 4; ++y) {
                xl::SourceCoordinates c = xl::index_map(y, t);
                if (!sp.possible[xl::Behavior::index(c.s_a, c.s_b, t, c.x_a, c.x_b, y)])
                    impossible.push_back({{"s_a", c.s_a}, {"s_b", c.s_b},
                                          {"t", xl::to_string(t)}, {"x_a", c.x_a},
                                          {"x_b", c.x_b}, {"y", y}});
            }
        report["impossible_events"] = std::move(impossible);
    } else if (sub == "classical") {
        xl::ClassicalSearchResult res = xl::best_classical_ce(card, card, restarts, seed);
        report["card"] = card;
        report["restarts"] = restarts;
        report["seed"] = seed;
        report["best_total"] = res.best_total;
        report["analytic_bound"] = res.analytic_bound;
        report["bound_respected"] = res.bound_respected;
        report["strategy"] = res.strategy.to_json();
        if (!res.bound_respected) {
            emit(report, opts);
            return kExitInvariantFailure;
        }
    } else if (sub == "possibilistic") {
        std::array<xl::ExclusionTask, 4> tasks = xl::build_all_tasks();
        xl::SupportPattern sp = xl::support_of(xl::quantum_behavior(tasks), eps);
        xl::PossibilisticVerdict v = xl::possibilistic_feasibility(sp);
        report["eps"] = eps;
        report["result"] = v.to_json();
    } else {
        throw std::invalid_argument("unknown bilocal subcommand: " + sub);
    }
    emit(report, opts);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conclusive-exclusion toolkit: quantum CE, noncontextual bound, bilocality"};
    app.require_subcommand(1);

    CommonOpts common;
    std::uint64_t seed = 0;
    double tol_norm = -1.0, tol_herm = -1.0, tol_povm = -1.0, tol_psd = -1.0;

    app.add_flag("--deterministic", common.deterministic,
                 "suppress the timestamp for byte-stable reports");
    app.add_option("--out", common.out_path, "write the report to a file instead of stdout");
    app.add_option("--seed", seed, "seed for all stochastic runs");
    app.add_option("--tol-norm", tol_norm, "override normalization tolerance");
    app.add_option("--tol-herm", tol_herm, "override Hermiticity tolerance");
    app.add_option("--tol-povm", tol_povm, "override POVM completeness tolerance");
    app.add_option("--tol-psd", tol_psd, "override positivity tolerance");

    double perturb_plus = 0.0;
    CLI::App* verify = app.add_subcommand("verify", "construction + bound verification battery");
    verify->add_option("--perturb-plus", perturb_plus,
                       "debug: corrupt |+> to exercise the identity failure path");

    std::string noise = "global";
    std::string grid = "0:1:0.01";
    CLI::App* sweep = app.add_subcommand("sweep", "CE noise sweep with threshold line (CSV)");
    sweep->add_option("--noise", noise, "global or per_qubit");
    sweep->add_option("--grid", grid, "visibility grid a:b:step");

    std::size_t ontic_n = 4;
    std::size_t restarts = 32;
    CLI::App* ncmax =
        app.add_subcommand("ncmax", "maximize CE over finite noncontextual models");
    ncmax->add_option("--ontic-n", ontic_n, "ontic space size");
    ncmax->add_option("--restarts", restarts, "search restarts");

    std::size_t card = 4;
    double eps = 1e-9;
    CLI::App* bilocal = app.add_subcommand("bilocal", "bilocality-scenario analyses");
    bilocal->add_option("--card", card, "latent cardinality per side");
    bilocal->add_option("--restarts", restarts, "search restarts");
    bilocal->add_option("--eps", eps, "support extraction threshold");
    std::string bilocal_sub;
    bilocal->add_option("subcommand", bilocal_sub, "quantum | classical | possibilistic")
        ->required();

    CLI11_PARSE(app, argc, argv);

    if (tol_norm > 0.0) xl::tolerances().norm = tol_norm;
    if (tol_herm > 0.0) xl::tolerances().herm = tol_herm;
    if (tol_povm > 0.0) xl::tolerances().povm = tol_povm;
    if (tol_psd > 0.0) xl::tolerances().psd = tol_psd;

    try {
        if (verify->parsed()) return cmd_verify(perturb_plus, common);
        if (sweep->parsed()) return cmd_sweep(noise, grid, common);
        if (ncmax->parsed()) return cmd_ncmax(ontic_n, restarts, seed, common);
        if (bilocal->parsed()) return cmd_bilocal(bilocal_sub, card, restarts, seed, eps, common);
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad input: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical anomaly: " << e.what() << "\n";
        return kExitNumericalAnomaly;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericalAnomaly;
    }
    return kExitBadInput;
}
