#include "exclusionlab/metrics.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "exclusionlab/bilocality.hpp"

namespace exclusionlab {

namespace {

std::string noise_mode_name(const std::optional<NoiseChannel>& noise) {
    if (!noise) return "none";
    return noise->mode == NoiseMode::Global ? "global" : "per_qubit";
}

double event_probability(const ExclusionTask& task, int y,
                         const std::optional<NoiseChannel>& noise) {
    DensityOperator rho = task.states[y - 1];
    if (noise) rho = depolarize(rho, noise->visibility, noise->mode);
    return born_probability(task.measurement[y - 1], rho);
}

CeReport assemble_report(const std::array<std::array<double, 4>, 4>& per_event) {
    CeReport r;
    r.per_event = per_event;
    r.total = 0.0;
    for (TaskLabel t : all_task_labels()) {
        double sum = 0.0;
        for (int y = 1; y <= 4; ++y) sum += per_event[task_index(t)][y - 1];
        double ce = 1.0 - 0.25 * sum;
        r.per_task[t] = ce;
        r.total += ce;
    }
    return r;
}

}  // namespace

double ce_task(const ExclusionTask& task, const std::optional<NoiseChannel>& noise) {
    double sum = 0.0;
    for (int y = 1; y <= 4; ++y) sum += event_probability(task, y, noise);
    return 1.0 - 0.25 * sum;
}

CeReport ce_total(const std::array<ExclusionTask, 4>& tasks,
                  const std::optional<NoiseChannel>& noise) {
    std::array<std::array<double, 4>, 4> per_event{};
    for (const ExclusionTask& task : tasks) {
        for (int y = 1; y <= 4; ++y)
            per_event[task_index(task.label)][y - 1] = event_probability(task, y, noise);
    }
    CeReport r = assemble_report(per_event);
    r.noise_mode = noise_mode_name(noise);
    r.visibility = noise ? noise->visibility : 1.0;
    return r;
}

CeReport ce_from_behavior(const Behavior& b) {
    std::array<std::array<double, 4>, 4> per_event{};
    for (TaskLabel t : all_task_labels()) {
        for (int y = 1; y <= 4; ++y) {
            SourceCoordinates c = index_map(y, t);
            double joint = b.at(c.s_a, c.s_b, t, c.x_a, c.x_b, y);
            double marginal = 0.0;
            for (int yy = 1; yy <= 4; ++yy)
                marginal += b.at(c.s_a, c.s_b, t, c.x_a, c.x_b, yy);
            if (marginal <= 0.0)
                throw std::domain_error("zero-probability conditioning event in behavior");
            per_event[task_index(t)][y - 1] = joint / marginal;
        }
    }
    CeReport r = assemble_report(per_event);
    r.noise_mode = "behavior";
    return r;
}

nlohmann::json CeReport::to_json() const {
    nlohmann::json j;
    for (const auto& [t, v] : per_task) j["per_task"][to_string(t)] = v;
    j["total"] = total;
    for (TaskLabel t : all_task_labels()) {
        nlohmann::json row = nlohmann::json::array();
        for (int y = 1; y <= 4; ++y) row.push_back(per_event[task_index(t)][y - 1]);
        j["per_event"][to_string(t)] = std::move(row);
    }
    j["metadata"] = {{"noise_mode", noise_mode}, {"visibility", visibility}};
    return j;
}

namespace {

std::string fmt17(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

std::string NoiseSweep::to_csv() const {
    std::ostringstream os;
    os << "mode,visibility,ce_total,ce_0p,ce_0m,ce_1p,ce_1m\n";
    std::string name = mode == NoiseMode::Global ? "global" : "per_qubit";
    for (std::size_t i = 0; i < visibilities.size(); ++i) {
        const CeReport& r = reports[i];
        os << name << ',' << fmt17(visibilities[i]) << ',' << fmt17(r.total);
        for (TaskLabel t : all_task_labels()) os << ',' << fmt17(r.per_task.at(t));
        os << '\n';
    }
    if (threshold) os << "# threshold," << name << ',' << fmt17(*threshold) << '\n';
    return os.str();
}

NoiseSweep sweep_noise(NoiseMode mode, const std::vector<double>& grid, double threshold_tol) {
    NoiseSweep sw;
    sw.mode = mode;
    std::array<ExclusionTask, 4> tasks = build_all_tasks();
    double prev = -1.0;
    for (double v : grid) {
        if (v < 0.0 || v > 1.0) throw std::invalid_argument("sweep grid outside [0,1]");
        CeReport r = ce_total(tasks, NoiseChannel{mode, v});
        if (r.total < prev - 1e-12)
            throw std::domain_error("CE(v) is not monotone on the sweep grid");
        prev = r.total;
        sw.visibilities.push_back(v);
        sw.reports.push_back(std::move(r));
    }
    try {
        sw.threshold = find_threshold(mode, threshold_tol);
    } catch (const std::domain_error&) {
        sw.threshold.reset();
    }
    return sw;
}

double find_threshold(NoiseMode mode, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("threshold tolerance must be positive");
    std::array<ExclusionTask, 4> tasks = build_all_tasks();
    auto ce = [&](double v) { return ce_total(tasks, NoiseChannel{mode, v}).total; };
    double lo = 0.0, hi = 1.0;
    double f_lo = ce(lo), f_hi = ce(hi);
    if (f_lo > kNoncontextualBound || f_hi < kNoncontextualBound)
        throw std::domain_error("CE(v) does not cross 15/4 on [0,1]");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (ce(mid) < kNoncontextualBound)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace exclusionlab
