#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "exclusionlab/pbr.hpp"

// Conclusiveness-of-exclusion figures of merit: per-task CE_T, the total
// CE over the four tasks, CE read off a raw bilocality behavior, noise
// sweeps and threshold location for the CE <= 15/4 bound.

namespace exclusionlab {

struct Behavior;  // bilocality.hpp

struct NoiseChannel {
    NoiseMode mode = NoiseMode::Global;
    double visibility = 1.0;
};

struct CeReport {
    std::map<TaskLabel, double> per_task;
    double total = 0.0;
    // per_event[task_index][Y-1] = P(E_{Y|T} | rho_{Y|T})
    std::array<std::array<double, 4>, 4> per_event{};
    std::string noise_mode = "none";
    double visibility = 1.0;

    nlohmann::json to_json() const;
};

double ce_task(const ExclusionTask& task, const std::optional<NoiseChannel>& noise = {});

CeReport ce_total(const std::array<ExclusionTask, 4>& tasks,
                  const std::optional<NoiseChannel>& noise = {});

// CE assembled from P(Y | X_A, X_B, S_A, S_B, T) with the conditioning
// event given by each task's index map. Throws if a conditioning event
// has zero probability.
CeReport ce_from_behavior(const Behavior& b);

struct NoiseSweep {
    NoiseMode mode = NoiseMode::Global;
    std::vector<double> visibilities;
    std::vector<CeReport> reports;
    std::optional<double> threshold;  // v* where CE crosses 15/4

    std::string to_csv() const;
};

NoiseSweep sweep_noise(NoiseMode mode, const std::vector<double>& grid,
                       double threshold_tol = 1e-9);

// Bisection for CE(v) = 15/4 on [0,1]; throws if there is no crossing.
double find_threshold(NoiseMode mode, double tol);

constexpr double kNoncontextualBound = 15.0 / 4.0;

}  // namespace exclusionlab
