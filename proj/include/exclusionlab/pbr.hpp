#pragma once

#include <array>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "exclusionlab/qcore.hpp"

// The four conclusive-exclusion tasks: product-state quadruples, the
// entangled exclusion measurements, and the index map linking the
// measurement outcome (Y,T) to multi-source variables (S_A,X_A,S_B,X_B).

namespace exclusionlab {

enum class TaskLabel { T0p, T0m, T1p, T1m };

constexpr std::array<TaskLabel, 4> all_task_labels() {
    return {TaskLabel::T0p, TaskLabel::T0m, TaskLabel::T1p, TaskLabel::T1m};
}

std::string to_string(TaskLabel t);
TaskLabel task_label_from_string(const std::string& s);
std::size_t task_index(TaskLabel t);

// T decomposes as a Z-branch label in {0,1} and an X-branch label in {+,-}.
int z_label(TaskLabel t);
bool x_label_is_minus(TaskLabel t);

struct SourceCoordinates {
    int s_a = 0;
    int x_a = 0;
    int s_b = 0;
    int x_b = 0;

    bool operator==(const SourceCoordinates&) const = default;
};

// (0,0)->|0><0|, (0,1)->|1><1|, (1,0)->|+><+|, (1,1)->|-><-|.
DensityOperator single_qubit_state(int s, int x);

DensityOperator product_state(const SourceCoordinates& c);

// Outcome Y in {1..4}; the bits of Y-1 pick the Z- or X-branch per side
// (most significant bit governs side A).
SourceCoordinates index_map(int y, TaskLabel t);

struct ExclusionTask {
    TaskLabel label;
    std::array<DensityOperator, 4> states;
    Povm measurement;
    std::array<SourceCoordinates, 4> coordinates;  // indexed by Y-1
};

ExclusionTask build_task(TaskLabel t);
std::array<ExclusionTask, 4> build_all_tasks();

struct OperationalIdentityReport {
    double max_deviation = 0.0;
    bool passed = false;
};

// Checks (|0><0| + |1><1|)/2 == (|+><+| + |-><-|)/2 entrywise.
// plus_perturbation > 0 corrupts |+> towards (|0>+(1-d)|1>)/norm, for
// exercising the failure path.
OperationalIdentityReport verify_operational_identity(double plus_perturbation = 0.0);

nlohmann::json task_to_json(const ExclusionTask& task);

}  // namespace exclusionlab
