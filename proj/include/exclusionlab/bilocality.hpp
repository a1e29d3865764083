#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "exclusionlab/metrics.hpp"
#include "exclusionlab/pbr.hpp"

// The bilocality causal network: quantum behaviors built via steering,
// classical latent-variable strategies, the see-saw search for the best
// classical CE, and the possibilistic (support-level) infeasibility check.

namespace exclusionlab {

// Conditional table P(x_a, x_b, y | s_a, s_b, t); y in {1..4}.
struct Behavior {
    enum class Provenance { Quantum, Classical, External };

    Provenance provenance = Provenance::External;
    std::array<double, 256> p{};

    static std::size_t index(int s_a, int s_b, TaskLabel t, int x_a, int x_b, int y);
    double& at(int s_a, int s_b, TaskLabel t, int x_a, int x_b, int y);
    double at(int s_a, int s_b, TaskLabel t, int x_a, int x_b, int y) const;

    // Max deviation from per-context normalization.
    double normalization_error() const;
    // Max dependence of one side's output marginal on the far settings.
    double no_signaling_error() const;

    nlohmann::json to_json() const;
};

// Conditional state of the kept qubit after measuring the ancilla of a
// maximally entangled pair in the Z (s=0) or X (s=1) basis with outcome x.
DensityOperator steered_state(int s, int x);

Behavior quantum_behavior(const std::array<ExclusionTask, 4>& tasks,
                          const std::optional<NoiseChannel>& noise = {});

struct ClassicalStrategy {
    // Independent latent distributions.
    std::vector<double> weights_a;
    std::vector<double> weights_b;
    // Per-latent output functions s -> x, encoded as (f(0), f(1)).
    std::vector<std::array<int, 2>> f_a;
    std::vector<std::array<int, 2>> f_b;
    // Response g(y | t, la, lb), stored as outcome weights.
    // Index: ((task_index * |L_A| + la) * |L_B| + lb) * 4 + (y-1).
    std::vector<double> g;

    std::size_t card_a() const { return weights_a.size(); }
    std::size_t card_b() const { return weights_b.size(); }
    double& g_at(TaskLabel t, std::size_t la, std::size_t lb, int y);
    double g_at(TaskLabel t, std::size_t la, std::size_t lb, int y) const;

    void validate() const;
    nlohmann::json to_json() const;
    static ClassicalStrategy from_json(const nlohmann::json& j);
};

// The cardinality-4 strategy transporting the stabilizer toy model:
// latents (z,x) uniform, f(s) = (s == 0 ? z : x), response reading the
// z bits against the computational-basis exclusion measurements.
ClassicalStrategy toy_strategy();

Behavior strategy_behavior(const ClassicalStrategy& strat);

struct ClassicalSearchResult {
    ClassicalStrategy strategy;
    double best_total = 0.0;
    double analytic_bound = kNoncontextualBound;
    bool bound_respected = false;
};

// See-saw search over the model class the 15/4 bound covers: the two
// wings mirror each other (shared weights and output functions) and the
// output marginals are pinned at P(x|s) = 1/2, as steering fixes them.
ClassicalSearchResult best_classical_ce(std::size_t card_a, std::size_t card_b,
                                        std::size_t restarts, std::uint64_t seed);

struct SupportPattern {
    std::array<bool, 256> possible{};
    double eps = 1e-9;

    nlohmann::json to_json() const;
};

SupportPattern support_of(const Behavior& b, double eps = 1e-9);

struct PossibilisticVerdict {
    bool infeasible = false;
    // Witness triple for INFEASIBLE: deterministic output functions
    // (f(0), f(1)) per side plus the blocking task setting.
    std::array<int, 2> witness_f_a{};
    std::array<int, 2> witness_f_b{};
    TaskLabel witness_task = TaskLabel::T0p;
    // Allowed outcome sets per (f_a, f_b, t), bitmask over Y.
    std::array<std::array<std::array<unsigned, 4>, 4>, 4> allowed{};
    std::string note;

    nlohmann::json to_json() const;
};

// Reduces latents to their induced output functions and searches the
// product families F_A x F_B for one whose allowed outcomes cover the
// support. INFEASIBLE when none does; sound because any latent-variable
// model realizing the support induces such a family. The feasible
// direction stays conservative (UNDECIDED-FEASIBLE).
PossibilisticVerdict possibilistic_feasibility(const SupportPattern& sp);

}  // namespace exclusionlab
