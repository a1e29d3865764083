#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "exclusionlab/metrics.hpp"
#include "exclusionlab/pbr.hpp"

// Finite ontological models: noncontextual model quads over a finite
// ontic space, overlap measures beta_T with their subregion
// decomposition, model-predicted CE, optimization of CE over models, and
// numerical certification of each step in the CE <= 15/4 derivation.

namespace exclusionlab {

constexpr double kSupportThreshold = 1e-12;

// Four distributions mu_0, mu_1, mu_+, mu_- on a shared finite ontic
// space, constrained by the identity mu_0 + mu_1 = mu_+ + mu_-.
struct NcModelQuad {
    std::vector<double> mu0, mu1, mu_plus, mu_minus;

    std::size_t size() const { return mu0.size(); }
    // Distribution for the preparation selected by multi-source
    // coordinates (s, x).
    const std::vector<double>& preparation(int s, int x) const;
};

struct QuadValidation {
    double max_negativity = 0.0;
    double max_normalization_error = 0.0;
    double max_identity_violation = 0.0;
    bool passed = false;
};

QuadValidation validate_quad(const NcModelQuad& q);

// xi(Y | lambda_A, lambda_B, T), a distribution over Y per ontic pair
// and task.
struct ResponseFunction {
    std::size_t n_a = 0, n_b = 0;
    std::vector<double> w;  // ((t * n_a + la) * n_b + lb) * 4 + (y-1)

    static ResponseFunction uniform(std::size_t n_a, std::size_t n_b);
    double& at(TaskLabel t, std::size_t la, std::size_t lb, int y);
    double at(TaskLabel t, std::size_t la, std::size_t lb, int y) const;
    void validate() const;
};

// The n=4 stabilizer model saturating the bound: lambda = (z, x),
// mu_0/mu_1 uniform on the z-halves, mu_+/mu_- on the x-halves, with
// deterministic responses emulating computational-basis exclusion
// measurements read off the z bits.
std::pair<NcModelQuad, ResponseFunction> toy_model_quad();

struct OverlapReport {
    // beta indexed by task: (0,+), (0,-), (1,+), (1,-).
    std::array<double, 4> beta{};
    // Masses of the nine disjoint support subregions under the average
    // distribution m = (mu_0 + mu_1)/2. Keys: "0+", "0-", "1+", "1-",
    // "01+", "01-", "0+-", "1+-", "01+-".
    std::map<std::string, double> subregion_masses;
    // Contribution of each of a task's four subregions to its beta,
    // in the order: exclusive pair, pair+third (x side), pair+third
    // (z side), all four.
    std::array<std::array<double, 4>, 4> beta_decomposition{};
    // Support distinctness per pair, same task order.
    std::array<bool, 4> supports_distinct{};
};

OverlapReport overlaps(const NcModelQuad& q, double support_threshold = kSupportThreshold);

struct OverlapLemmaReport {
    struct Pair {
        std::string hypothesis;   // e.g. "supp(mu_0) != supp(mu_+)"
        bool distinct = false;    // hypothesis holds
        std::string partner;      // e.g. "beta_0-"
        double partner_beta = 0.0;
        bool vacuous = false;
        bool passed = false;
    };
    std::array<Pair, 4> pairs;
    bool passed = false;
};

// Support distinctness of one pair implies positive overlap of the
// partner pair; vacuous when the supports coincide.
OverlapLemmaReport check_overlap_lemma(const NcModelQuad& q,
                                       double support_threshold = kSupportThreshold);

CeReport model_ce(const NcModelQuad& q_a, const NcModelQuad& q_b, const ResponseFunction& xi);

// Deterministic argmin response: all weight on the outcome with the
// smallest event coefficient; ties broken by the smallest Y.
ResponseFunction optimal_responses(const NcModelQuad& q_a, const NcModelQuad& q_b);

// Random quad with the ontic identity exact by construction.
NcModelQuad random_valid_quad(std::size_t n, std::mt19937_64& rng);

struct MaximizeResult {
    NcModelQuad q_a, q_b;
    ResponseFunction responses;
    double best_found = 0.0;
    double analytic_bound = kNoncontextualBound;
    bool bound_respected = false;
};

// Alternating optimization with multi-restart; heuristic lower-bound
// finder, the upper bound is the theorem. Searches a single quad shared
// by both sides (the class the bound covers; q_a = q_b in the result).
// Restart parallelism capped by EXCLUSION_LAB_THREADS; results
// independent of scheduling.
MaximizeResult maximize_ce(std::size_t n, std::size_t restarts, std::uint64_t seed);

struct CertificationReport {
    double ce_total = 0.0;
    std::array<double, 4> beta_a{}, beta_b{};
    // CE_T <= 1 - (beta^A_T beta^B_T)/4
    std::array<double, 4> per_task_slack{};
    // CE <= 4 - sum_T beta^A_T beta^B_T / 4
    double total_slack = 0.0;
    // sum beta^2 >= (sum beta)^2 / 4, per side
    double cauchy_schwarz_slack_a = 0.0, cauchy_schwarz_slack_b = 0.0;
    // sum beta >= 2, per side
    double beta_sum_slack_a = 0.0, beta_sum_slack_b = 0.0;
    // CE <= 4 - (sum beta)^2 / 16, the endpoint of the chain; evaluated
    // with the A-side betas and meaningful when the two quads coincide.
    double final_slack = 0.0;
    bool symmetric = false;
    double min_slack = 0.0;
    bool passed = false;  // all slacks >= -1e-9
};

CertificationReport certify_bound_steps(const NcModelQuad& q_a, const NcModelQuad& q_b,
                                        const ResponseFunction& xi);

nlohmann::json model_to_json(const NcModelQuad& q, const ResponseFunction& xi);
std::pair<NcModelQuad, ResponseFunction> model_from_json(const nlohmann::json& j);

}  // namespace exclusionlab
