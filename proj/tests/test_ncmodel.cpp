#include <doctest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "exclusionlab/ncmodel.hpp"

using namespace exclusionlab;

namespace {

// Independent single-side overlap oracle: for task T the side uses the
// branch-0 preparation mu_{z(T)} and the branch-1 preparation mu_{x(T)};
// beta_T is the total mass where both are simultaneously supported.
double beta_oracle(const NcModelQuad& q, TaskLabel t) {
    const std::vector<double>& zprep = q.preparation(0, z_label(t));
    const std::vector<double>& xprep = q.preparation(1, x_label_is_minus(t) ? 1 : 0);
    double sum = 0.0;
    for (std::size_t l = 0; l < q.size(); ++l) sum += std::min(zprep[l], xprep[l]);
    return sum;
}

// Two-party overlap oracle: pointwise min over a task's four product
// preparation distributions.
double beta_pair_oracle(const NcModelQuad& qa, const NcModelQuad& qb, TaskLabel t) {
    double sum = 0.0;
    for (std::size_t la = 0; la < qa.size(); ++la) {
        for (std::size_t lb = 0; lb < qb.size(); ++lb) {
            double m = 2.0;
            for (int y = 1; y <= 4; ++y) {
                SourceCoordinates c = index_map(y, t);
                m = std::min(m, qa.preparation(c.s_a, c.x_a)[la] *
                                    qb.preparation(c.s_b, c.x_b)[lb]);
            }
            sum += m;
        }
    }
    return sum;
}

}  // namespace

TEST_CASE("quad validation accepts valid quads and flags identity breaks") {
    auto [toy, xi] = toy_model_quad();
    QuadValidation v = validate_quad(toy);
    CHECK(v.passed);
    CHECK(v.max_identity_violation < 1e-14);

    NcModelQuad degenerate{{1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}};
    CHECK(validate_quad(degenerate).passed);

    NcModelQuad broken{{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    QuadValidation bv = validate_quad(broken);
    CHECK_FALSE(bv.passed);
    CHECK(bv.max_identity_violation > 0.4);

    NcModelQuad negative{{1.5, -0.5}, {0.0, 1.0}, {1.0, 0.0}, {0.5, 0.5}};
    CHECK_FALSE(validate_quad(negative).passed);
}

TEST_CASE("stabilizer model saturates the bound") {
    auto [toy, xi] = toy_model_quad();
    CeReport r = model_ce(toy, toy, xi);
    CHECK(std::abs(r.total - 3.75) < 1e-12);
    for (TaskLabel t : all_task_labels())
        CHECK(r.per_task.at(t) == doctest::Approx(15.0 / 16.0).epsilon(1e-14));
    // Optimal responses cannot beat the built-in ones here.
    CeReport opt = model_ce(toy, toy, optimal_responses(toy, toy));
    CHECK(std::abs(opt.total - 3.75) < 1e-12);
}

TEST_CASE("stabilizer model overlaps are all one half") {
    auto [toy, xi] = toy_model_quad();
    OverlapReport o = overlaps(toy);
    for (int i = 0; i < 4; ++i) CHECK(o.beta[i] == doctest::Approx(0.5).epsilon(1e-14));
    for (TaskLabel t : all_task_labels())
        CHECK(std::abs(o.beta[task_index(t)] - beta_oracle(toy, t)) < 1e-14);
}

TEST_CASE("coinciding preparations force a full overlap") {
    NcModelQuad q{{1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {0.0, 1.0}};  // mu0 = mu+, mu1 = mu-
    OverlapReport o = overlaps(q);
    CHECK(o.beta[task_index(TaskLabel::T0p)] == doctest::Approx(1.0));
    CHECK(o.beta[task_index(TaskLabel::T1m)] == doctest::Approx(1.0));
    CHECK(o.beta[task_index(TaskLabel::T0m)] == doctest::Approx(0.0));
    CHECK_FALSE(o.supports_distinct[task_index(TaskLabel::T0p)]);
}

TEST_CASE("overlap sum and decomposition invariants on random quads") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> size(1, 16);
    for (int trial = 0; trial < 1000; ++trial) {
        NcModelQuad q = random_valid_quad(size(rng), rng);
        REQUIRE(validate_quad(q).passed);
        OverlapReport o = overlaps(q);
        double sum = 0.0;
        for (TaskLabel t : all_task_labels()) {
            int i = task_index(t);
            sum += o.beta[i];
            CHECK(std::abs(o.beta[i] - beta_oracle(q, t)) < 1e-12);
            double parts = o.beta_decomposition[i][0] + o.beta_decomposition[i][1] +
                           o.beta_decomposition[i][2] + o.beta_decomposition[i][3];
            CHECK(std::abs(parts - o.beta[i]) < 1e-12);
        }
        CHECK(sum >= 2.0 - 1e-10);
    }
}

TEST_CASE("subregion masses are reported for all nine regions") {
    auto [toy, xi] = toy_model_quad();
    OverlapReport o = overlaps(toy);
    for (const char* key : {"0+", "0-", "1+", "1-", "01+", "01-", "0+-", "1+-", "01+-"})
        CHECK(o.subregion_masses.count(key) == 1);
}

TEST_CASE("overlap lemma holds on the toy, vacuous, and random quads") {
    auto [toy, xi] = toy_model_quad();
    OverlapLemmaReport lem = check_overlap_lemma(toy);
    CHECK(lem.passed);
    for (const auto& p : lem.pairs) {
        CHECK(p.distinct);
        CHECK(p.partner_beta == doctest::Approx(0.5));
    }

    NcModelQuad flat{{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}};
    OverlapLemmaReport vac = check_overlap_lemma(flat);
    CHECK(vac.passed);
    for (const auto& p : vac.pairs) CHECK(p.vacuous);

    std::mt19937_64 rng(202);
    std::uniform_int_distribution<std::size_t> size(1, 12);
    for (int trial = 0; trial < 1000; ++trial) {
        NcModelQuad q = random_valid_quad(size(rng), rng);
        CHECK(check_overlap_lemma(q).passed);
    }
}

TEST_CASE("uniform responses and trivial ontic spaces give CE = 3") {
    auto [toy, xi] = toy_model_quad();
    CeReport uni = model_ce(toy, toy, ResponseFunction::uniform(toy.size(), toy.size()));
    CHECK(uni.total == doctest::Approx(3.0).epsilon(1e-14));

    NcModelQuad point{{1.0}, {1.0}, {1.0}, {1.0}};
    CeReport best = model_ce(point, point, optimal_responses(point, point));
    CHECK(best.total == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("optimal model CE respects the squared-overlap bound") {
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<std::size_t> size(1, 16);
    for (int trial = 0; trial < 300; ++trial) {
        NcModelQuad q = random_valid_quad(size(rng), rng);
        double total = model_ce(q, q, optimal_responses(q, q)).total;
        double beta_sum = 0.0;
        for (TaskLabel t : all_task_labels()) beta_sum += beta_pair_oracle(q, q, t);
        CHECK(total <= 4.0 - beta_sum * beta_sum / 16.0 + 1e-9);
        CHECK(total <= kNoncontextualBound + 1e-9);
    }
}

TEST_CASE("CE maximization finds the bound and never exceeds it") {
    MaximizeResult tiny = maximize_ce(1, 4, 7);
    CHECK(tiny.best_found == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(tiny.bound_respected);

    MaximizeResult r = maximize_ce(4, 8, 7);
    CHECK(r.best_found >= 3.75 - 1e-6);
    CHECK(r.best_found <= 3.75 + 1e-9);
    CHECK(r.bound_respected);
    // The search covers one model shared by both sources.
    REQUIRE(r.q_a.size() == r.q_b.size());
    for (std::size_t l = 0; l < r.q_a.size(); ++l) CHECK(r.q_a.mu0[l] == r.q_b.mu0[l]);
    CHECK_THROWS_AS(maximize_ce(0, 1, 1), std::invalid_argument);
}

TEST_CASE("derivation-chain certification is tight on the toy model") {
    auto [toy, xi] = toy_model_quad();
    CertificationReport c = certify_bound_steps(toy, toy, xi);
    CHECK(c.passed);
    CHECK(c.symmetric);
    CHECK(std::abs(c.ce_total - 3.75) < 1e-12);
    for (double s : c.per_task_slack) CHECK(std::abs(s) < 1e-12);
    CHECK(std::abs(c.total_slack) < 1e-12);
    CHECK(std::abs(c.cauchy_schwarz_slack_a) < 1e-12);
    CHECK(std::abs(c.beta_sum_slack_a) < 1e-12);
    CHECK(std::abs(c.final_slack) < 1e-12);
}

TEST_CASE("derivation-chain certification on degenerate and random quads") {
    NcModelQuad point{{1.0}, {1.0}, {1.0}, {1.0}};
    CertificationReport c =
        certify_bound_steps(point, point, optimal_responses(point, point));
    CHECK(c.passed);
    CHECK(std::abs(c.beta_sum_slack_a - 2.0) < 1e-12);  // sum beta = 4
    CHECK(std::abs(c.ce_total - 3.0) < 1e-12);
    CHECK(std::abs(c.final_slack) < 1e-12);  // 4 - 16/16 = 3, matched exactly

    std::mt19937_64 rng(404);
    std::uniform_int_distribution<std::size_t> size(1, 12);
    for (int trial = 0; trial < 100; ++trial) {
        NcModelQuad q = random_valid_quad(size(rng), rng);
        CertificationReport r = certify_bound_steps(q, q, optimal_responses(q, q));
        CHECK(r.passed);
        CHECK(r.min_slack >= -1e-9);
    }
}

TEST_CASE("model JSON round trip") {
    auto [toy, xi] = toy_model_quad();
    nlohmann::json j = model_to_json(toy, xi);
    CHECK(j.at("n") == 4);
    auto [q2, xi2] = model_from_json(j);
    REQUIRE(q2.size() == toy.size());
    for (std::size_t l = 0; l < toy.size(); ++l) {
        CHECK(q2.mu0[l] == doctest::Approx(toy.mu0[l]).epsilon(1e-15));
        CHECK(q2.mu_minus[l] == doctest::Approx(toy.mu_minus[l]).epsilon(1e-15));
    }
    CHECK(std::abs(model_ce(q2, q2, xi2).total - 3.75) < 1e-12);
}
