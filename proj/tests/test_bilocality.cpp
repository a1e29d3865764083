#include <doctest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "exclusionlab/bilocality.hpp"

using namespace exclusionlab;

namespace {

ClassicalStrategy random_strategy(std::size_t card, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> bit(0, 1);
    ClassicalStrategy s;
    auto fill_wing = [&](std::vector<double>& w, std::vector<std::array<int, 2>>& f) {
        double sum = 0.0;
        for (std::size_t l = 0; l < card; ++l) {
            w.push_back(u(rng) + 1e-3);
            sum += w.back();
            f.push_back({bit(rng), bit(rng)});
        }
        for (double& x : w) x /= sum;
    };
    fill_wing(s.weights_a, s.f_a);
    fill_wing(s.weights_b, s.f_b);
    s.g.assign(4 * card * card * 4, 0.0);
    for (std::size_t row = 0; row < 4 * card * card; ++row) {
        double sum = 0.0;
        std::array<double, 4> raw;
        for (int k = 0; k < 4; ++k) {
            raw[k] = u(rng);
            sum += raw[k];
        }
        for (int k = 0; k < 4; ++k) s.g[row * 4 + k] = raw[k] / sum;
    }
    s.validate();
    return s;
}

}  // namespace

TEST_CASE("steering produces the advertised conditional states") {
    // Z-basis outcomes steer to |0>, |1>; X-basis outcomes to |+>, |->.
    CHECK(steered_state(0, 0).matrix().approx_equal(ket0().projector(), 1e-12));
    CHECK(steered_state(0, 1).matrix().approx_equal(ket1().projector(), 1e-12));
    CHECK(steered_state(1, 0).matrix().approx_equal(ket_plus().projector(), 1e-12));
    CHECK(steered_state(1, 1).matrix().approx_equal(ket_minus().projector(), 1e-12));
}

TEST_CASE("quantum behavior is a valid no-signaling behavior with fair outcomes") {
    Behavior b = quantum_behavior(build_all_tasks());
    CHECK(b.provenance == Behavior::Provenance::Quantum);
    CHECK(b.normalization_error() <= 1e-10);
    CHECK(b.no_signaling_error() <= 1e-10);
    // Each side's outcome marginal is 1/2 regardless of basis.
    for (int sa = 0; sa < 2; ++sa)
        for (int sb = 0; sb < 2; ++sb)
            for (int xa = 0; xa < 2; ++xa) {
                double marg = 0.0;
                for (int xb = 0; xb < 2; ++xb)
                    for (int y = 1; y <= 4; ++y)
                        marg += b.at(sa, sb, TaskLabel::T0p, xa, xb, y);
                CHECK(marg == doctest::Approx(0.5).epsilon(1e-12));
            }
}

TEST_CASE("behavior-level CE of the quantum behavior is maximal") {
    Behavior b = quantum_behavior(build_all_tasks());
    CeReport r = ce_from_behavior(b);
    CHECK(std::abs(r.total - 4.0) <= 1e-12);
    CHECK(std::abs(r.total - ce_total(build_all_tasks()).total) <= 1e-12);
}

TEST_CASE("the transported stabilizer strategy scores 15/4") {
    ClassicalStrategy toy = toy_strategy();
    toy.validate();
    Behavior b = strategy_behavior(toy);
    CHECK(b.provenance == Behavior::Provenance::Classical);
    CHECK(b.normalization_error() <= 1e-12);
    CHECK(b.no_signaling_error() <= 1e-12);
    CHECK(ce_from_behavior(b).total == doctest::Approx(3.75).epsilon(1e-14));
}

TEST_CASE("random classical strategies yield valid no-signaling behaviors") {
    std::mt19937_64 rng(909);
    std::uniform_int_distribution<std::size_t> card(1, 5);
    for (int trial = 0; trial < 25; ++trial) {
        Behavior b = strategy_behavior(random_strategy(card(rng), rng));
        CHECK(b.normalization_error() <= 1e-12);
        CHECK(b.no_signaling_error() <= 1e-12);
    }
}

TEST_CASE("classical search matches the analytic per-cardinality optima") {
    ClassicalSearchResult c1 = best_classical_ce(1, 1, 4, 11);
    CHECK(c1.best_total == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(c1.bound_respected);

    ClassicalSearchResult c4 = best_classical_ce(4, 4, 8, 11);
    CHECK(std::abs(c4.best_total - 3.75) <= 1e-9);
    CHECK(c4.bound_respected);

    CHECK_THROWS_AS(best_classical_ce(0, 4, 1, 1), std::invalid_argument);
}

TEST_CASE("classical search never exceeds 15/4") {
    for (std::size_t card : {2, 3, 6, 8}) {
        ClassicalSearchResult r = best_classical_ce(card, card, 6, 17 + card);
        CHECK(r.best_total <= kNoncontextualBound + 1e-9);
        CHECK(r.bound_respected);
        // The reported strategy really scores what the search claims.
        CHECK(ce_from_behavior(strategy_behavior(r.strategy)).total ==
              doctest::Approx(r.best_total).epsilon(1e-9));
    }
}

TEST_CASE("quantum support forbids exactly the mapped exclusion events") {
    SupportPattern sp = support_of(quantum_behavior(build_all_tasks()));
    for (TaskLabel t : all_task_labels())
        for (int y = 1; y <= 4; ++y) {
            SourceCoordinates c = index_map(y, t);
            CHECK_FALSE(sp.possible[Behavior::index(c.s_a, c.s_b, t, c.x_a, c.x_b, y)]);
        }
    // Normalization: every coordinate cell keeps at least one outcome.
    for (int sa = 0; sa < 2; ++sa)
        for (int sb = 0; sb < 2; ++sb)
            for (TaskLabel t : all_task_labels())
                for (int xa = 0; xa < 2; ++xa)
                    for (int xb = 0; xb < 2; ++xb) {
                        bool any = false;
                        for (int y = 1; y <= 4; ++y)
                            any = any || sp.possible[Behavior::index(sa, sb, t, xa, xb, y)];
                        CHECK(any);
                    }
}

TEST_CASE("possibilistic analysis rejects the quantum support") {
    SupportPattern sp = support_of(quantum_behavior(build_all_tasks()));
    PossibilisticVerdict v = possibilistic_feasibility(sp);
    CHECK(v.infeasible);
    CHECK(v.witness_f_a == std::array<int, 2>{0, 0});
    CHECK(v.witness_f_b == std::array<int, 2>{0, 0});
    CHECK(v.witness_task == TaskLabel::T0p);
    // The witness triple has an empty allowed-outcome set.
    CHECK(v.allowed[0][0][task_index(v.witness_task)] == 0u);
}

TEST_CASE("possibilistic analysis stays undecided on realizable supports") {
    Behavior uniform;
    uniform.p.fill(1.0 / 16.0);
    CHECK_FALSE(possibilistic_feasibility(support_of(uniform)).infeasible);

    CHECK_FALSE(possibilistic_feasibility(support_of(strategy_behavior(toy_strategy())))
                    .infeasible);

    // Soundness: no classically generated support may be flagged.
    std::mt19937_64 rng(313);
    std::uniform_int_distribution<std::size_t> card(1, 4);
    for (int trial = 0; trial < 50; ++trial) {
        Behavior b = strategy_behavior(random_strategy(card(rng), rng));
        CHECK_FALSE(possibilistic_feasibility(support_of(b)).infeasible);
    }
}

TEST_CASE("strategy JSON round trip") {
    ClassicalStrategy toy = toy_strategy();
    ClassicalStrategy back = ClassicalStrategy::from_json(toy.to_json());
    back.validate();
    CHECK(back.card_a() == toy.card_a());
    CHECK(back.f_b == toy.f_b);
    CHECK(ce_from_behavior(strategy_behavior(back)).total ==
          doctest::Approx(3.75).epsilon(1e-14));
}
