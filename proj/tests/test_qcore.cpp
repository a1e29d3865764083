#include <doctest.h>

#include <cmath>
#include <random>

#include "exclusionlab/qcore.hpp"

using namespace exclusionlab;

namespace {

Ket random_ket(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> a(dim);
    double norm2 = 0.0;
    for (cplx& c : a) {
        c = cplx(g(rng), g(rng));
        norm2 += std::norm(c);
    }
    for (cplx& c : a) c /= std::sqrt(norm2);
    return Ket(a);
}

DensityOperator random_state(std::size_t dim, std::mt19937_64& rng) {
    // Random rank-2 mixture of pure states.
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double p = u(rng);
    ComplexMatrix m = random_ket(dim, rng).projector() * cplx(p, 0.0) +
                      random_ket(dim, rng).projector() * cplx(1.0 - p, 0.0);
    return DensityOperator(m);
}

}  // namespace

TEST_CASE("tensor product layout and identities") {
    ComplexMatrix i2 = ComplexMatrix::identity(2);
    ComplexMatrix i4 = tensor(i2, i2);
    CHECK(i4.approx_equal(ComplexMatrix::identity(4), 0.0));

    ComplexMatrix p00 = tensor(ket0().projector(), ket0().projector());
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            CHECK(std::abs(p00(r, c) - (r == 0 && c == 0 ? 1.0 : 0.0)) < 1e-15);

    // |0><0| (x) |+><+| fills the top-left 2x2 block with 1/2.
    ComplexMatrix p0p = tensor(ket0().projector(), ket_plus().projector());
    CHECK(std::abs(p0p(0, 0).real() - 0.5) < 1e-15);
    CHECK(std::abs(p0p(0, 1).real() - 0.5) < 1e-15);
    CHECK(std::abs(p0p(2, 2)) < 1e-15);
}

TEST_CASE("kets validate their norm") {
    CHECK_THROWS_AS(Ket({cplx(1.0, 0.0), cplx(1.0, 0.0)}), std::invalid_argument);
    CHECK_NOTHROW(Ket({cplx(std::sqrt(0.5), 0.0), cplx(0.0, std::sqrt(0.5))}));
}

TEST_CASE("hermitian eigenvalues on known operators") {
    std::vector<double> ev = hermitian_eigenvalues(ket_plus().projector());
    REQUIRE(ev.size() == 2);
    CHECK(std::abs(ev[0]) < 1e-12);
    CHECK(std::abs(ev[1] - 1.0) < 1e-12);

    ComplexMatrix m(2, 2);  // Pauli Y: eigenvalues -1, +1
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    ev = hermitian_eigenvalues(m);
    CHECK(std::abs(ev[0] + 1.0) < 1e-12);
    CHECK(std::abs(ev[1] - 1.0) < 1e-12);
}

TEST_CASE("partial traces of product operators factorize") {
    ComplexMatrix a = ket_plus().projector();
    ComplexMatrix b = ket1().projector();
    ComplexMatrix ab = tensor(a, b);
    CHECK(partial_trace_b(ab).approx_equal(a, 1e-14));
    CHECK(partial_trace_a(ab).approx_equal(b, 1e-14));
}

TEST_CASE("born probability basics and clamping") {
    Effect id = Effect::identity(2);
    DensityOperator rho = DensityOperator::pure(ket0());
    CHECK(born_probability(id, rho) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(born_probability(Effect::pure(ket1()), rho) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(born_probability(Effect::pure(ket_plus()), rho) ==
          doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(born_probability(Effect::identity(4), rho), std::invalid_argument);
}

TEST_CASE("born probability is linear in the state") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        DensityOperator r1 = random_state(4, rng);
        DensityOperator r2 = random_state(4, rng);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double p = u(rng);
        DensityOperator mix(r1.matrix() * cplx(p, 0.0) + r2.matrix() * cplx(1.0 - p, 0.0));
        Effect e = Effect::pure(random_ket(4, rng));
        double lhs = born_probability(e, mix);
        double rhs = p * born_probability(e, r1) + (1.0 - p) * born_probability(e, r2);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("effects reject invalid operators") {
    ComplexMatrix m = ComplexMatrix::identity(2) * cplx(1.5, 0.0);
    CHECK_THROWS_AS(Effect{m}, std::invalid_argument);
    ComplexMatrix nh(2, 2);
    nh(0, 1) = cplx(1.0, 0.0);  // not Hermitian
    CHECK_THROWS_AS(Effect{nh}, std::invalid_argument);
}

TEST_CASE("povm completeness is enforced") {
    std::vector<Effect> good = {Effect::pure(ket0()), Effect::pure(ket1())};
    CHECK_NOTHROW(Povm{good});
    std::vector<Effect> bad = {Effect::pure(ket0()), Effect::pure(ket_plus())};
    CHECK_THROWS_AS(Povm{bad}, std::invalid_argument);
}

TEST_CASE("pauli conjugation acts as expected and is an involution") {
    ComplexMatrix rho0p = tensor(ket0().projector(), ket_plus().projector());
    ComplexMatrix rho0m = tensor(ket0().projector(), ket_minus().projector());
    CHECK(pauli_conjugate(rho0p, PauliPair::ZZ).approx_equal(rho0m, 1e-14));

    ComplexMatrix rho00 = tensor(ket0().projector(), ket0().projector());
    CHECK(pauli_conjugate(rho00, PauliPair::ZZ).approx_equal(rho00, 1e-14));
    ComplexMatrix rhopp = tensor(ket_plus().projector(), ket_plus().projector());
    CHECK(pauli_conjugate(rhopp, PauliPair::XX).approx_equal(rhopp, 1e-14));

    std::mt19937_64 rng(5);
    for (PauliPair p : {PauliPair::ZZ, PauliPair::XX, PauliPair::YY}) {
        ComplexMatrix m = random_state(4, rng).matrix();
        CHECK(pauli_conjugate(pauli_conjugate(m, p), p).approx_equal(m, 1e-12));
    }
}

TEST_CASE("depolarizing noise endpoints") {
    DensityOperator rho(tensor(ket0().projector(), ket0().projector()));
    CHECK(depolarize(rho, 1.0, NoiseMode::Global).matrix().approx_equal(rho.matrix(), 1e-14));
    CHECK(depolarize(rho, 1.0, NoiseMode::PerQubit).matrix().approx_equal(rho.matrix(), 1e-14));

    ComplexMatrix quarter = ComplexMatrix::identity(4) * cplx(0.25, 0.0);
    CHECK(depolarize(rho, 0.0, NoiseMode::Global).matrix().approx_equal(quarter, 1e-14));
    CHECK(depolarize(rho, 0.0, NoiseMode::PerQubit).matrix().approx_equal(quarter, 1e-14));

    ComplexMatrix half = rho.matrix() * cplx(0.5, 0.0) + quarter * cplx(0.5, 0.0);
    CHECK(depolarize(rho, 0.5, NoiseMode::Global).matrix().approx_equal(half, 1e-14));

    CHECK_THROWS_AS(depolarize(rho, 1.5, NoiseMode::Global), std::invalid_argument);
    CHECK_THROWS_AS(depolarize(rho, -0.1, NoiseMode::PerQubit), std::invalid_argument);
}

TEST_CASE("depolarizing noise preserves state validity") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        DensityOperator rho = random_state(4, rng);
        double v = u(rng);
        NoiseMode mode = trial % 2 == 0 ? NoiseMode::Global : NoiseMode::PerQubit;
        // The DensityOperator constructor revalidates Hermiticity, unit
        // trace and positivity; surviving it is the property under test.
        DensityOperator out = depolarize(rho, v, mode);
        CHECK(std::abs(out.matrix().trace().real() - 1.0) < 1e-12);
    }
}

TEST_CASE("per-qubit depolarizing equals two independent local channels") {
    // On product states the channel must factorize.
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix a = random_state(2, rng).matrix();
        ComplexMatrix b = random_state(2, rng).matrix();
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double v = u(rng);
        ComplexMatrix i2h = ComplexMatrix::identity(2) * cplx(0.5, 0.0);
        ComplexMatrix da = a * cplx(v, 0.0) + i2h * cplx(1.0 - v, 0.0);
        ComplexMatrix db = b * cplx(v, 0.0) + i2h * cplx(1.0 - v, 0.0);
        DensityOperator out = depolarize(DensityOperator(tensor(a, b)), v, NoiseMode::PerQubit);
        CHECK(out.matrix().approx_equal(tensor(da, db), 1e-12));
    }
}
