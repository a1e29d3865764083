#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

// Dense complex linear algebra and quantum primitives for two-qubit
// (and single-qubit) operators: kets, density operators, effects, POVMs,
// tensor products, Born-rule probabilities, Pauli conjugation and
// depolarizing noise. Everything is immutable after construction.

namespace exclusionlab {

using cplx = std::complex<double>;

struct Tolerances {
    double norm = 1e-10;
    double herm = 1e-10;
    double povm = 1e-10;
    double psd = 1e-9;
};

// Mutable process-wide tolerance set; the CLI may override it at startup.
Tolerances& tolerances();

class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, cplx(0.0, 0.0)) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    ComplexMatrix operator+(const ComplexMatrix& o) const;
    ComplexMatrix operator-(const ComplexMatrix& o) const;
    ComplexMatrix operator*(const ComplexMatrix& o) const;
    ComplexMatrix operator*(cplx s) const;

    ComplexMatrix adjoint() const;
    cplx trace() const;

    double max_abs_diff(const ComplexMatrix& o) const;
    bool approx_equal(const ComplexMatrix& o, double tol) const;
    bool is_hermitian(double tol) const;

private:
    std::size_t rows_, cols_;
    std::vector<cplx> a_;
};

// Kronecker product, row index = r_a * rows_b + r_b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Eigenvalues of a Hermitian matrix, ascending. Cyclic Jacobi sweeps;
// exact enough for the 2x2 and 4x4 operators used here.
std::vector<double> hermitian_eigenvalues(ComplexMatrix m);

// Partial traces of a two-qubit (4x4) operator; A is the left factor.
ComplexMatrix partial_trace_a(const ComplexMatrix& m);
ComplexMatrix partial_trace_b(const ComplexMatrix& m);

class Ket {
public:
    explicit Ket(std::vector<cplx> amplitudes);

    std::size_t dim() const { return amp_.size(); }
    const std::vector<cplx>& amplitudes() const { return amp_; }

    ComplexMatrix projector() const;

private:
    std::vector<cplx> amp_;
};

Ket tensor(const Ket& a, const Ket& b);
cplx inner(const Ket& a, const Ket& b);

Ket ket0();
Ket ket1();
Ket ket_plus();
Ket ket_minus();

class DensityOperator {
public:
    explicit DensityOperator(ComplexMatrix m);
    static DensityOperator pure(const Ket& k);

    std::size_t dim() const { return m_.rows(); }
    const ComplexMatrix& matrix() const { return m_; }

private:
    ComplexMatrix m_;
};

class Effect {
public:
    explicit Effect(ComplexMatrix m);
    static Effect pure(const Ket& k);
    static Effect identity(std::size_t dim);

    std::size_t dim() const { return m_.rows(); }
    const ComplexMatrix& matrix() const { return m_; }

private:
    ComplexMatrix m_;
};

class Povm {
public:
    explicit Povm(std::vector<Effect> effects);

    std::size_t size() const { return effects_.size(); }
    const Effect& operator[](std::size_t i) const { return effects_[i]; }
    const std::vector<Effect>& effects() const { return effects_; }

private:
    std::vector<Effect> effects_;
};

// real(tr[E rho]), clamped to [0,1] when within psd tolerance of the
// interval; anything further out signals invalid inputs.
double born_probability(const Effect& e, const DensityOperator& rho);

enum class PauliPair { ZZ, XX, YY };

// U m U^dag with U the indicated two-qubit Pauli tensor product.
ComplexMatrix pauli_conjugate(const ComplexMatrix& m, PauliPair p);

enum class NoiseMode { Global, PerQubit };

// Global: v*rho + (1-v)*I/d. PerQubit: independent single-qubit
// depolarizing channels on each tensor factor of a 4x4 input.
DensityOperator depolarize(const DensityOperator& rho, double visibility, NoiseMode mode);

}  // namespace exclusionlab
