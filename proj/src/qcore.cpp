#include "exclusionlab/qcore.hpp"

#include <algorithm>
#include <cmath>

namespace exclusionlab {

Tolerances& tolerances() {
    static Tolerances t;
    return t;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix shape mismatch in +");
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix shape mismatch in -");
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch in *");
    ComplexMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            cplx aik = (*this)(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

ComplexMatrix ComplexMatrix::operator*(cplx s) const {
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

cplx ComplexMatrix::trace() const {
    cplx t(0.0, 0.0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix shape mismatch in max_abs_diff");
    double d = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) d = std::max(d, std::abs(a_[i] - o.a_[i]));
    return d;
}

bool ComplexMatrix::approx_equal(const ComplexMatrix& o, double tol) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && max_abs_diff(o) <= tol;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ra = 0; ra < a.rows(); ++ra)
        for (std::size_t ca = 0; ca < a.cols(); ++ca) {
            cplx v = a(ra, ca);
            if (v == cplx(0.0, 0.0)) continue;
            for (std::size_t rb = 0; rb < b.rows(); ++rb)
                for (std::size_t cb = 0; cb < b.cols(); ++cb)
                    r(ra * b.rows() + rb, ca * b.cols() + cb) = v * b(rb, cb);
        }
    return r;
}

std::vector<double> hermitian_eigenvalues(ComplexMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues need a square matrix");
    const std::size_t n = m.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(m(p, q));
        if (off < 1e-32) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = std::abs(m(p, q));
                if (apq < 1e-300) continue;
                cplx phase = m(p, q) / apq;
                double app = m(p, p).real();
                double aqq = m(q, q).real();
                double tau = (aqq - app) / (2.0 * apq);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                // M <- J^dag M J with J(p,p)=J(q,q)=c, J(p,q)=s*phase,
                // J(q,p)=-s*conj(phase). Zeroes the (p,q) entry.
                for (std::size_t k = 0; k < n; ++k) {
                    cplx mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * std::conj(phase) * mkq;
                    m(k, q) = s * phase * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    cplx mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * phase * mqk;
                    m(q, k) = s * std::conj(phase) * mpk + c * mqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = m(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

ComplexMatrix partial_trace_a(const ComplexMatrix& m) {
    if (m.rows() != 4 || m.cols() != 4)
        throw std::invalid_argument("partial trace expects a 4x4 matrix");
    ComplexMatrix r(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t a = 0; a < 2; ++a) r(i, j) += m(2 * a + i, 2 * a + j);
    return r;
}

ComplexMatrix partial_trace_b(const ComplexMatrix& m) {
    if (m.rows() != 4 || m.cols() != 4)
        throw std::invalid_argument("partial trace expects a 4x4 matrix");
    ComplexMatrix r(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t b = 0; b < 2; ++b) r(i, j) += m(2 * i + b, 2 * j + b);
    return r;
}

Ket::Ket(std::vector<cplx> amplitudes) : amp_(std::move(amplitudes)) {
    double n2 = 0.0;
    for (const cplx& a : amp_) n2 += std::norm(a);
    if (std::abs(std::sqrt(n2) - 1.0) > tolerances().norm)
        throw std::invalid_argument("ket is not normalized");
}

ComplexMatrix Ket::projector() const {
    ComplexMatrix m(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) m(i, j) = amp_[i] * std::conj(amp_[j]);
    return m;
}

Ket tensor(const Ket& a, const Ket& b) {
    std::vector<cplx> amp(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            amp[i * b.dim() + j] = a.amplitudes()[i] * b.amplitudes()[j];
    return Ket(std::move(amp));
}

cplx inner(const Ket& a, const Ket& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("ket dimension mismatch");
    cplx s(0.0, 0.0);
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    return s;
}

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

Ket ket0() { return Ket({1.0, 0.0}); }
Ket ket1() { return Ket({0.0, 1.0}); }
Ket ket_plus() { return Ket({kInvSqrt2, kInvSqrt2}); }
Ket ket_minus() { return Ket({kInvSqrt2, -kInvSqrt2}); }

DensityOperator::DensityOperator(ComplexMatrix m) : m_(std::move(m)) {
    const Tolerances& tol = tolerances();
    if (!m_.is_hermitian(tol.herm))
        throw std::invalid_argument("density operator is not Hermitian");
    if (std::abs(m_.trace().real() - 1.0) > tol.norm || std::abs(m_.trace().imag()) > tol.norm)
        throw std::invalid_argument("density operator trace is not 1");
    std::vector<double> ev = hermitian_eigenvalues(m_);
    if (ev.front() < -tol.psd)
        throw std::invalid_argument("density operator has a negative eigenvalue");
}

DensityOperator DensityOperator::pure(const Ket& k) { return DensityOperator(k.projector()); }

Effect::Effect(ComplexMatrix m) : m_(std::move(m)) {
    const Tolerances& tol = tolerances();
    if (!m_.is_hermitian(tol.herm)) throw std::invalid_argument("effect is not Hermitian");
    std::vector<double> ev = hermitian_eigenvalues(m_);
    if (ev.front() < -tol.psd || ev.back() > 1.0 + tol.psd)
        throw std::invalid_argument("effect eigenvalues outside [0,1]");
}

Effect Effect::pure(const Ket& k) { return Effect(k.projector()); }
Effect Effect::identity(std::size_t dim) { return Effect(ComplexMatrix::identity(dim)); }

Povm::Povm(std::vector<Effect> effects) : effects_(std::move(effects)) {
    if (effects_.empty()) throw std::invalid_argument("POVM needs at least one effect");
    ComplexMatrix sum(effects_[0].dim(), effects_[0].dim());
    for (const Effect& e : effects_) sum = sum + e.matrix();
    if (!sum.approx_equal(ComplexMatrix::identity(effects_[0].dim()), tolerances().povm))
        throw std::invalid_argument("POVM effects do not sum to identity");
}

double born_probability(const Effect& e, const DensityOperator& rho) {
    if (e.dim() != rho.dim()) throw std::invalid_argument("effect/state dimension mismatch");
    cplx tr = (e.matrix() * rho.matrix()).trace();
    double p = tr.real();
    double psd = tolerances().psd;
    if (p < -psd || p > 1.0 + psd)
        throw std::domain_error("Born probability outside [0,1]: invalid inputs");
    return std::clamp(p, 0.0, 1.0);
}

ComplexMatrix pauli_conjugate(const ComplexMatrix& m, PauliPair p) {
    if (m.rows() != 4 || m.cols() != 4)
        throw std::invalid_argument("pauli_conjugate expects a 4x4 matrix");
    ComplexMatrix u(2, 2);
    switch (p) {
        case PauliPair::ZZ:
            u(0, 0) = 1.0;
            u(1, 1) = -1.0;
            break;
        case PauliPair::XX:
            u(0, 1) = 1.0;
            u(1, 0) = 1.0;
            break;
        case PauliPair::YY:
            u(0, 1) = cplx(0.0, -1.0);
            u(1, 0) = cplx(0.0, 1.0);
            break;
    }
    ComplexMatrix uu = tensor(u, u);
    return uu * m * uu.adjoint();
}

DensityOperator depolarize(const DensityOperator& rho, double visibility, NoiseMode mode) {
    if (visibility < 0.0 || visibility > 1.0)
        throw std::invalid_argument("visibility must lie in [0,1]");
    const double v = visibility;
    if (mode == NoiseMode::Global) {
        ComplexMatrix mixed = ComplexMatrix::identity(rho.dim()) * cplx(1.0 / rho.dim(), 0.0);
        return DensityOperator(rho.matrix() * cplx(v, 0.0) + mixed * cplx(1.0 - v, 0.0));
    }
    if (rho.dim() != 4)
        throw std::invalid_argument("per-qubit depolarizing expects a 4x4 state");
    ComplexMatrix i2 = ComplexMatrix::identity(2);
    ComplexMatrix ra = partial_trace_b(rho.matrix());
    ComplexMatrix rb = partial_trace_a(rho.matrix());
    // (D_v (x) D_v)(rho) expanded in powers of v.
    ComplexMatrix out = rho.matrix() * cplx(v * v, 0.0)
        + tensor(ra, i2 * cplx(0.5, 0.0)) * cplx(v * (1.0 - v), 0.0)
        + tensor(i2 * cplx(0.5, 0.0), rb) * cplx(v * (1.0 - v), 0.0)
        + ComplexMatrix::identity(4) * cplx((1.0 - v) * (1.0 - v) / 4.0, 0.0);
    return DensityOperator(std::move(out));
}

}  // namespace exclusionlab
