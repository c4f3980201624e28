#include "vqs/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace vqs {

namespace {

Eigen::MatrixXcd to_eigen(const CMatrix& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    return out;
}

CMatrix from_eigen(const Eigen::MatrixXcd& m) {
    CMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    return out;
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("CMatrix: entry count does not match shape");
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
    return m;
}

CMatrix CMatrix::dagger() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("CMatrix: shape mismatch in product");
    CMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex a = (*this)(i, k);
            if (a == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

CMatrix CMatrix::operator+(const CMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("CMatrix: shape mismatch in sum");
    CMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
}

CMatrix CMatrix::operator-(const CMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("CMatrix: shape mismatch in difference");
    CMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
    return out;
}

CMatrix CMatrix::operator*(Complex scalar) const {
    CMatrix out = *this;
    for (auto& v : out.data_) v *= scalar;
    return out;
}

std::vector<Complex> CMatrix::apply(const std::vector<Complex>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("CMatrix: vector length mismatch");
    std::vector<Complex> out(rows_, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

bool CMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

bool CMatrix::is_unitary(double tol) const {
    if (rows_ != cols_) return false;
    return max_abs_diff(*this * dagger(), identity(rows_)) < tol;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("max_abs_diff: shape mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    return worst;
}

double max_abs(const CMatrix& a) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j)));
    return worst;
}

EighResult eigh(const CMatrix& hermitian) {
    if (!hermitian.is_hermitian(1e-10)) throw std::invalid_argument("eigh: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(hermitian));
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigh: eigendecomposition failed");
    EighResult res;
    res.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    res.vectors = from_eigen(solver.eigenvectors());
    return res;
}

CMatrix expm_hermitian(const CMatrix& hermitian, Complex z) {
    const EighResult eig = eigh(hermitian);
    const std::size_t n = hermitian.rows();
    CMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex phase = std::exp(z * eig.values[k]);
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = eig.vectors(i, k) * phase;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.vectors(j, k));
        }
    }
    return out;
}

std::vector<double> RealMatrix::apply(const std::vector<double>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("RealMatrix: vector length mismatch");
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

}  // namespace vqs
