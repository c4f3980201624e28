#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace vqs {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// Small dense complex matrix, row-major. Sized for gate matrices and
// desk-scale observables (dim = 2^n with n <= ~12), not for large linear
// algebra workloads.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}
    CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static CMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Complex>& data() const { return data_; }

    CMatrix dagger() const;

    CMatrix operator*(const CMatrix& rhs) const;
    CMatrix operator+(const CMatrix& rhs) const;
    CMatrix operator-(const CMatrix& rhs) const;
    CMatrix operator*(Complex scalar) const;

    std::vector<Complex> apply(const std::vector<Complex>& v) const;

    bool is_hermitian(double tol = 1e-12) const;
    bool is_unitary(double tol = 1e-12) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix commutator(const CMatrix& a, const CMatrix& b);

// Largest entrywise |a_ij - b_ij|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs(const CMatrix& a);

// Eigendecomposition of a Hermitian matrix: columns of `vectors` are the
// orthonormal eigenvectors matching `values`.
struct EighResult {
    std::vector<double> values;
    CMatrix vectors;
};
EighResult eigh(const CMatrix& hermitian);

// exp(z * H) for Hermitian H and complex scalar z, computed as
// V diag(exp(z * lambda_k)) V^dagger.
CMatrix expm_hermitian(const CMatrix& hermitian, Complex z);

// Small dense real matrix, row-major. Used by the classical baselines and
// the closed-form perceptron fit.
class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const double& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<double> apply(const std::vector<double>& v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace vqs
