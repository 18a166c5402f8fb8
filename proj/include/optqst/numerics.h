// Copyright 2026 The optqst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef _OPTQST_NUMERICS_H
#define _OPTQST_NUMERICS_H

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace optqst {

using Complex = std::complex<double>;
using RealVector = std::vector<double>;
using ComplexVector = std::vector<Complex>;

template <typename T>
inline constexpr bool is_complex_v = std::is_same_v<T, Complex>;

inline double conj_of(double v) {
    return v;
}
inline Complex conj_of(Complex v) {
    return std::conj(v);
}

/// Dense row-major matrix over double or std::complex<double>.
template <typename T>
class Matrix {
   public:
    using value_type = T;

    Matrix() = default;
    Matrix(size_t rows, size_t cols, T fill = T{}) : rows_(rows), cols_(cols), entries_(rows * cols, fill) {
    }
    Matrix(std::initializer_list<std::initializer_list<T>> init);

    static Matrix identity(size_t n);
    static Matrix diagonal(std::span<const T> diag);
    static Matrix from_rows(size_t rows, size_t cols, std::vector<T> entries);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }

    T &operator()(size_t r, size_t c) {
        return entries_[r * cols_ + c];
    }
    const T &operator()(size_t r, size_t c) const {
        return entries_[r * cols_ + c];
    }

    std::span<const T> entries() const {
        return entries_;
    }
    std::span<T> entries() {
        return entries_;
    }

    std::vector<T> row(size_t r) const;
    std::vector<T> col(size_t c) const;
    void set_col(size_t c, std::span<const T> values);

    Matrix transpose() const;
    /// Conjugate transpose (plain transpose for real matrices).
    Matrix adjoint() const;

    Matrix &operator+=(const Matrix &other);
    Matrix &operator-=(const Matrix &other);
    Matrix &operator*=(T scalar);

    bool operator==(const Matrix &other) const = default;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<T> entries_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;

template <typename T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T> &b) {
    a += b;
    return a;
}
template <typename T>
Matrix<T> operator-(Matrix<T> a, const Matrix<T> &b) {
    a -= b;
    return a;
}
template <typename T>
Matrix<T> operator*(Matrix<T> a, T scalar) {
    a *= scalar;
    return a;
}
template <typename T>
Matrix<T> operator*(T scalar, Matrix<T> a) {
    a *= scalar;
    return a;
}
inline ComplexMatrix operator*(ComplexMatrix a, double scalar) {
    a *= Complex(scalar);
    return a;
}
inline ComplexMatrix operator*(double scalar, ComplexMatrix a) {
    a *= Complex(scalar);
    return a;
}

template <typename T>
Matrix<T> operator*(const Matrix<T> &a, const Matrix<T> &b);
template <typename T>
std::vector<T> operator*(const Matrix<T> &a, std::span<const T> v);
template <typename T>
std::vector<T> operator*(const Matrix<T> &a, const std::vector<T> &v) {
    return a * std::span<const T>(v);
}

/// Kronecker product, shape (a.rows*b.rows) x (a.cols*b.cols).
template <typename T>
Matrix<T> kron(const Matrix<T> &a, const Matrix<T> &b);
ComplexVector kron(std::span<const Complex> a, std::span<const Complex> b);

template <typename T>
T trace(const Matrix<T> &m);

ComplexMatrix to_complex(const RealMatrix &m);
RealMatrix real_part(const ComplexMatrix &m);
RealMatrix imag_part(const ComplexMatrix &m);
bool is_real(const ComplexMatrix &m, double tol = 0.0);

/// |a><b|
ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);
/// <a|b>, conjugating the first argument.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double inner(std::span<const double> a, std::span<const double> b);

double norm2(std::span<const double> v);
double norm2(std::span<const Complex> v);

template <typename T>
double max_abs_diff(const Matrix<T> &a, const Matrix<T> &b);

/// True iff every |m(i,j) - conj(m(j,i))| <= tol.
bool is_hermitian(const ComplexMatrix &m, double tol = 1e-12);

struct SvdConvergenceError : std::runtime_error {
    size_t sweeps;
    explicit SvdConvergenceError(size_t sweeps);
};

struct RankDeficientError : std::runtime_error {
    size_t rank;
    size_t cols;
    RankDeficientError(size_t rank, size_t cols);
};

/// Thin SVD: m = U diag(singular_values) V^H with U (rows x k), V (cols x k), k = min(rows, cols).
template <typename T>
struct SvdResult {
    RealVector singular_values;
    Matrix<T> left_vectors;
    Matrix<T> right_vectors;
    size_t sweeps = 0;

    Matrix<T> reconstruct() const;
};

inline constexpr size_t kJacobiSweepCap = 60;
inline constexpr double kJacobiTolerance = 1e-14;
/// Singular values below kRankTolerance * sigma_max count as zero.
inline constexpr double kRankTolerance = 1e-10;

/// One-sided (Hestenes) Jacobi SVD.
SvdResult<double> svd(const RealMatrix &m, size_t sweep_cap = kJacobiSweepCap);
/// Complex input with a nonzero imaginary part goes through the 2n x 2m real embedding.
SvdResult<Complex> svd(const ComplexMatrix &m, size_t sweep_cap = kJacobiSweepCap);

RealVector singular_values(const RealMatrix &m);
RealVector singular_values(const ComplexMatrix &m);

size_t numerical_rank(std::span<const double> sorted_singular_values);

template <typename T>
std::vector<T> least_squares_solve(const Matrix<T> &a, std::span<const T> b);

template <typename T>
double spectral_norm(const Matrix<T> &m);
template <typename T>
double frobenius_norm(const Matrix<T> &m);

/// Eigenvalues ascending; eigenvectors as columns.
struct SymmetricEigen {
    RealVector values;
    RealMatrix vectors;
};
SymmetricEigen symmetric_eigen(const RealMatrix &m);

struct HermitianEigen {
    RealVector values;
    std::vector<ComplexVector> vectors;
};
/// Orthonormal eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
HermitianEigen hermitian_eigen(const ComplexMatrix &m);

/// f(m) = sum_k f(lambda_k) |v_k><v_k| for Hermitian m.
ComplexMatrix hermitian_function(const ComplexMatrix &m, const std::function<double(double)> &f);

/// [[Re, -Im], [Im, Re]]
RealMatrix realify(const ComplexMatrix &m);

}  // namespace optqst

#endif
