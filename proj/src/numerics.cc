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

#include "optqst/numerics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace optqst {

template <typename T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto &r : init) {
        if (r.size() != cols_) {
            throw std::invalid_argument("ragged matrix initializer");
        }
        entries_.insert(entries_.end(), r.begin(), r.end());
    }
}

template <typename T>
Matrix<T> Matrix<T>::identity(size_t n) {
    Matrix<T> m(n, n);
    for (size_t k = 0; k < n; k++) {
        m(k, k) = T(1);
    }
    return m;
}

template <typename T>
Matrix<T> Matrix<T>::diagonal(std::span<const T> diag) {
    Matrix<T> m(diag.size(), diag.size());
    for (size_t k = 0; k < diag.size(); k++) {
        m(k, k) = diag[k];
    }
    return m;
}

template <typename T>
Matrix<T> Matrix<T>::from_rows(size_t rows, size_t cols, std::vector<T> entries) {
    if (entries.size() != rows * cols) {
        throw std::invalid_argument(
            "matrix entry count " + std::to_string(entries.size()) + " != " + std::to_string(rows) + "*" +
            std::to_string(cols));
    }
    Matrix<T> m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.entries_ = std::move(entries);
    return m;
}

template <typename T>
std::vector<T> Matrix<T>::row(size_t r) const {
    return std::vector<T>(entries_.begin() + r * cols_, entries_.begin() + (r + 1) * cols_);
}

template <typename T>
std::vector<T> Matrix<T>::col(size_t c) const {
    std::vector<T> out(rows_);
    for (size_t r = 0; r < rows_; r++) {
        out[r] = (*this)(r, c);
    }
    return out;
}

template <typename T>
void Matrix<T>::set_col(size_t c, std::span<const T> values) {
    for (size_t r = 0; r < rows_; r++) {
        (*this)(r, c) = values[r];
    }
}

template <typename T>
Matrix<T> Matrix<T>::transpose() const {
    Matrix<T> out(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

template <typename T>
Matrix<T> Matrix<T>::adjoint() const {
    Matrix<T> out(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            out(c, r) = conj_of((*this)(r, c));
        }
    }
    return out;
}

template <typename T>
Matrix<T> &Matrix<T>::operator+=(const Matrix<T> &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix shape mismatch in +");
    }
    for (size_t k = 0; k < entries_.size(); k++) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

template <typename T>
Matrix<T> &Matrix<T>::operator-=(const Matrix<T> &other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("matrix shape mismatch in -");
    }
    for (size_t k = 0; k < entries_.size(); k++) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

template <typename T>
Matrix<T> &Matrix<T>::operator*=(T scalar) {
    for (auto &e : entries_) {
        e *= scalar;
    }
    return *this;
}

template <typename T>
Matrix<T> operator*(const Matrix<T> &a, const Matrix<T> &b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument(
            "matrix product shape mismatch: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " * " +
            std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    Matrix<T> out(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t k = 0; k < a.cols(); k++) {
            T aik = a(i, k);
            if (aik == T{}) {
                continue;
            }
            for (size_t j = 0; j < b.cols(); j++) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

template <typename T>
std::vector<T> operator*(const Matrix<T> &a, std::span<const T> v) {
    if (a.cols() != v.size()) {
        throw std::invalid_argument("matrix-vector shape mismatch");
    }
    std::vector<T> out(a.rows());
    for (size_t i = 0; i < a.rows(); i++) {
        T acc{};
        for (size_t k = 0; k < a.cols(); k++) {
            acc += a(i, k) * v[k];
        }
        out[i] = acc;
    }
    return out;
}

template <typename T>
Matrix<T> kron(const Matrix<T> &a, const Matrix<T> &b) {
    Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); i++) {
        for (size_t j = 0; j < a.cols(); j++) {
            T aij = a(i, j);
            for (size_t k = 0; k < b.rows(); k++) {
                for (size_t l = 0; l < b.cols(); l++) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

ComplexVector kron(std::span<const Complex> a, std::span<const Complex> b) {
    ComplexVector out;
    out.reserve(a.size() * b.size());
    for (auto x : a) {
        for (auto y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

template <typename T>
T trace(const Matrix<T> &m) {
    T acc{};
    for (size_t k = 0; k < std::min(m.rows(), m.cols()); k++) {
        acc += m(k, k);
    }
    return acc;
}

ComplexMatrix to_complex(const RealMatrix &m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (size_t k = 0; k < m.entries().size(); k++) {
        out.entries()[k] = m.entries()[k];
    }
    return out;
}

RealMatrix real_part(const ComplexMatrix &m) {
    RealMatrix out(m.rows(), m.cols());
    for (size_t k = 0; k < m.entries().size(); k++) {
        out.entries()[k] = m.entries()[k].real();
    }
    return out;
}

RealMatrix imag_part(const ComplexMatrix &m) {
    RealMatrix out(m.rows(), m.cols());
    for (size_t k = 0; k < m.entries().size(); k++) {
        out.entries()[k] = m.entries()[k].imag();
    }
    return out;
}

bool is_real(const ComplexMatrix &m, double tol) {
    return std::all_of(m.entries().begin(), m.entries().end(), [&](Complex z) {
        return std::abs(z.imag()) <= tol;
    });
}

ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b) {
    ComplexMatrix out(a.size(), b.size());
    for (size_t i = 0; i < a.size(); i++) {
        for (size_t j = 0; j < b.size(); j++) {
            out(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return out;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("inner product length mismatch");
    }
    Complex acc = 0;
    for (size_t k = 0; k < a.size(); k++) {
        acc += std::conj(a[k]) * b[k];
    }
    return acc;
}

double inner(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("inner product length mismatch");
    }
    double acc = 0;
    for (size_t k = 0; k < a.size(); k++) {
        acc += a[k] * b[k];
    }
    return acc;
}

double norm2(std::span<const double> v) {
    double scale = 0;
    for (double x : v) {
        scale = std::max(scale, std::abs(x));
    }
    if (scale == 0) {
        return 0;
    }
    double acc = 0;
    for (double x : v) {
        acc += (x / scale) * (x / scale);
    }
    return scale * std::sqrt(acc);
}

double norm2(std::span<const Complex> v) {
    double acc = 0;
    for (auto z : v) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

template <typename T>
double max_abs_diff(const Matrix<T> &a, const Matrix<T> &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("matrix shape mismatch in max_abs_diff");
    }
    double worst = 0;
    for (size_t k = 0; k < a.entries().size(); k++) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    if (!m.is_square()) {
        return false;
    }
    for (size_t i = 0; i < m.rows(); i++) {
        for (size_t j = i; j < m.cols(); j++) {
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) {
                return false;
            }
        }
    }
    return true;
}

SvdConvergenceError::SvdConvergenceError(size_t sweeps)
    : std::runtime_error("Jacobi SVD did not converge after " + std::to_string(sweeps) + " sweeps"), sweeps(sweeps) {
}

RankDeficientError::RankDeficientError(size_t rank, size_t cols)
    : std::runtime_error(
          "matrix is rank deficient: numerical rank " + std::to_string(rank) + " < " + std::to_string(cols) +
          " columns"),
      rank(rank),
      cols(cols) {
}

template <typename T>
Matrix<T> SvdResult<T>::reconstruct() const {
    Matrix<T> scaled = left_vectors;
    for (size_t r = 0; r < scaled.rows(); r++) {
        for (size_t c = 0; c < scaled.cols(); c++) {
            scaled(r, c) *= singular_values[c];
        }
    }
    return scaled * right_vectors.adjoint();
}

namespace {

// Fills in columns of q flagged in `missing` with unit vectors orthogonal to all other columns.
// Each one is the standard basis vector with the largest residual after projecting out the fixed columns.
template <typename T>
void complete_orthonormal_columns(Matrix<T> &q, const std::vector<bool> &missing) {
    size_t n = q.rows();
    for (size_t c = 0; c < q.cols(); c++) {
        if (!missing[c]) {
            continue;
        }
        std::vector<T> best;
        double best_len = 0;
        for (size_t candidate = 0; candidate < n; candidate++) {
            std::vector<T> v(n, T{});
            v[candidate] = T(1);
            // Two passes of Gram-Schmidt against every column already fixed.
            for (int pass = 0; pass < 2; pass++) {
                for (size_t o = 0; o < q.cols(); o++) {
                    if (o == c || (missing[o] && o > c)) {
                        continue;
                    }
                    T proj{};
                    for (size_t r = 0; r < n; r++) {
                        proj += conj_of(q(r, o)) * v[r];
                    }
                    for (size_t r = 0; r < n; r++) {
                        v[r] -= proj * q(r, o);
                    }
                }
            }
            double len = norm2(std::span<const T>(v));
            if (len > best_len) {
                best_len = len;
                best = std::move(v);
            }
        }
        if (best_len < 0.5 / std::sqrt(static_cast<double>(n))) {
            throw std::logic_error("cannot complete orthonormal basis");
        }
        for (auto &x : best) {
            x /= best_len;
        }
        q.set_col(c, best);
    }
}

SvdResult<double> svd_tall(const RealMatrix &m, size_t sweep_cap) {
    size_t rows = m.rows();
    size_t cols = m.cols();
    RealMatrix u = m;
    RealMatrix v = RealMatrix::identity(cols);

    size_t sweeps = 0;
    bool converged = cols < 2;
    while (!converged) {
        if (sweeps >= sweep_cap) {
            throw SvdConvergenceError(sweeps);
        }
        sweeps++;
        bool rotated = false;
        for (size_t p = 0; p + 1 < cols; p++) {
            for (size_t q = p + 1; q < cols; q++) {
                double alpha = 0;
                double beta = 0;
                double gamma = 0;
                for (size_t r = 0; r < rows; r++) {
                    double up = u(r, p);
                    double uq = u(r, q);
                    alpha += up * up;
                    beta += uq * uq;
                    gamma += up * uq;
                }
                if (gamma == 0 || std::abs(gamma) <= kJacobiTolerance * std::sqrt(alpha * beta)) {
                    continue;
                }
                rotated = true;
                double zeta = (beta - alpha) / (2 * gamma);
                double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
                double c = 1 / std::sqrt(1 + t * t);
                double s = c * t;
                for (size_t r = 0; r < rows; r++) {
                    double up = u(r, p);
                    double uq = u(r, q);
                    u(r, p) = c * up - s * uq;
                    u(r, q) = s * up + c * uq;
                }
                for (size_t r = 0; r < cols; r++) {
                    double vp = v(r, p);
                    double vq = v(r, q);
                    v(r, p) = c * vp - s * vq;
                    v(r, q) = s * vp + c * vq;
                }
            }
        }
        converged = !rotated;
    }

    RealVector norms(cols);
    for (size_t c = 0; c < cols; c++) {
        norms[c] = norm2(std::span<const double>(u.col(c)));
    }
    std::vector<size_t> order(cols);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return norms[a] > norms[b];
    });

    SvdResult<double> out;
    out.sweeps = sweeps;
    out.singular_values.resize(cols);
    out.left_vectors = RealMatrix(rows, cols);
    out.right_vectors = RealMatrix(cols, cols);
    double sigma_max = cols == 0 ? 0 : norms[order[0]];
    double floor = sigma_max * static_cast<double>(std::max(rows, cols)) * 1e-15;
    std::vector<bool> missing(cols, false);
    for (size_t k = 0; k < cols; k++) {
        size_t src = order[k];
        double sigma = norms[src];
        out.singular_values[k] = sigma;
        out.right_vectors.set_col(k, v.col(src));
        if (sigma > floor && sigma > 0) {
            auto col = u.col(src);
            for (auto &x : col) {
                x /= sigma;
            }
            out.left_vectors.set_col(k, col);
        } else {
            missing[k] = true;
        }
    }
    complete_orthonormal_columns(out.left_vectors, missing);
    return out;
}

}  // namespace

SvdResult<double> svd(const RealMatrix &m, size_t sweep_cap) {
    for (double x : m.entries()) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("svd input has a non-finite entry");
        }
    }
    if (m.rows() >= m.cols()) {
        return svd_tall(m, sweep_cap);
    }
    auto t = svd_tall(m.transpose(), sweep_cap);
    std::swap(t.left_vectors, t.right_vectors);
    return t;
}

RealMatrix realify(const ComplexMatrix &m) {
    RealMatrix out(2 * m.rows(), 2 * m.cols());
    for (size_t i = 0; i < m.rows(); i++) {
        for (size_t j = 0; j < m.cols(); j++) {
            double re = m(i, j).real();
            double im = m(i, j).imag();
            out(i, j) = re;
            out(i, j + m.cols()) = -im;
            out(i + m.rows(), j) = im;
            out(i + m.rows(), j + m.cols()) = re;
        }
    }
    return out;
}

namespace {

ComplexVector complexify(std::span<const double> v) {
    size_t n = v.size() / 2;
    ComplexVector out(n);
    for (size_t k = 0; k < n; k++) {
        out[k] = Complex(v[k], v[k + n]);
    }
    return out;
}

// Keeps `candidate` if it has a substantial component outside span(accepted); normalizes in place.
bool orthogonalize_against(ComplexVector &candidate, const std::vector<ComplexVector> &accepted) {
    double original = norm2(std::span<const Complex>(candidate));
    if (original == 0) {
        return false;
    }
    for (int pass = 0; pass < 2; pass++) {
        for (const auto &a : accepted) {
            Complex proj = inner(a, candidate);
            for (size_t k = 0; k < candidate.size(); k++) {
                candidate[k] -= proj * a[k];
            }
        }
    }
    double len = norm2(std::span<const Complex>(candidate));
    if (len < 0.5 * original) {
        return false;
    }
    for (auto &z : candidate) {
        z /= len;
    }
    return true;
}

}  // namespace

SvdResult<Complex> svd(const ComplexMatrix &m, size_t sweep_cap) {
    if (is_real(m)) {
        auto r = svd(real_part(m), sweep_cap);
        return SvdResult<Complex>{
            std::move(r.singular_values), to_complex(r.left_vectors), to_complex(r.right_vectors), r.sweeps};
    }
    size_t k = std::min(m.rows(), m.cols());
    auto embedded = svd(realify(m), sweep_cap);

    // Every singular value of m appears twice in the embedding: the right vectors (a;b) and (-b;a)
    // map to v and i*v. Keep the first vector of each such pair.
    std::vector<ComplexVector> right;
    RealVector sigmas;
    for (size_t c = 0; c < embedded.right_vectors.cols() && right.size() < k; c++) {
        auto candidate = complexify(embedded.right_vectors.col(c));
        if (orthogonalize_against(candidate, right)) {
            right.push_back(std::move(candidate));
            sigmas.push_back(embedded.singular_values[c]);
        }
    }
    if (right.size() != k) {
        throw std::logic_error("complex SVD: failed to recover right singular vectors");
    }

    SvdResult<Complex> out;
    out.sweeps = embedded.sweeps;
    out.singular_values = sigmas;
    out.right_vectors = ComplexMatrix(m.cols(), k);
    out.left_vectors = ComplexMatrix(m.rows(), k);
    double floor = (sigmas.empty() ? 0 : sigmas[0]) * static_cast<double>(std::max(m.rows(), m.cols())) * 1e-15;
    std::vector<bool> missing(k, false);
    for (size_t c = 0; c < k; c++) {
        out.right_vectors.set_col(c, right[c]);
        if (sigmas[c] > floor && sigmas[c] > 0) {
            auto u = m * right[c];
            for (auto &z : u) {
                z /= sigmas[c];
            }
            out.left_vectors.set_col(c, u);
        } else {
            missing[c] = true;
        }
    }
    complete_orthonormal_columns(out.left_vectors, missing);
    return out;
}

RealVector singular_values(const RealMatrix &m) {
    return svd(m).singular_values;
}

RealVector singular_values(const ComplexMatrix &m) {
    return svd(m).singular_values;
}

size_t numerical_rank(std::span<const double> sorted_singular_values) {
    if (sorted_singular_values.empty() || sorted_singular_values[0] == 0) {
        return 0;
    }
    double cutoff = kRankTolerance * sorted_singular_values[0];
    return static_cast<size_t>(
        std::count_if(sorted_singular_values.begin(), sorted_singular_values.end(), [&](double s) {
            return s > cutoff;
        }));
}

template <typename T>
std::vector<T> least_squares_solve(const Matrix<T> &a, std::span<const T> b) {
    if (a.rows() != b.size()) {
        throw std::invalid_argument(
            "least squares: " + std::to_string(a.rows()) + " rows but b has " + std::to_string(b.size()) +
            " entries");
    }
    auto decomposition = svd(a);
    size_t rank = numerical_rank(decomposition.singular_values);
    if (rank < a.cols()) {
        throw RankDeficientError(rank, a.cols());
    }
    std::vector<T> x(a.cols(), T{});
    for (size_t k = 0; k < a.cols(); k++) {
        T coefficient{};
        for (size_t r = 0; r < a.rows(); r++) {
            coefficient += conj_of(decomposition.left_vectors(r, k)) * b[r];
        }
        coefficient /= decomposition.singular_values[k];
        for (size_t j = 0; j < a.cols(); j++) {
            x[j] += decomposition.right_vectors(j, k) * coefficient;
        }
    }
    return x;
}

template <typename T>
double spectral_norm(const Matrix<T> &m) {
    auto s = singular_values(m);
    return s.empty() ? 0.0 : s[0];
}

template <typename T>
double frobenius_norm(const Matrix<T> &m) {
    double acc = 0;
    for (auto x : m.entries()) {
        acc += std::norm(x);
    }
    return std::sqrt(acc);
}

SymmetricEigen symmetric_eigen(const RealMatrix &m) {
    if (!m.is_square()) {
        throw std::invalid_argument("symmetric_eigen needs a square matrix");
    }
    size_t n = m.rows();
    RealMatrix a = m;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            double avg = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = avg;
            a(j, i) = avg;
        }
    }
    RealMatrix v = RealMatrix::identity(n);
    double scale = frobenius_norm(a);

    constexpr size_t kSweepCap = 100;
    size_t sweep = 0;
    for (; sweep < kSweepCap; sweep++) {
        double off = 0;
        for (size_t i = 0; i < n; i++) {
            for (size_t j = i + 1; j < n; j++) {
                off += a(i, j) * a(i, j);
            }
        }
        if (std::sqrt(off) <= 1e-16 * scale || off == 0) {
            break;
        }
        for (size_t p = 0; p + 1 < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                double apq = a(p, q);
                if (apq == 0) {
                    continue;
                }
                double theta = (a(q, q) - a(p, p)) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;
                for (size_t k = 0; k < n; k++) {
                    double akp = a(k, p);
                    double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (size_t k = 0; k < n; k++) {
                    double apk = a(p, k);
                    double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0;
                a(q, p) = 0;
                for (size_t k = 0; k < n; k++) {
                    double vkp = v(k, p);
                    double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (sweep == kSweepCap) {
        throw SvdConvergenceError(sweep);
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
        return a(x, x) < a(y, y);
    });
    SymmetricEigen out;
    out.values.resize(n);
    out.vectors = RealMatrix(n, n);
    for (size_t k = 0; k < n; k++) {
        out.values[k] = a(order[k], order[k]);
        out.vectors.set_col(k, v.col(order[k]));
    }
    return out;
}

HermitianEigen hermitian_eigen(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw std::invalid_argument("hermitian_eigen needs a square matrix");
    }
    size_t n = m.rows();
    HermitianEigen out;
    if (is_real(m)) {
        auto e = symmetric_eigen(real_part(m));
        out.values = e.values;
        for (size_t k = 0; k < n; k++) {
            auto col = e.vectors.col(k);
            out.vectors.emplace_back(col.begin(), col.end());
        }
        return out;
    }
    // Each eigenvalue of m appears twice in the real embedding.
    auto e = symmetric_eigen(realify(m));
    for (size_t c = 0; c < 2 * n && out.vectors.size() < n; c++) {
        auto candidate = complexify(e.vectors.col(c));
        if (orthogonalize_against(candidate, out.vectors)) {
            out.vectors.push_back(std::move(candidate));
            out.values.push_back(e.values[c]);
        }
    }
    if (out.vectors.size() != n) {
        throw std::logic_error("hermitian_eigen: failed to recover eigenvectors");
    }
    return out;
}

ComplexMatrix hermitian_function(const ComplexMatrix &m, const std::function<double(double)> &f) {
    auto e = hermitian_eigen(m);
    size_t n = m.rows();
    ComplexMatrix out(n, n);
    for (size_t k = 0; k < n; k++) {
        double fk = f(e.values[k]);
        if (fk == 0) {
            continue;
        }
        const auto &v = e.vectors[k];
        for (size_t i = 0; i < n; i++) {
            for (size_t j = 0; j < n; j++) {
                out(i, j) += fk * v[i] * std::conj(v[j]);
            }
        }
    }
    return out;
}

template class Matrix<double>;
template class Matrix<Complex>;
template struct SvdResult<double>;
template struct SvdResult<Complex>;
template RealMatrix operator*(const RealMatrix &, const RealMatrix &);
template ComplexMatrix operator*(const ComplexMatrix &, const ComplexMatrix &);
template RealVector operator*(const RealMatrix &, std::span<const double>);
template ComplexVector operator*(const ComplexMatrix &, std::span<const Complex>);
template RealMatrix kron(const RealMatrix &, const RealMatrix &);
template ComplexMatrix kron(const ComplexMatrix &, const ComplexMatrix &);
template double trace(const RealMatrix &);
template Complex trace(const ComplexMatrix &);
template double max_abs_diff(const RealMatrix &, const RealMatrix &);
template double max_abs_diff(const ComplexMatrix &, const ComplexMatrix &);
template RealVector least_squares_solve(const RealMatrix &, std::span<const double>);
template ComplexVector least_squares_solve(const ComplexMatrix &, std::span<const Complex>);
template double spectral_norm(const RealMatrix &);
template double spectral_norm(const ComplexMatrix &);
template double frobenius_norm(const RealMatrix &);
template double frobenius_norm(const ComplexMatrix &);

}  // namespace optqst
