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

#include "optqst/states.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace optqst {

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
    if (!matrix_.is_square()) {
        throw std::invalid_argument("density matrix must be square");
    }
    if (!is_hermitian(matrix_, 1e-12)) {
        throw std::invalid_argument("density matrix must be Hermitian within 1e-12");
    }
}

double DensityMatrix::trace() const {
    return optqst::trace(matrix_).real();
}

DensityMatrix DensityMatrix::normalized() const {
    double t = trace();
    if (t == 0) {
        throw std::invalid_argument("cannot normalize a zero-trace matrix");
    }
    return DensityMatrix(matrix_ * Complex(1 / t));
}

DensityMatrix::Validity DensityMatrix::validity(double tol) const {
    auto e = hermitian_eigen(matrix_);
    double min_eig = e.values.empty() ? 0 : e.values.front();
    return Validity{trace(), min_eig, min_eig >= -tol};
}

std::vector<VecSlot> vec_slots(size_t dim) {
    std::vector<VecSlot> slots;
    slots.reserve(dim * dim);
    for (size_t k = 0; k < dim; k++) {
        slots.push_back({k, k, VecSlot::Part::diagonal});
        for (size_t l = k + 1; l < dim; l++) {
            slots.push_back({k, l, VecSlot::Part::real});
            slots.push_back({k, l, VecSlot::Part::imag});
        }
    }
    return slots;
}

size_t last_diagonal_slot(size_t dim) {
    return dim * dim - 1;
}

std::vector<ComplexMatrix> basis_matrices(size_t dim) {
    std::vector<ComplexMatrix> out;
    out.reserve(dim * dim);
    for (const auto &s : vec_slots(dim)) {
        ComplexMatrix e(dim, dim);
        switch (s.part) {
            case VecSlot::Part::diagonal:
                e(s.row, s.row) = 1;
                break;
            case VecSlot::Part::real:
                e(s.row, s.col) = 1;
                e(s.col, s.row) = 1;
                break;
            case VecSlot::Part::imag:
                e(s.row, s.col) = Complex(0, 1);
                e(s.col, s.row) = Complex(0, -1);
                break;
        }
        out.push_back(std::move(e));
    }
    return out;
}

RealStateVector vec(const ComplexMatrix &rho) {
    if (!rho.is_square()) {
        throw std::invalid_argument("vec needs a square matrix");
    }
    size_t d = rho.rows();
    double worst = 0;
    size_t worst_r = 0;
    size_t worst_c = 0;
    for (size_t r = 0; r < d; r++) {
        for (size_t c = r; c < d; c++) {
            double dev = std::abs(rho(r, c) - std::conj(rho(c, r)));
            if (dev > worst) {
                worst = dev;
                worst_r = r;
                worst_c = c;
            }
        }
    }
    if (worst > 1e-12) {
        std::ostringstream msg;
        msg << "vec: matrix is not Hermitian; max |rho - rho^dagger| = " << worst << " at (" << worst_r << ", "
            << worst_c << ")";
        throw std::invalid_argument(msg.str());
    }
    RealStateVector x{d, {}};
    x.values.reserve(d * d);
    for (const auto &s : vec_slots(d)) {
        switch (s.part) {
            case VecSlot::Part::diagonal:
                x.values.push_back(rho(s.row, s.row).real());
                break;
            case VecSlot::Part::real:
                x.values.push_back(rho(s.row, s.col).real());
                break;
            case VecSlot::Part::imag:
                x.values.push_back(rho(s.row, s.col).imag());
                break;
        }
    }
    return x;
}

RealStateVector vec(const DensityMatrix &rho) {
    return vec(rho.matrix());
}

DensityMatrix unvec(std::span<const double> x) {
    auto d = static_cast<size_t>(std::llround(std::sqrt(static_cast<double>(x.size()))));
    if (d * d != x.size() || d == 0) {
        throw std::invalid_argument("unvec: length " + std::to_string(x.size()) + " is not a nonzero square");
    }
    ComplexMatrix m(d, d);
    auto slots = vec_slots(d);
    for (size_t k = 0; k < slots.size(); k++) {
        const auto &s = slots[k];
        switch (s.part) {
            case VecSlot::Part::diagonal:
                m(s.row, s.row) = x[k];
                break;
            case VecSlot::Part::real:
                m(s.row, s.col).real(x[k]);
                m(s.col, s.row).real(x[k]);
                break;
            case VecSlot::Part::imag:
                m(s.row, s.col).imag(x[k]);
                m(s.col, s.row).imag(-x[k]);
                break;
        }
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix unvec(const RealStateVector &x) {
    if (x.values.size() != x.dim * x.dim) {
        throw std::invalid_argument("unvec: vector length does not match dim^2");
    }
    return unvec(std::span<const double>(x.values));
}

namespace {

const double kInvSqrt2 = 1 / std::sqrt(2.0);

ComplexVector single_qubit(char c) {
    const Complex i(0, 1);
    switch (c) {
        case '0':
            return {1, 0};
        case '1':
            return {0, 1};
        case '+':
            return {kInvSqrt2, kInvSqrt2};
        case '-':
            return {kInvSqrt2, -kInvSqrt2};
        case 'R':
            return {kInvSqrt2, -i * kInvSqrt2};
        case 'L':
            return {kInvSqrt2, i * kInvSqrt2};
        default:
            throw std::invalid_argument(std::string("unknown single-qubit state '") + c + "'");
    }
}

std::string canonical_bell_name(std::string_view name) {
    static const std::map<std::string, std::string> aliases = {
        {"Φ", "phi"},        {"φ", "phi"},        {"Ψ", "psi"},        {"ψ", "psi"},
        {"Φ̄", "phibar"}, {"φ̄", "phibar"}, {"Ψ̄", "psibar"}, {"ψ̄", "psibar"},
    };
    if (name.empty()) {
        return "";
    }
    char sign = name.back();
    if (sign != '+' && sign != '-') {
        return "";
    }
    std::string stem(name.substr(0, name.size() - 1));
    auto it = aliases.find(stem);
    if (it != aliases.end()) {
        stem = it->second;
    }
    std::transform(stem.begin(), stem.end(), stem.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    if (stem == "phi" || stem == "psi" || stem == "phibar" || stem == "psibar") {
        return stem + sign;
    }
    return "";
}

}  // namespace

std::vector<std::string> bell_state_names() {
    return {"phi+", "phi-", "psi+", "psi-", "phibar+", "phibar-", "psibar+", "psibar-"};
}

ComplexVector named_state(std::string_view name) {
    auto bell = canonical_bell_name(name);
    if (!bell.empty()) {
        const Complex i(0, 1);
        bool plus = bell.back() == '+';
        std::string stem = bell.substr(0, bell.size() - 1);
        bool phi = stem.rfind("phi", 0) == 0;
        bool bar = stem.size() > 3;
        Complex phase = bar ? (plus ? i : -i) : Complex(plus ? 1 : -1);
        ComplexVector v(4, 0);
        if (phi) {
            v[0] = kInvSqrt2;
            v[3] = phase * kInvSqrt2;
        } else {
            v[1] = kInvSqrt2;
            v[2] = phase * kInvSqrt2;
        }
        return v;
    }
    if (name.empty()) {
        throw std::invalid_argument("empty state name");
    }
    ComplexVector v{1};
    for (char c : name) {
        try {
            auto q = single_qubit(c);
            v = kron(v, q);
        } catch (const std::invalid_argument &) {
            throw std::invalid_argument("unknown state name '" + std::string(name) + "'");
        }
    }
    return v;
}

DensityMatrix pure_state(std::span<const Complex> psi) {
    return DensityMatrix(outer(psi, psi));
}

DensityMatrix random_density_matrix(size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> dist;
    ComplexMatrix g(dim, dim);
    for (auto &z : g.entries()) {
        z = Complex(dist(rng), dist(rng));
    }
    ComplexMatrix rho = g * g.adjoint();
    double t = trace(rho).real();
    rho *= Complex(1 / t);
    // Exact Hermitian symmetry.
    for (size_t r = 0; r < dim; r++) {
        rho(r, r) = rho(r, r).real();
        for (size_t c = r + 1; c < dim; c++) {
            rho(c, r) = std::conj(rho(r, c));
        }
    }
    return DensityMatrix(std::move(rho));
}

ComplexVector random_pure_state(size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> dist;
    ComplexVector v(dim);
    for (auto &z : v) {
        z = Complex(dist(rng), dist(rng));
    }
    double n = norm2(std::span<const Complex>(v));
    for (auto &z : v) {
        z /= n;
    }
    return v;
}

namespace {

ComplexMatrix hermitize(const ComplexMatrix &m) {
    return 0.5 * (m + m.adjoint());
}

}  // namespace

DensityMatrix psd_projection(const DensityMatrix &rho) {
    return DensityMatrix(hermitize(hermitian_function(rho.matrix(), [](double v) {
        return std::max(v, 0.0);
    })));
}

MetricResult fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw std::invalid_argument("fidelity: dimension mismatch");
    }
    bool projected = false;
    DensityMatrix a = rho;
    DensityMatrix b = sigma;
    if (!a.validity().positive_semidefinite) {
        a = psd_projection(a);
        projected = true;
    }
    if (!b.validity().positive_semidefinite) {
        b = psd_projection(b);
        projected = true;
    }
    auto sqrt_a = hermitian_function(a.matrix(), [](double v) {
        return std::sqrt(std::max(v, 0.0));
    });
    auto inner_product = hermitize(sqrt_a * b.matrix() * sqrt_a);
    auto e = hermitian_eigen(inner_product);
    double root_sum = 0;
    for (double v : e.values) {
        root_sum += std::sqrt(std::max(v, 0.0));
    }
    return MetricResult{root_sum * root_sum, projected};
}

double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw std::invalid_argument("trace_distance: dimension mismatch");
    }
    auto e = hermitian_eigen(hermitize(rho.matrix() - sigma.matrix()));
    double acc = 0;
    for (double v : e.values) {
        acc += std::abs(v);
    }
    return 0.5 * acc;
}

}  // namespace optqst
