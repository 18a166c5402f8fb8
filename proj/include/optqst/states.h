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

#ifndef _OPTQST_STATES_H
#define _OPTQST_STATES_H

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "optqst/numerics.h"

namespace optqst {

/// A d x d Hermitian matrix. Trace and positivity are queried, never enforced: linear inversion of
/// noisy data yields unphysical matrices, and reconstructions are deliberately left unnormalized
/// (the trace carries the detection efficiency).
class DensityMatrix {
   public:
    DensityMatrix() = default;
    /// Throws std::invalid_argument if m is not square or not Hermitian within 1e-12.
    explicit DensityMatrix(ComplexMatrix m);

    size_t dim() const {
        return matrix_.rows();
    }
    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    Complex operator()(size_t r, size_t c) const {
        return matrix_(r, c);
    }
    double trace() const;
    /// Copy divided by its trace.
    DensityMatrix normalized() const;

    struct Validity {
        double trace;
        double min_eigenvalue;
        bool positive_semidefinite;
    };
    Validity validity(double tol = 1e-12) const;

    bool operator==(const DensityMatrix &other) const = default;

   private:
    ComplexMatrix matrix_;
};

/// x = vec(rho): [rho_00, Re rho_01, Im rho_01, ..., Re rho_0,d-1, Im rho_0,d-1, rho_11, Re rho_12, ...],
/// i.e. the row-major scan of the upper triangle with each off-diagonal entry split into Re/Im.
/// This ordering is the wire format.
struct RealStateVector {
    size_t dim = 0;
    RealVector values;

    bool operator==(const RealStateVector &other) const = default;
};

/// Slot k of the real vectorization: either diagonal (row == col) or the Re/Im part of rho(row, col).
struct VecSlot {
    enum class Part { diagonal, real, imag };
    size_t row;
    size_t col;
    Part part;
};
std::vector<VecSlot> vec_slots(size_t dim);
/// Index of the last diagonal slot, i.e. rho(d-1, d-1); always d*d - 1.
size_t last_diagonal_slot(size_t dim);

/// E_k with rho = sum_k x_k E_k: |k><k| on diagonal slots, |k><l| + |l><k| on Re slots and
/// i|k><l| - i|l><k| on Im slots.
std::vector<ComplexMatrix> basis_matrices(size_t dim);

/// Throws if rho is not Hermitian, naming the worst |rho - rho^dagger| entry.
RealStateVector vec(const ComplexMatrix &rho);
RealStateVector vec(const DensityMatrix &rho);
DensityMatrix unvec(const RealStateVector &x);
/// Length must be a perfect square.
DensityMatrix unvec(std::span<const double> x);

/// Qubit names 0 1 + - R L (and products of them such as "0+", "R1", "RL");
/// Bell names phi+ phi- psi+ psi- and the S-rotated phibar+ phibar- psibar+ psibar-.
/// The Greek spellings ("Φ+", "Ψ̄-", ...) are accepted too.
ComplexVector named_state(std::string_view name);
std::vector<std::string> bell_state_names();

DensityMatrix pure_state(std::span<const Complex> psi);

/// Hilbert-Schmidt random state: G G^dagger / Tr, G with iid complex Gaussian entries.
DensityMatrix random_density_matrix(size_t dim, std::mt19937_64 &rng);
/// Haar-random pure state.
ComplexVector random_pure_state(size_t dim, std::mt19937_64 &rng);

struct MetricResult {
    double value;
    /// True when an input had negative eigenvalues and was clipped to PSD before evaluation.
    bool psd_projected;
};

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
MetricResult fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);
/// 1/2 ||rho - sigma||_1.
double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma);
/// Negative eigenvalues clipped to zero; no renormalization.
DensityMatrix psd_projection(const DensityMatrix &rho);

}  // namespace optqst

#endif
