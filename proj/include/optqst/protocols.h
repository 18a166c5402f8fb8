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

#ifndef _OPTQST_PROTOCOLS_H
#define _OPTQST_PROTOCOLS_H

#include <string>
#include <string_view>
#include <vector>

#include "optqst/numerics.h"
#include "optqst/states.h"

namespace optqst {

struct EigenComponent {
    double eigenvalue;
    ComplexVector state;
    std::string label;
};

/// A real-valued Hermitian quantity that is estimated from projective outcomes:
/// <matrix> = sum_l eigenvalue_l <psi_l|rho|psi_l>. Zero-eigenvalue components are omitted.
struct Observable {
    std::string label;
    ComplexMatrix matrix;
    std::vector<EigenComponent> spectrum;
};

enum class ElementKind {
    hermitian_operator,
    pure_projector,
    /// Non-Hermitian operator; contributes the Re and Im parts of Tr(rho M) as two rows.
    general_operator,
};
std::string_view to_string(ElementKind kind);

struct MeasurementElement {
    ElementKind kind;
    std::string label;
    /// The operator (hermitian/general kinds) or |psi><psi| (projector kind).
    ComplexMatrix op;
    /// Only set for the projector kind.
    ComplexVector state;
    /// One entry per row this element contributes to the rotation matrix.
    std::vector<Observable> observables;
};

enum class Locality { local, local_and_global };
std::string_view to_string(Locality locality);

struct ProtocolSpec {
    /// Stable lookup key: "1".."7", "5b", "qubit-optimal", "qudit-3", "pauli-2", ...
    std::string key;
    /// Table numbering 1..7, or 0 for generated protocols.
    int id = 0;
    std::string name;
    size_t dim = 0;
    Locality locality = Locality::local;
    std::vector<MeasurementElement> elements;
    /// When set, the last diagonal unknown is eliminated through Tr(rho) = 1.
    bool trace_constrained = false;
    RealMatrix rotation_matrix;
    /// Added to b before solving (nonzero only for trace-constrained protocols).
    RealVector displacement;
    /// How the rows of the rotation matrix were assembled.
    std::string construction;

    size_t unknowns() const {
        return trace_constrained ? dim * dim - 1 : dim * dim;
    }
    size_t row_count() const;
    /// Number of distinct projective outcomes that must be counted.
    size_t projector_outcomes() const;
};

/// A[j][i] = Tr(E_i M_j) (operator kinds) or <psi_j|E_i|psi_j> (projector kind).
/// General operators contribute a Re row followed by an Im row.
/// Throws if a hermitian-kind element yields an imaginary residue above 1e-10, naming the element.
RealMatrix build_rotation_matrix(const ProtocolSpec &spec);
/// The rotation matrix over all dim^2 unknowns, ignoring any trace constraint.
RealMatrix build_full_rotation_matrix(const ProtocolSpec &spec);

/// Optimal GPOs: 12 local gamma_1..gamma_12 plus 4 Bell-diagonal gamma_13..gamma_16.
ProtocolSpec protocol_1_optimal();
ProtocolSpec protocol_2_pauli_products();
ProtocolSpec protocol_3_james();
ProtocolSpec protocol_4_separable36();
enum class MubVariant { adamson, bandyopadhyay };
ProtocolSpec protocol_5_mub(MubVariant variant = MubVariant::adamson);
ProtocolSpec protocol_6_gellmann();
ProtocolSpec protocol_7_patera_zassenhaus();

/// X_kk, then X_kl and Y_kl for each k < l in row-major order.
ProtocolSpec optimal_gpos_qudit(size_t d);
/// sigma_{n_1} x ... x sigma_{n_N}, n = 1 + sum_i 4^{N-i} n_i.
ProtocolSpec pauli_tensor_protocol(size_t n_qubits);

struct SingleQubitProtocols {
    ProtocolSpec optimal;
    /// {sigma_1, sigma_2, sigma_3, I}
    ProtocolSpec pauli4;
    /// {sigma_1, sigma_2, sigma_3} with x_4 = 1 - x_1.
    ProtocolSpec pauli3_reduced;
};
SingleQubitProtocols single_qubit_protocols();

/// Protocols 1..7 in table order (Protocol 5 in its default variant).
std::vector<ProtocolSpec> table1_protocols();
/// Resolves a key accepted by ProtocolSpec::key (also "5a" for the default MUB).
ProtocolSpec protocol_by_key(std::string_view key);
std::vector<std::string> known_protocol_keys();

/// The 2x2 single-qubit Pauli matrix sigma_k, k = 0..3 (sigma_0 = I).
ComplexMatrix pauli(size_t k);
ComplexMatrix phase_gate();
ComplexMatrix hadamard_gate();
ComplexMatrix cnot_gate();

struct CheckLine {
    std::string description;
    double error;
    bool passed;
};

/// U_CNOT gamma_k U_CNOT = gamma_k' for (13,11), (14,12), (15,7), (16,8), the local relations
/// between gamma_13..gamma_16, and the involution check.
std::vector<CheckLine> cnot_disentangle_check(double tol = 1e-12);

/// |<psi^X_m|psi^Y_n>| - 1/2 for all 160 cross-basis pairs.
std::vector<CheckLine> mub_overlap_check(MubVariant variant, double tol = 1e-12);

/// |<psi^X_n|U|bell>| - 1 for the local-unitary relations between the Bell states and the
/// entangled D/E elements of each MUB variant, paired as listed with the basis definitions.
std::vector<CheckLine> mub_local_equivalence_check(MubVariant variant, double tol = 1e-12);

}  // namespace optqst

#endif
