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

#ifndef _OPTQST_OPTICS_H
#define _OPTQST_OPTICS_H

#include <array>
#include <string>
#include <vector>

#include "optqst/numerics.h"
#include "optqst/protocols.h"

namespace optqst {

/// Half-wave plate at angle theta (degrees): [[c, s], [s, -c]] with c = cos 2theta, s = sin 2theta.
ComplexMatrix hwp(double theta_deg);
/// Quarter-wave plate at angle theta (degrees): (1/sqrt 2) [[i + c, s], [s, i - c]].
ComplexMatrix qwp(double theta_deg);

struct WaveplateSetting {
    double h1 = 0;
    double q1 = 0;
    double h2 = 0;
    double q2 = 0;
};
/// (Q1 H1) x (Q2 H2). Throws on non-finite angles.
ComplexMatrix local_rotation(const WaveplateSetting &setting);

struct TableRow {
    /// 1-based GPO index gamma_k the eigenstate belongs to.
    int gpo;
    std::string state;
    WaveplateSetting angles;
};
/// The 20 separable eigenstates with the plate angles that rotate them onto |00> (|HH>).
const std::vector<TableRow> &table2_rows();
/// The 8 entangled eigenstates with the plate angles that rotate them onto the singlet.
const std::vector<TableRow> &table3_rows();

/// |<00| U |psi>|^2 for the row's state and angles.
double verify_table2(const TableRow &row);
/// |<Psi-| U |psi>|^2 for the row's state and angles.
double verify_table3(const TableRow &row);

/// Two photons in the modes 1H, 1V, 2H, 2V (indices 0..3).
/// Basis order: 2H1, 2V1, H1V1, H1H2, H1V2, V1H2, V1V2, 2H2, 2V2, H2V2.
/// Doubly occupied states are normalized: |2p> = b_p^dag^2 |vac> / sqrt 2.
struct TwoPhotonFockState {
    static constexpr size_t kSize = 10;
    std::array<Complex, kSize> amplitudes{};

    static const std::array<std::pair<size_t, size_t>, kSize> &mode_pairs();
    static const std::array<std::string, kSize> &labels();
    /// Index of the basis state holding one photon in mode m and one in mode n.
    static size_t index_of(size_t m, size_t n);

    double norm() const;
};

/// Embeds a two-qubit state via |0> = H, |1> = V, qubit 1 in arm 1 and qubit 2 in arm 2.
TwoPhotonFockState dual_rail(std::span<const Complex> two_qubit_state);

/// The 50:50 beam splitter a_1p^dag = (b_1p^dag + b_2p^dag)/sqrt 2, a_2p^dag = (b_1p^dag - b_2p^dag)/sqrt 2,
/// lifted to the two-photon space.
TwoPhotonFockState beam_splitter(const TwoPhotonFockState &state);

struct CoincidenceEvent {
    std::string detectors;
    double probability;
};
/// Click probabilities of the 10 detector-pair events behind polarizing beam splitters, in basis order.
/// Doubly occupied modes are reported as double fires of one detector.
std::vector<CoincidenceEvent> classify_coincidence(const TwoPhotonFockState &state);

/// The beam-splitter identities for Psi-, Psi+, Phi+-, Psibar+- and Phibar+- as amplitude comparisons.
std::vector<CheckLine> beam_splitter_identity_check(double tol = 1e-12);

/// U_CNOT maps the eigenstates of gamma_13..gamma_16 onto eigenstates of gamma_11, gamma_12, gamma_7,
/// gamma_8 with the same eigenvalue.
std::vector<CheckLine> setup2_disentangle_check(double tol = 1e-12);

/// All 20 + 8 table rows plus the 5 beam-splitter identities.
std::vector<CheckLine> verify_setup(double tol = 1e-10);

}  // namespace optqst

#endif
