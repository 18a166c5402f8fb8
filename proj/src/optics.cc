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

#include "optqst/optics.h"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "optqst/states.h"

namespace optqst {

namespace {

const double kInvSqrt2 = 1 / std::sqrt(2.0);
const Complex kI(0, 1);

double radians(double deg) {
    if (!std::isfinite(deg)) {
        throw std::invalid_argument(fmt::format("waveplate angle must be finite, got {}", deg));
    }
    return deg * M_PI / 180;
}

CheckLine check_line(std::string description, double error, double tol) {
    return CheckLine{std::move(description), error, error <= tol};
}

TwoPhotonFockState fock(std::initializer_list<std::pair<size_t, Complex>> entries) {
    TwoPhotonFockState s;
    for (auto [idx, amp] : entries) {
        s.amplitudes[idx] = amp;
    }
    return s;
}

double max_amplitude_diff(const TwoPhotonFockState &a, const TwoPhotonFockState &b) {
    double m = 0;
    for (size_t k = 0; k < TwoPhotonFockState::kSize; k++) {
        m = std::max(m, std::abs(a.amplitudes[k] - b.amplitudes[k]));
    }
    return m;
}

}  // namespace

ComplexMatrix hwp(double theta_deg) {
    double t = 2 * radians(theta_deg);
    double c = std::cos(t), s = std::sin(t);
    return ComplexMatrix{{c, s}, {s, -c}};
}

ComplexMatrix qwp(double theta_deg) {
    double t = 2 * radians(theta_deg);
    double c = std::cos(t), s = std::sin(t);
    return kInvSqrt2 * ComplexMatrix{{kI + c, s}, {s, kI - c}};
}

ComplexMatrix local_rotation(const WaveplateSetting &w) {
    return kron(qwp(w.q1) * hwp(w.h1), qwp(w.q2) * hwp(w.h2));
}

const std::vector<TableRow> &table2_rows() {
    static const std::vector<TableRow> rows = {
        {1, "00", {0, 0, 0, 0}},       {2, "01", {0, 0, 45, 0}},      {3, "10", {45, 0, 0, 0}},
        {4, "11", {45, 0, 45, 0}},     {5, "0+", {0, 0, 22.5, 0}},    {5, "0-", {0, 0, 67.5, 0}},
        {6, "0R", {0, 0, 0, 45}},      {6, "0L", {0, 0, 0, -45}},     {7, "+0", {22.5, 0, 0, 0}},
        {7, "-0", {67.5, 0, 0, 0}},    {8, "R0", {0, 45, 0, 0}},      {8, "L0", {0, -45, 0, 0}},
        {9, "1+", {45, 0, 22.5, 0}},   {9, "1-", {45, 0, 67.5, 0}},   {10, "1R", {45, 0, 0, 45}},
        {10, "1L", {45, 0, 0, -45}},   {11, "+1", {22.5, 0, 45, 0}},  {11, "-1", {67.5, 0, 45, 0}},
        {12, "R1", {0, 45, 45, 0}},    {12, "L1", {0, -45, 45, 0}},
    };
    return rows;
}

const std::vector<TableRow> &table3_rows() {
    static const std::vector<TableRow> rows = {
        {13, "psi-", {0, 0, 0, 0}},          {13, "psi+", {45, -45, 0, 45}},
        {14, "psibar-", {0, 45, -22.5, 0}},  {14, "psibar+", {0, 45, 22.5, 90}},
        {15, "phi-", {0, -45, 0, 45}},       {15, "phi+", {45, 0, 0, 0}},
        {16, "phibar-", {0, 45, -22.5, 90}}, {16, "phibar+", {0, 45, 22.5, 0}},
    };
    return rows;
}

double verify_table2(const TableRow &row) {
    auto rotated = local_rotation(row.angles) * named_state(row.state);
    return std::norm(rotated[0]);
}

double verify_table3(const TableRow &row) {
    auto rotated = local_rotation(row.angles) * named_state(row.state);
    return std::norm(inner(named_state("psi-"), rotated));
}

const std::array<std::pair<size_t, size_t>, TwoPhotonFockState::kSize> &TwoPhotonFockState::mode_pairs() {
    static const std::array<std::pair<size_t, size_t>, kSize> pairs = {
        {{0, 0}, {1, 1}, {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 2}, {3, 3}, {2, 3}}};
    return pairs;
}

const std::array<std::string, TwoPhotonFockState::kSize> &TwoPhotonFockState::labels() {
    static const std::array<std::string, kSize> names = {"2H,vac", "2V,vac", "HV,vac", "H,H", "H,V",
                                                         "V,H",    "V,V",    "vac,2H", "vac,2V", "vac,HV"};
    return names;
}

size_t TwoPhotonFockState::index_of(size_t m, size_t n) {
    if (m > n) {
        std::swap(m, n);
    }
    const auto &pairs = mode_pairs();
    for (size_t k = 0; k < kSize; k++) {
        if (pairs[k] == std::pair<size_t, size_t>{m, n}) {
            return k;
        }
    }
    throw std::out_of_range(fmt::format("no two-photon basis state for modes ({}, {})", m, n));
}

double TwoPhotonFockState::norm() const {
    double s = 0;
    for (const auto &a : amplitudes) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

TwoPhotonFockState dual_rail(std::span<const Complex> psi) {
    if (psi.size() != 4) {
        throw std::invalid_argument(fmt::format("dual-rail embedding needs a two-qubit state, got length {}", psi.size()));
    }
    TwoPhotonFockState s;
    for (size_t q1 = 0; q1 < 2; q1++) {
        for (size_t q2 = 0; q2 < 2; q2++) {
            s.amplitudes[TwoPhotonFockState::index_of(q1, 2 + q2)] = psi[2 * q1 + q2];
        }
    }
    return s;
}

TwoPhotonFockState beam_splitter(const TwoPhotonFockState &state) {
    // Input mode m creates sum_k u[m][k] b_k^dag at the output.
    const double h = kInvSqrt2;
    const double u[4][4] = {{h, 0, h, 0}, {0, h, 0, h}, {h, 0, -h, 0}, {0, h, 0, -h}};
    // Coefficients of the quadratic form sum_{k<=l} poly[k][l] b_k^dag b_l^dag.
    Complex poly[4][4] = {};
    const auto &pairs = TwoPhotonFockState::mode_pairs();
    for (size_t idx = 0; idx < TwoPhotonFockState::kSize; idx++) {
        auto [m, n] = pairs[idx];
        Complex c = state.amplitudes[idx];
        if (m == n) {
            c *= h;
        }
        for (size_t k = 0; k < 4; k++) {
            for (size_t l = 0; l < 4; l++) {
                double w = u[m][k] * u[n][l];
                if (w != 0) {
                    poly[std::min(k, l)][std::max(k, l)] += c * w;
                }
            }
        }
    }
    TwoPhotonFockState out;
    for (size_t idx = 0; idx < TwoPhotonFockState::kSize; idx++) {
        auto [k, l] = pairs[idx];
        out.amplitudes[idx] = k == l ? poly[k][l] * std::sqrt(2.0) : poly[k][l];
    }
    return out;
}

std::vector<CoincidenceEvent> classify_coincidence(const TwoPhotonFockState &state) {
    const char *detectors[4] = {"D1H", "D1V", "D2H", "D2V"};
    std::vector<CoincidenceEvent> events;
    const auto &pairs = TwoPhotonFockState::mode_pairs();
    for (size_t idx = 0; idx < TwoPhotonFockState::kSize; idx++) {
        auto [m, n] = pairs[idx];
        std::string name = m == n ? fmt::format("{} double", detectors[m])
                                  : fmt::format("{}&{}", detectors[m], detectors[n]);
        events.push_back(CoincidenceEvent{name, std::norm(state.amplitudes[idx])});
    }
    return events;
}

std::vector<CheckLine> beam_splitter_identity_check(double tol) {
    auto bs = [](const char *name) { return beam_splitter(dual_rail(named_state(name))); };
    const double h = kInvSqrt2;
    const Complex cp = Complex(1, 1) / (2 * std::sqrt(2.0));
    const Complex cm = Complex(1, -1) / (2 * std::sqrt(2.0));
    // Basis indices: 0 2H1, 1 2V1, 2 H1V1, 3 H1H2, 4 H1V2, 5 V1H2, 6 V1V2, 7 2H2, 8 2V2, 9 H2V2.
    std::vector<CheckLine> lines;
    lines.push_back(check_line("U_BS|Psi-> = -|Psi->", max_amplitude_diff(bs("psi-"), fock({{4, -h}, {5, h}})), tol));
    lines.push_back(check_line("U_BS|Psi+> = (|HV,vac> - |vac,HV>)/sqrt2",
                               max_amplitude_diff(bs("psi+"), fock({{2, h}, {9, -h}})), tol));
    double b3 = std::max(max_amplitude_diff(bs("phi+"), fock({{0, 0.5}, {7, -0.5}, {1, 0.5}, {8, -0.5}})),
                         max_amplitude_diff(bs("phi-"), fock({{0, 0.5}, {7, -0.5}, {1, -0.5}, {8, 0.5}})));
    lines.push_back(check_line("U_BS|Phi+-> = (|2H,vac> - |vac,2H>)/2 +- (|2V,vac> - |vac,2V>)/2", b3, tol));
    double b4 = std::max(max_amplitude_diff(bs("psibar+"), fock({{2, cp}, {9, -cp}, {4, -cm}, {5, cm}})),
                         max_amplitude_diff(bs("psibar-"), fock({{2, cm}, {9, -cm}, {4, -cp}, {5, cp}})));
    lines.push_back(
        check_line("U_BS|Psibar+-> = c+-(|HV,vac> - |vac,HV>) - c-+(|H,V> - |V,H>)", b4, tol));
    double b5 =
        std::max(max_amplitude_diff(bs("phibar+"), fock({{0, 0.5}, {7, -0.5}, {1, 0.5 * kI}, {8, -0.5 * kI}})),
                 max_amplitude_diff(bs("phibar-"), fock({{0, 0.5}, {7, -0.5}, {1, -0.5 * kI}, {8, 0.5 * kI}})));
    lines.push_back(check_line("U_BS|Phibar+-> = (|2H,vac> - |vac,2H>)/2 +- i(|2V,vac> - |vac,2V>)/2", b5, tol));
    return lines;
}

std::vector<CheckLine> setup2_disentangle_check(double tol) {
    auto spec = protocol_1_optimal();
    ComplexMatrix u = cnot_gate();
    const std::pair<size_t, size_t> pairs[4] = {{13, 11}, {14, 12}, {15, 7}, {16, 8}};
    std::vector<CheckLine> lines;
    for (auto [k, kp] : pairs) {
        const auto &source = spec.elements[k - 1].observables[0].spectrum;
        const auto &target = spec.elements[kp - 1].observables[0].spectrum;
        for (const auto &s : source) {
            auto image = u * s.state;
            const EigenComponent *match = nullptr;
            for (const auto &t : target) {
                if (t.eigenvalue == s.eigenvalue) {
                    match = &t;
                }
            }
            double err = 1;
            std::string name = "?";
            if (match != nullptr) {
                err = std::abs(std::abs(inner(match->state, image)) - 1);
                name = match->label;
            }
            lines.push_back(check_line(
                fmt::format("U_CNOT|{}> ~ |{}> (gamma_{} -> gamma_{}, eigenvalue {:+g})", s.label, name, k, kp,
                            s.eigenvalue),
                err, tol));
        }
    }
    double inv = max_abs_diff(u * u, ComplexMatrix::identity(4));
    lines.push_back(check_line("U_CNOT U_CNOT = I", inv, tol));
    return lines;
}

std::vector<CheckLine> verify_setup(double tol) {
    std::vector<CheckLine> lines;
    for (const auto &row : table2_rows()) {
        double f = verify_table2(row);
        lines.push_back(check_line(fmt::format("setup 1, gamma_{}: |{}> -> |00> with (H1,Q1,H2,Q2) = ({:g},{:g},{:g},{:g})",
                                               row.gpo, row.state, row.angles.h1, row.angles.q1, row.angles.h2,
                                               row.angles.q2),
                                   std::abs(f - 1), tol));
    }
    for (const auto &row : table3_rows()) {
        double f = verify_table3(row);
        lines.push_back(check_line(
            fmt::format("setup 1, gamma_{}: |{}> -> |Psi-> with (H1,Q1,H2,Q2) = ({:g},{:g},{:g},{:g})", row.gpo,
                        row.state, row.angles.h1, row.angles.q1, row.angles.h2, row.angles.q2),
            std::abs(f - 1), tol));
    }
    for (auto &line : beam_splitter_identity_check()) {
        line.description = "beam splitter: " + line.description;
        lines.push_back(std::move(line));
    }
    return lines;
}

}  // namespace optqst
