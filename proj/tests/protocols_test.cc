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

#include "optqst/protocols.h"

#include <cmath>

#include "gtest/gtest.h"
#include "optqst/states.h"
#include "test_util.h"

using namespace optqst;
using optqst::testing::shared_rng;

namespace {

const Complex kI(0, 1);

// Tr(rho M) by explicit matrix product.
Complex trace_product(const ComplexMatrix &rho, const ComplexMatrix &m) {
    Complex t = 0;
    for (size_t r = 0; r < rho.rows(); r++) {
        for (size_t c = 0; c < rho.cols(); c++) {
            t += rho(r, c) * m(c, r);
        }
    }
    return t;
}

bool contains_matrix(const std::vector<ComplexMatrix> &set, const ComplexMatrix &m) {
    for (const auto &s : set) {
        if (s.rows() == m.rows() && max_abs_diff(s, m) < 1e-14) {
            return true;
        }
    }
    return false;
}

std::vector<ComplexMatrix> operators_of(const ProtocolSpec &spec) {
    std::vector<ComplexMatrix> out;
    for (const auto &e : spec.elements) {
        out.push_back(e.op);
    }
    return out;
}

std::vector<ProtocolSpec> all_protocols() {
    auto out = table1_protocols();
    out.push_back(protocol_5_mub(MubVariant::bandyopadhyay));
    auto q = single_qubit_protocols();
    out.push_back(q.optimal);
    out.push_back(q.pauli4);
    out.push_back(optimal_gpos_qudit(3));
    out.push_back(pauli_tensor_protocol(3));
    return out;
}

}  // namespace

TEST(protocols, gamma5_matrix) {
    auto spec = protocol_1_optimal();
    ComplexMatrix expected(4, 4);
    expected(0, 1) = 0.5;
    expected(1, 0) = 0.5;
    EXPECT_EQ(spec.elements[4].op, expected);
}

TEST(protocols, gamma14_and_gamma16_matrices) {
    auto spec = protocol_1_optimal();
    ComplexMatrix g14(4, 4);
    g14(1, 2) = -0.5 * kI;
    g14(2, 1) = 0.5 * kI;
    ComplexMatrix g16(4, 4);
    g16(0, 3) = -0.5 * kI;
    g16(3, 0) = 0.5 * kI;
    EXPECT_EQ(spec.elements[13].op, g14);
    EXPECT_EQ(spec.elements[15].op, g16);
}

TEST(protocols, protocol1_hilbert_schmidt_orthogonal) {
    auto spec = protocol_1_optimal();
    for (size_t k = 0; k < 16; k++) {
        for (size_t l = 0; l < 16; l++) {
            Complex t = trace_product(spec.elements[k].op, spec.elements[l].op);
            if (k == l) {
                EXPECT_GT(t.real(), 0.4);
            } else {
                EXPECT_EQ(t, Complex(0)) << k << "," << l;
            }
        }
    }
}

TEST(protocols, protocol1_rotation_matrix_literal) {
    const double s = -1;
    // Row j lists (column, value) of the single nonzero entry.
    const std::pair<size_t, double> entries[16] = {{0, 1},  {7, 1},  {12, 1}, {15, 1}, {1, 1},  {2, s},
                                                   {3, 1},  {4, s},  {13, 1}, {14, s}, {10, 1}, {11, s},
                                                   {8, 1},  {9, s},  {5, 1},  {6, s}};
    RealMatrix expected(16, 16);
    for (size_t r = 0; r < 16; r++) {
        expected(r, entries[r].first) = entries[r].second;
    }
    EXPECT_EQ(protocol_1_optimal().rotation_matrix, expected);
}

TEST(protocols, protocol1_b_vector_mapping) {
    auto spec = protocol_1_optimal();
    auto rho = random_density_matrix(4, shared_rng());
    auto x = vec(rho).values;
    auto b = spec.rotation_matrix * x;
    // b_k in terms of x_l, 1-based, with sign.
    const int map[16] = {1, 8, 13, 16, 2, -3, 4, -5, 14, -15, 11, -12, 9, -10, 6, -7};
    for (size_t k = 0; k < 16; k++) {
        int l = std::abs(map[k]) - 1;
        EXPECT_DOUBLE_EQ(b[k], (map[k] < 0 ? -1 : 1) * x[l]) << "b_" << k + 1;
    }
}

TEST(protocols, protocol1_bell_state_means) {
    auto spec = protocol_1_optimal();
    auto b = spec.rotation_matrix * vec(pure_state(named_state("phi+"))).values;
    for (size_t k = 0; k < 16; k++) {
        double expected = (k == 0 || k == 3 || k == 14) ? 0.5 : 0.0;
        EXPECT_NEAR(b[k], expected, 1e-15) << "b_" << k + 1;
    }
}

TEST(protocols, protocol1_eigenstates_cover_tables) {
    auto spec = protocol_1_optimal();
    EXPECT_EQ(spec.projector_outcomes(), 28u);
    for (size_t k = 0; k < 4; k++) {
        ASSERT_EQ(spec.elements[k].observables[0].spectrum.size(), 1u);
        EXPECT_EQ(spec.elements[k].observables[0].spectrum[0].eigenvalue, 1.0);
    }
    for (size_t k = 4; k < 16; k++) {
        const auto &sp = spec.elements[k].observables[0].spectrum;
        ASSERT_EQ(sp.size(), 2u);
        EXPECT_EQ(sp[0].eigenvalue + sp[1].eigenvalue, 0.0);
        EXPECT_EQ(std::abs(sp[0].eigenvalue), 0.5);
    }
    EXPECT_EQ(spec.elements[12].observables[0].spectrum[0].label, "psi-");
    EXPECT_EQ(spec.elements[7].observables[0].spectrum[0].label, "R0");
}

TEST(protocols, eigen_decompositions_reconstruct_operators) {
    for (const auto &spec : all_protocols()) {
        for (const auto &e : spec.elements) {
            for (const auto &obs : e.observables) {
                ComplexMatrix sum(spec.dim, spec.dim);
                for (const auto &c : obs.spectrum) {
                    EXPECT_NEAR(norm2(c.state), 1.0, 1e-12) << spec.key << " " << c.label;
                    sum += c.eigenvalue * outer(c.state, c.state);
                }
                EXPECT_LT(max_abs_diff(sum, obs.matrix), 1e-12) << spec.key << " " << obs.label;
            }
            if (e.kind == ElementKind::general_operator) {
                ComplexMatrix recombined = e.observables[0].matrix + kI * e.observables[1].matrix;
                EXPECT_LT(max_abs_diff(recombined, e.op), 1e-14) << spec.key << " " << e.label;
            } else {
                EXPECT_LT(max_abs_diff(e.observables[0].matrix, e.op), 1e-15);
            }
        }
    }
}

TEST(protocols, rotation_matrix_matches_trace_oracle) {
    auto &rng = shared_rng();
    for (const auto &spec : all_protocols()) {
        for (int trial = 0; trial < 50; trial++) {
            auto rho = random_density_matrix(spec.dim, rng);
            auto b = spec.rotation_matrix * vec(rho).values;
            size_t row = 0;
            for (const auto &e : spec.elements) {
                Complex t = trace_product(rho.matrix(), e.op);
                if (e.kind == ElementKind::general_operator) {
                    EXPECT_NEAR(b[row++], t.real(), 1e-12);
                    EXPECT_NEAR(b[row++], t.imag(), 1e-12);
                } else {
                    EXPECT_NEAR(t.imag(), 0.0, 1e-12);
                    EXPECT_NEAR(b[row++], t.real(), 1e-12) << spec.key << " " << e.label;
                }
            }
            ASSERT_EQ(row, b.size());
        }
    }
}

TEST(protocols, non_hermitian_element_is_rejected) {
    auto spec = protocol_2_pauli_products();
    spec.elements[5].op(0, 1) = Complex(0, 0.25);
    try {
        build_rotation_matrix(spec);
        FAIL() << "expected rejection";
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find(spec.elements[5].label), std::string::npos) << e.what();
    }
}

TEST(protocols, protocol2_elements) {
    auto spec = protocol_2_pauli_products();
    ASSERT_EQ(spec.elements.size(), 16u);
    EXPECT_EQ(spec.elements[0].op, ComplexMatrix::identity(4));
    std::vector<Complex> zz = {1, -1, -1, 1};
    EXPECT_EQ(spec.elements[15].op, ComplexMatrix::diagonal(zz));
    EXPECT_EQ(spec.elements[4 * 1 + 2 + 1 - 1].op, kron(pauli(1), pauli(2)));
}

TEST(protocols, protocol3_listing_order) {
    auto spec = protocol_3_james();
    const char *names[16] = {"00", "01", "0+", "0L", "10", "11", "1+", "1L",
                             "R0", "R1", "R+", "RL", "+0", "+1", "++", "+R"};
    ASSERT_EQ(spec.elements.size(), 16u);
    for (size_t k = 0; k < 16; k++) {
        EXPECT_EQ(spec.elements[k].label, names[k]);
        EXPECT_NEAR(norm2(spec.elements[k].state), 1.0, 1e-12);
        EXPECT_EQ(spec.elements[k].kind, ElementKind::pure_projector);
    }
}

TEST(protocols, protocol4_all_products) {
    auto spec = protocol_4_separable36();
    EXPECT_EQ(spec.elements.size(), 36u);
    EXPECT_EQ(spec.rotation_matrix.rows(), 36u);
    EXPECT_EQ(spec.rotation_matrix.cols(), 16u);
    std::string qubits = "01+-RL";
    for (char a : qubits) {
        for (char b : qubits) {
            std::string name{a, b};
            size_t hits = 0;
            for (const auto &e : spec.elements) {
                hits += e.label == name;
            }
            EXPECT_EQ(hits, 1u) << name;
        }
    }
}

TEST(protocols, protocol5_variants) {
    for (auto v : {MubVariant::adamson, MubVariant::bandyopadhyay}) {
        auto spec = protocol_5_mub(v);
        EXPECT_EQ(spec.elements.size(), 20u);
        auto lines = mub_overlap_check(v);
        EXPECT_EQ(lines.size(), 320u);
        for (const auto &l : lines) {
            EXPECT_TRUE(l.passed) << l.description;
        }
    }
    EXPECT_EQ(protocol_by_key("5").key, "5");
    EXPECT_EQ(protocol_by_key("5b").name, protocol_5_mub(MubVariant::bandyopadhyay).name);
}

TEST(protocols, mub_bell_like_relations) {
    auto a = mub_local_equivalence_check(MubVariant::adamson);
    ASSERT_EQ(a.size(), 8u);
    for (size_t k = 0; k < 4; k++) {
        EXPECT_TRUE(a[k].passed) << a[k].description;
    }
    auto b = mub_local_equivalence_check(MubVariant::bandyopadhyay);
    for (const auto &l : b) {
        EXPECT_TRUE(l.passed) << l.description;
    }
    // The (SHS x SH) images land on the E states with the opposite pairing.
    auto spec = protocol_5_mub(MubVariant::adamson);
    ComplexMatrix s = phase_gate(), h = hadamard_gate();
    ComplexMatrix w = kron(s * h * s, s * h);
    const std::pair<const char *, size_t> swapped[4] = {{"phi+", 17}, {"phi-", 16}, {"psi+", 19}, {"psi-", 18}};
    for (auto [bell, idx] : swapped) {
        EXPECT_NEAR(std::abs(inner(spec.elements[idx].state, w * named_state(bell))), 1.0, 1e-12) << bell;
    }
}

TEST(protocols, patera_zassenhaus_generators) {
    auto spec = protocol_7_patera_zassenhaus();
    ASSERT_EQ(spec.elements.size(), 16u);
    const auto &b = spec.elements[3].op;
    ComplexMatrix b4 = b * b * b * b;
    EXPECT_LT(max_abs_diff(b4, -1.0 * ComplexMatrix::identity(4)), 1e-15);
    EXPECT_EQ(spec.elements[15].op, ComplexMatrix::identity(4));
    EXPECT_EQ(spec.rotation_matrix.rows(), 32u);
    for (const auto &e : spec.elements) {
        EXPECT_EQ(e.kind, ElementKind::general_operator);
    }
}

TEST(protocols, gellmann_diagonal_elements) {
    auto spec = protocol_6_gellmann();
    EXPECT_LT(max_abs_diff(spec.elements[0].op, 0.5 * ComplexMatrix::identity(4)), 1e-15);
    double s6 = 1 / (2 * std::sqrt(6.0));
    EXPECT_NEAR(spec.elements[3].op(3, 3).real(), -3 * s6, 1e-15);
    auto p1 = protocol_1_optimal();
    for (size_t k = 4; k < 16; k++) {
        EXPECT_EQ(spec.elements[k].op, p1.elements[k].op);
    }
}

TEST(protocols, single_qubit_rotation_matrices) {
    auto q = single_qubit_protocols();
    RealMatrix opt{{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, -1, 0}};
    RealMatrix p4{{0, 2, 0, 0}, {0, 0, -2, 0}, {1, 0, 0, -1}, {1, 0, 0, 1}};
    RealMatrix p3{{0, 2, 0}, {0, 0, -2}, {2, 0, 0}};
    EXPECT_EQ(q.optimal.rotation_matrix, opt);
    EXPECT_EQ(q.pauli4.rotation_matrix, p4);
    EXPECT_EQ(q.pauli3_reduced.rotation_matrix, p3);
    EXPECT_EQ(q.pauli3_reduced.displacement, (RealVector{0, 0, 1}));
    EXPECT_EQ(q.pauli3_reduced.unknowns(), 3u);
}

TEST(protocols, qudit_d2_matches_single_qubit_gpos) {
    auto spec = optimal_gpos_qudit(2);
    ComplexMatrix y{{0, -0.5 * kI}, {0.5 * kI, 0}};
    EXPECT_EQ(spec.elements[3].op, y);
    EXPECT_THROW(optimal_gpos_qudit(1), std::invalid_argument);
}

TEST(protocols, qudit_d4_equals_protocol1_as_sets) {
    auto q = operators_of(optimal_gpos_qudit(4));
    auto p = operators_of(protocol_1_optimal());
    ASSERT_EQ(q.size(), p.size());
    for (const auto &m : p) {
        EXPECT_TRUE(contains_matrix(q, m));
    }
    for (const auto &m : q) {
        EXPECT_TRUE(contains_matrix(p, m));
    }
}

TEST(protocols, pauli_tensor_ordering) {
    auto one = pauli_tensor_protocol(1);
    for (size_t n = 0; n < 4; n++) {
        EXPECT_EQ(one.elements[n].op, pauli(n));
    }
    auto two = pauli_tensor_protocol(2);
    auto p2 = protocol_2_pauli_products();
    for (size_t n = 0; n < 16; n++) {
        EXPECT_EQ(two.elements[n].op, p2.elements[n].op);
    }
    auto three = pauli_tensor_protocol(3);
    // n = 1 + 16 n_1 + 4 n_2 + n_3 with (n_1, n_2, n_3) = (2, 0, 3).
    EXPECT_EQ(three.elements[16 * 2 + 3].op, kron(kron(pauli(2), pauli(0)), pauli(3)));
}

TEST(protocols, cnot_relations) {
    auto lines = cnot_disentangle_check();
    EXPECT_EQ(lines.size(), 8u);
    for (const auto &l : lines) {
        EXPECT_TRUE(l.passed) << l.description;
    }
}

TEST(protocols, lookup_by_key) {
    EXPECT_EQ(protocol_by_key("3").elements.size(), 16u);
    EXPECT_EQ(protocol_by_key("qudit-5").dim, 5u);
    EXPECT_EQ(protocol_by_key("pauli-2").dim, 4u);
    EXPECT_EQ(protocol_by_key("qubit-pauli3").unknowns(), 3u);
    EXPECT_THROW(protocol_by_key("9"), std::invalid_argument);
    EXPECT_THROW(protocol_by_key("qudit-x"), std::invalid_argument);
    EXPECT_THROW(protocol_by_key("qudit-"), std::invalid_argument);
}
