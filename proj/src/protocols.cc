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
#include <stdexcept>

#include <fmt/format.h>

namespace optqst {

namespace {

const double kInvSqrt2 = 1 / std::sqrt(2.0);
const Complex kI(0, 1);

struct LabeledEigenpair {
    double eigenvalue;
    std::string state;
};

EigenComponent component(double eigenvalue, const std::string &name) {
    return EigenComponent{eigenvalue, named_state(name), name};
}

MeasurementElement hermitian_element(std::string label, ComplexMatrix op, std::vector<EigenComponent> spectrum) {
    Observable obs{label, op, std::move(spectrum)};
    MeasurementElement e{ElementKind::hermitian_operator, std::move(label), std::move(op), {}, {}};
    e.observables.push_back(std::move(obs));
    return e;
}

MeasurementElement named_hermitian_element(std::string label, ComplexMatrix op,
                                           const std::vector<LabeledEigenpair> &pairs) {
    std::vector<EigenComponent> spectrum;
    for (const auto &p : pairs) {
        spectrum.push_back(component(p.eigenvalue, p.state));
    }
    return hermitian_element(std::move(label), std::move(op), std::move(spectrum));
}

MeasurementElement projector_element(std::string label, ComplexVector state) {
    ComplexMatrix op = outer(state, state);
    Observable obs{label, op, {EigenComponent{1.0, state, label}}};
    MeasurementElement e{ElementKind::pure_projector, std::move(label), std::move(op), std::move(state), {}};
    e.observables.push_back(std::move(obs));
    return e;
}

MeasurementElement named_projector(const std::string &name) {
    return projector_element(name, named_state(name));
}

std::vector<EigenComponent> numerical_spectrum(const ComplexMatrix &m, const std::string &prefix) {
    auto eig = hermitian_eigen(m);
    std::vector<EigenComponent> spectrum;
    for (size_t k = 0; k < eig.values.size(); k++) {
        if (std::abs(eig.values[k]) < 1e-12) {
            continue;
        }
        spectrum.push_back(EigenComponent{eig.values[k], eig.vectors[k], fmt::format("{}.v{}", prefix, k + 1)});
    }
    return spectrum;
}

MeasurementElement general_element(std::string label, ComplexMatrix op) {
    ComplexMatrix adj = op.adjoint();
    ComplexMatrix re = 0.5 * (op + adj);
    ComplexMatrix im = (op - adj) * Complex(0, -0.5);
    MeasurementElement e{ElementKind::general_operator, label, op, {}, {}};
    e.observables.push_back(Observable{label + ".re", re, numerical_spectrum(re, label + ".re")});
    e.observables.push_back(Observable{label + ".im", im, numerical_spectrum(im, label + ".im")});
    return e;
}

ComplexVector basis_ket(size_t dim, size_t k) {
    ComplexVector v(dim, 0);
    v[k] = 1;
    return v;
}

ComplexMatrix x_operator(size_t dim, size_t k, size_t l) {
    ComplexMatrix m(dim, dim);
    if (k == l) {
        m(k, k) = 1;
    } else {
        m(k, l) = 0.5;
        m(l, k) = 0.5;
    }
    return m;
}

ComplexMatrix y_operator(size_t dim, size_t k, size_t l) {
    ComplexMatrix m(dim, dim);
    m(k, l) = Complex(0, -0.5);
    m(l, k) = Complex(0, 0.5);
    return m;
}

// The 12 X/Y pairs of the optimal two-qubit GPOs, as (k, l) index pairs in listing order.
const std::pair<size_t, size_t> kGammaPairs[6] = {{0, 1}, {0, 2}, {2, 3}, {1, 3}, {1, 2}, {0, 3}};

const std::vector<LabeledEigenpair> kGammaSpectra[16] = {
    {{1.0, "00"}},
    {{1.0, "01"}},
    {{1.0, "10"}},
    {{1.0, "11"}},
    {{0.5, "0+"}, {-0.5, "0-"}},
    {{-0.5, "0R"}, {0.5, "0L"}},
    {{0.5, "+0"}, {-0.5, "-0"}},
    {{-0.5, "R0"}, {0.5, "L0"}},
    {{0.5, "1+"}, {-0.5, "1-"}},
    {{-0.5, "1R"}, {0.5, "1L"}},
    {{0.5, "+1"}, {-0.5, "-1"}},
    {{-0.5, "R1"}, {0.5, "L1"}},
    {{-0.5, "psi-"}, {0.5, "psi+"}},
    {{-0.5, "psibar-"}, {0.5, "psibar+"}},
    {{-0.5, "phi-"}, {0.5, "phi+"}},
    {{-0.5, "phibar-"}, {0.5, "phibar+"}},
};

ComplexMatrix gamma_matrix(size_t k) {
    if (k < 4) {
        return x_operator(4, k, k);
    }
    auto [a, b] = kGammaPairs[(k - 4) / 2];
    return (k % 2 == 0) ? x_operator(4, a, b) : y_operator(4, a, b);
}

MeasurementElement gamma_element(size_t k) {
    return named_hermitian_element(fmt::format("gamma_{}", k + 1), gamma_matrix(k), kGammaSpectra[k]);
}

const std::vector<LabeledEigenpair> kPauliSpectra[4] = {
    {{1.0, "0"}, {1.0, "1"}},
    {{1.0, "+"}, {-1.0, "-"}},
    {{1.0, "L"}, {-1.0, "R"}},
    {{1.0, "0"}, {-1.0, "1"}},
};

MeasurementElement pauli_product_element(const std::vector<size_t> &indices) {
    ComplexMatrix op = ComplexMatrix::identity(1);
    std::vector<EigenComponent> spectrum{EigenComponent{1.0, ComplexVector{1}, ""}};
    std::string label;
    for (size_t n : indices) {
        op = kron(op, pauli(n));
        std::vector<EigenComponent> next;
        for (const auto &c : spectrum) {
            for (const auto &p : kPauliSpectra[n]) {
                next.push_back(EigenComponent{c.eigenvalue * p.eigenvalue, kron(c.state, named_state(p.state)),
                                              c.label + p.state});
            }
        }
        spectrum = std::move(next);
        label += label.empty() ? "" : "x";
        label += fmt::format("s{}", n);
    }
    return hermitian_element(std::move(label), std::move(op), std::move(spectrum));
}

ComplexVector superpose(const std::string &a, Complex phase, const std::string &b) {
    ComplexVector va = named_state(a);
    ComplexVector vb = named_state(b);
    ComplexVector v(va.size());
    for (size_t k = 0; k < v.size(); k++) {
        v[k] = kInvSqrt2 * (va[k] + phase * vb[k]);
    }
    return v;
}

std::string phase_label(Complex phase) {
    if (phase == Complex(1)) {
        return "+";
    }
    if (phase == Complex(-1)) {
        return "-";
    }
    return phase.imag() > 0 ? "+i" : "-i";
}

MeasurementElement superposition_projector(const std::string &a, Complex phase, const std::string &b) {
    return projector_element(fmt::format("({}{}{})", a, phase_label(phase), b), superpose(a, phase, b));
}

ComplexMatrix matrix_power(const ComplexMatrix &m, int n) {
    ComplexMatrix r = ComplexMatrix::identity(m.rows());
    for (int k = 0; k < n; k++) {
        r = r * m;
    }
    return r;
}

ProtocolSpec finish(ProtocolSpec spec) {
    spec.rotation_matrix = build_rotation_matrix(spec);
    if (spec.trace_constrained) {
        RealMatrix full = build_full_rotation_matrix(spec);
        spec.displacement = full.col(last_diagonal_slot(spec.dim));
        for (double &v : spec.displacement) {
            v = 0.0 - v;
        }
    } else {
        spec.displacement.assign(spec.rotation_matrix.rows(), 0.0);
    }
    return spec;
}

ProtocolSpec projector_protocol(std::string key, int id, std::string name, const std::vector<std::string> &states,
                                Locality locality = Locality::local) {
    ProtocolSpec spec;
    spec.key = std::move(key);
    spec.id = id;
    spec.name = std::move(name);
    spec.dim = 4;
    spec.locality = locality;
    for (const auto &s : states) {
        spec.elements.push_back(named_projector(s));
    }
    spec.construction = "pure-state projectors";
    return spec;
}

CheckLine check_line(std::string description, double error, double tol) {
    return CheckLine{std::move(description), error, error <= tol};
}

}  // namespace

std::string_view to_string(ElementKind kind) {
    switch (kind) {
        case ElementKind::hermitian_operator:
            return "hermitian_operator";
        case ElementKind::pure_projector:
            return "pure_projector";
        case ElementKind::general_operator:
            return "general_operator";
    }
    return "unknown";
}

std::string_view to_string(Locality locality) {
    return locality == Locality::local ? "local" : "local & global";
}

size_t ProtocolSpec::row_count() const {
    size_t n = 0;
    for (const auto &e : elements) {
        n += e.kind == ElementKind::general_operator ? e.observables.size() : 1;
    }
    return n;
}

size_t ProtocolSpec::projector_outcomes() const {
    std::vector<const ComplexVector *> distinct;
    for (const auto &e : elements) {
        for (const auto &obs : e.observables) {
            for (const auto &c : obs.spectrum) {
                bool seen = false;
                for (const auto *v : distinct) {
                    if (std::abs(std::abs(inner(*v, c.state)) - 1) < 1e-9) {
                        seen = true;
                        break;
                    }
                }
                if (!seen) {
                    distinct.push_back(&c.state);
                }
            }
        }
    }
    return distinct.size();
}

RealMatrix build_full_rotation_matrix(const ProtocolSpec &spec) {
    size_t d = spec.dim;
    auto slots = vec_slots(d);
    std::vector<std::pair<const MeasurementElement *, const ComplexMatrix *>> rows;
    for (const auto &e : spec.elements) {
        if (e.op.rows() != d || e.op.cols() != d) {
            throw std::invalid_argument(fmt::format("element '{}' of protocol '{}' is {}x{}, expected {}x{}", e.label,
                                                    spec.key, e.op.rows(), e.op.cols(), d, d));
        }
        if (e.kind == ElementKind::general_operator) {
            for (const auto &obs : e.observables) {
                rows.emplace_back(&e, &obs.matrix);
            }
        } else {
            rows.emplace_back(&e, &e.op);
        }
    }
    RealMatrix a(rows.size(), slots.size());
    for (size_t r = 0; r < rows.size(); r++) {
        const ComplexMatrix &m = *rows[r].second;
        double worst = 0;
        for (size_t i = 0; i < slots.size(); i++) {
            const auto &s = slots[i];
            Complex t;
            switch (s.part) {
                case VecSlot::Part::diagonal:
                    t = m(s.row, s.row);
                    break;
                case VecSlot::Part::real:
                    t = m(s.col, s.row) + m(s.row, s.col);
                    break;
                case VecSlot::Part::imag:
                    t = kI * m(s.col, s.row) - kI * m(s.row, s.col);
                    break;
            }
            worst = std::max(worst, std::abs(t.imag()));
            a(r, i) = t.real();
        }
        if (worst > 1e-10) {
            throw std::invalid_argument(fmt::format(
                "element '{}' of protocol '{}' gives a complex rotation-matrix row (imaginary residue {:.3g}); "
                "it is not Hermitian",
                rows[r].first->label, spec.key, worst));
        }
    }
    return a;
}

RealMatrix build_rotation_matrix(const ProtocolSpec &spec) {
    RealMatrix full = build_full_rotation_matrix(spec);
    if (!spec.trace_constrained) {
        return full;
    }
    size_t d = spec.dim;
    size_t last = last_diagonal_slot(d);
    auto slots = vec_slots(d);
    RealMatrix reduced(full.rows(), last);
    for (size_t r = 0; r < full.rows(); r++) {
        for (size_t c = 0; c < last; c++) {
            reduced(r, c) = full(r, c);
            if (slots[c].part == VecSlot::Part::diagonal) {
                reduced(r, c) -= full(r, last);
            }
        }
    }
    return reduced;
}

ComplexMatrix pauli(size_t k) {
    switch (k) {
        case 0:
            return ComplexMatrix{{1, 0}, {0, 1}};
        case 1:
            return ComplexMatrix{{0, 1}, {1, 0}};
        case 2:
            return ComplexMatrix{{0, -kI}, {kI, 0}};
        case 3:
            return ComplexMatrix{{1, 0}, {0, -1}};
        default:
            throw std::out_of_range(fmt::format("Pauli index {} out of range 0..3", k));
    }
}

ComplexMatrix phase_gate() {
    return ComplexMatrix{{1, 0}, {0, kI}};
}

ComplexMatrix hadamard_gate() {
    return ComplexMatrix{{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
}

ComplexMatrix cnot_gate() {
    return ComplexMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
}

ProtocolSpec protocol_1_optimal() {
    ProtocolSpec spec;
    spec.key = "1";
    spec.id = 1;
    spec.name = "optimal GPOs";
    spec.dim = 4;
    spec.locality = Locality::local_and_global;
    for (size_t k = 0; k < 16; k++) {
        spec.elements.push_back(gamma_element(k));
    }
    spec.construction = "Hermitian operators with analytic eigen-decompositions";
    return finish(std::move(spec));
}

ProtocolSpec protocol_2_pauli_products() {
    ProtocolSpec spec;
    spec.key = "2";
    spec.id = 2;
    spec.name = "Pauli operators";
    spec.dim = 4;
    for (size_t i = 0; i < 4; i++) {
        for (size_t j = 0; j < 4; j++) {
            spec.elements.push_back(pauli_product_element({i, j}));
        }
    }
    spec.construction = "Hermitian operators with analytic eigen-decompositions";
    return finish(std::move(spec));
}

ProtocolSpec protocol_3_james() {
    return finish(projector_protocol("3", 3, "James et al.",
                                     {"00", "01", "0+", "0L", "10", "11", "1+", "1L", "R0", "R1", "R+", "RL", "+0",
                                      "+1", "++", "+R"}));
}

ProtocolSpec protocol_4_separable36() {
    return finish(projector_protocol(
        "4", 4, "standard separable",
        {"00", "01", "10", "11", "++", "-+", "+-", "--", "0+", "0-", "+0", "-0", "1+", "1-", "+1", "-1", "0R", "R0",
         "1R", "R1", "0L", "L0", "1L", "L1", "R+", "R-", "+R", "-R", "L+", "L-", "+L", "-L", "RR", "RL", "LR", "LL"}));
}

ProtocolSpec protocol_5_mub(MubVariant variant) {
    ProtocolSpec spec;
    if (variant == MubVariant::adamson) {
        spec = projector_protocol("5", 5, "mutually unbiased bases",
                                  {"00", "01", "10", "11", "R+", "R-", "L+", "L-", "+R", "-R", "+L", "-L"},
                                  Locality::local_and_global);
        spec.elements.push_back(superposition_projector("R0", kI, "L1"));
        spec.elements.push_back(superposition_projector("R0", -kI, "L1"));
        spec.elements.push_back(superposition_projector("R1", kI, "L0"));
        spec.elements.push_back(superposition_projector("R1", -kI, "L0"));
        spec.elements.push_back(superposition_projector("RR", kI, "LL"));
        spec.elements.push_back(superposition_projector("RR", -kI, "LL"));
        spec.elements.push_back(superposition_projector("RL", kI, "LR"));
        spec.elements.push_back(superposition_projector("RL", -kI, "LR"));
    } else {
        spec = projector_protocol("5b", 5, "mutually unbiased bases (alternative)",
                                  {"00", "01", "10", "11", "++", "-+", "+-", "--", "RR", "RL", "LR", "LL"},
                                  Locality::local_and_global);
        spec.elements.push_back(superposition_projector("L0", 1, "R1"));
        spec.elements.push_back(superposition_projector("L0", -1, "R1"));
        spec.elements.push_back(superposition_projector("R0", 1, "L1"));
        spec.elements.push_back(superposition_projector("R0", -1, "L1"));
        spec.elements.push_back(superposition_projector("0L", 1, "1R"));
        spec.elements.push_back(superposition_projector("0L", -1, "1R"));
        spec.elements.push_back(superposition_projector("0R", 1, "1L"));
        spec.elements.push_back(superposition_projector("0R", -1, "1L"));
    }
    return finish(std::move(spec));
}

ProtocolSpec protocol_6_gellmann() {
    ProtocolSpec spec;
    spec.key = "6";
    spec.id = 6;
    spec.name = "Gell-Mann GPOs";
    spec.dim = 4;
    spec.locality = Locality::local_and_global;
    const double s3 = 1 / (2 * std::sqrt(3.0));
    const double s6 = 1 / (2 * std::sqrt(6.0));
    const std::vector<std::vector<double>> diagonals = {
        {0.5, 0.5, 0.5, 0.5}, {0.5, -0.5, 0, 0}, {s3, s3, -2 * s3, 0}, {s6, s6, s6, -3 * s6}};
    const char *names[4] = {"00", "01", "10", "11"};
    for (size_t k = 0; k < diagonals.size(); k++) {
        std::vector<Complex> diag(diagonals[k].begin(), diagonals[k].end());
        std::vector<LabeledEigenpair> pairs;
        for (size_t j = 0; j < 4; j++) {
            if (diagonals[k][j] != 0) {
                pairs.push_back({diagonals[k][j], names[j]});
            }
        }
        spec.elements.push_back(
            named_hermitian_element(fmt::format("Gamma_{}", k + 1), ComplexMatrix::diagonal(diag), pairs));
    }
    for (size_t k = 4; k < 16; k++) {
        auto e = gamma_element(k);
        e.label = fmt::format("Gamma_{}", k + 1);
        e.observables[0].label = e.label;
        spec.elements.push_back(std::move(e));
    }
    spec.construction = "Hermitian operators with analytic eigen-decompositions";
    return finish(std::move(spec));
}

ProtocolSpec protocol_7_patera_zassenhaus() {
    ProtocolSpec spec;
    spec.key = "7";
    spec.id = 7;
    spec.name = "Patera-Zassenhaus GPOs";
    spec.dim = 4;
    spec.locality = Locality::local_and_global;
    Complex w = std::polar(1.0, M_PI / 4);
    std::vector<Complex> dd = {w, w * kI, -w, -w * kI};
    ComplexMatrix d = ComplexMatrix::diagonal(dd);
    ComplexMatrix b{{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}};
    std::vector<std::pair<int, int>> powers = {{0, 1}, {0, 2}, {0, 3}, {1, 0}, {2, 0}, {3, 0}, {1, 1}, {1, 2},
                                               {1, 3}, {2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {3, 3}, {0, 0}};
    for (size_t k = 0; k < powers.size(); k++) {
        auto [pb, pd] = powers[k];
        spec.elements.push_back(
            general_element(fmt::format("Gamma_{}", k + 1), matrix_power(b, pb) * matrix_power(d, pd)));
    }
    spec.construction =
        "non-Hermitian operators; each contributes Re and Im rows from its Hermitian and anti-Hermitian parts "
        "(32x16)";
    return finish(std::move(spec));
}

ProtocolSpec optimal_gpos_qudit(size_t d) {
    if (d < 2) {
        throw std::invalid_argument(fmt::format("qudit dimension must be at least 2, got {}", d));
    }
    ProtocolSpec spec;
    spec.key = fmt::format("qudit-{}", d);
    spec.name = fmt::format("optimal GPOs, d={}", d);
    spec.dim = d;
    spec.locality = Locality::local_and_global;
    for (size_t k = 0; k < d; k++) {
        spec.elements.push_back(hermitian_element(fmt::format("X_{}{}", k, k), x_operator(d, k, k),
                                                  {EigenComponent{1.0, basis_ket(d, k), fmt::format("|{}>", k)}}));
    }
    for (size_t k = 0; k < d; k++) {
        for (size_t l = k + 1; l < d; l++) {
            auto mix = [&](Complex phase) {
                ComplexVector v(d, 0);
                v[k] = kInvSqrt2;
                v[l] = phase * kInvSqrt2;
                return v;
            };
            spec.elements.push_back(hermitian_element(
                fmt::format("X_{}{}", k, l), x_operator(d, k, l),
                {EigenComponent{0.5, mix(1), fmt::format("|{}>+|{}>", k, l)},
                 EigenComponent{-0.5, mix(-1), fmt::format("|{}>-|{}>", k, l)}}));
            spec.elements.push_back(hermitian_element(
                fmt::format("Y_{}{}", k, l), y_operator(d, k, l),
                {EigenComponent{0.5, mix(kI), fmt::format("|{}>+i|{}>", k, l)},
                 EigenComponent{-0.5, mix(-kI), fmt::format("|{}>-i|{}>", k, l)}}));
        }
    }
    spec.construction = "Hermitian operators with analytic eigen-decompositions";
    return finish(std::move(spec));
}

ProtocolSpec pauli_tensor_protocol(size_t n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("pauli_tensor_protocol needs at least one qubit");
    }
    if (n_qubits > 4) {
        throw std::invalid_argument(fmt::format("pauli_tensor_protocol supports up to 4 qubits, got {}", n_qubits));
    }
    ProtocolSpec spec;
    spec.key = fmt::format("pauli-{}", n_qubits);
    spec.name = fmt::format("Pauli products, {} qubit{}", n_qubits, n_qubits == 1 ? "" : "s");
    spec.dim = size_t{1} << n_qubits;
    size_t count = spec.dim * spec.dim;
    for (size_t n = 0; n < count; n++) {
        std::vector<size_t> digits(n_qubits);
        size_t rest = n;
        for (size_t q = n_qubits; q-- > 0;) {
            digits[q] = rest % 4;
            rest /= 4;
        }
        spec.elements.push_back(pauli_product_element(digits));
    }
    spec.construction = "Hermitian operators with analytic eigen-decompositions";
    return finish(std::move(spec));
}

SingleQubitProtocols single_qubit_protocols() {
    SingleQubitProtocols out;
    out.optimal = optimal_gpos_qudit(2);
    out.optimal.key = "qubit-optimal";
    out.optimal.name = "single-qubit optimal GPOs";

    ProtocolSpec p4;
    p4.key = "qubit-pauli4";
    p4.name = "single-qubit Pauli operators with identity";
    p4.dim = 2;
    for (size_t n : {1, 2, 3, 0}) {
        p4.elements.push_back(pauli_product_element({n}));
    }
    p4.construction = "Hermitian operators with analytic eigen-decompositions";
    out.pauli4 = finish(p4);

    ProtocolSpec p3 = p4;
    p3.key = "qubit-pauli3";
    p3.name = "single-qubit Pauli operators, unit trace";
    p3.elements.pop_back();
    p3.trace_constrained = true;
    p3.construction = "Hermitian operators; last diagonal unknown eliminated by Tr(rho) = 1";
    out.pauli3_reduced = finish(p3);
    return out;
}

std::vector<ProtocolSpec> table1_protocols() {
    return {protocol_1_optimal(), protocol_2_pauli_products(), protocol_3_james(),         protocol_4_separable36(),
            protocol_5_mub(),     protocol_6_gellmann(),       protocol_7_patera_zassenhaus()};
}

std::vector<std::string> known_protocol_keys() {
    return {"1", "2", "3", "4", "5", "5a", "5b", "6", "7", "qubit-optimal", "qubit-pauli4", "qubit-pauli3",
            "qudit-<d>", "pauli-<n>"};
}

ProtocolSpec protocol_by_key(std::string_view key) {
    auto parse_count = [&](std::string_view prefix) -> size_t {
        std::string rest(key.substr(prefix.size()));
        size_t pos = 0;
        size_t value = 0;
        try {
            value = std::stoul(rest, &pos);
        } catch (const std::exception &) {
            pos = 0;
        }
        if (rest.empty() || pos != rest.size()) {
            throw std::invalid_argument(fmt::format("malformed protocol key '{}'", key));
        }
        return value;
    };
    if (key == "1") return protocol_1_optimal();
    if (key == "2") return protocol_2_pauli_products();
    if (key == "3") return protocol_3_james();
    if (key == "4") return protocol_4_separable36();
    if (key == "5" || key == "5a") return protocol_5_mub(MubVariant::adamson);
    if (key == "5b") return protocol_5_mub(MubVariant::bandyopadhyay);
    if (key == "6") return protocol_6_gellmann();
    if (key == "7") return protocol_7_patera_zassenhaus();
    if (key == "qubit-optimal") return single_qubit_protocols().optimal;
    if (key == "qubit-pauli4") return single_qubit_protocols().pauli4;
    if (key == "qubit-pauli3") return single_qubit_protocols().pauli3_reduced;
    if (key.starts_with("qudit-")) return optimal_gpos_qudit(parse_count("qudit-"));
    if (key.starts_with("pauli-")) return pauli_tensor_protocol(parse_count("pauli-"));
    std::string known;
    for (const auto &k : known_protocol_keys()) {
        known += (known.empty() ? "" : ", ") + k;
    }
    throw std::invalid_argument(fmt::format("unknown protocol '{}' (known: {})", key, known));
}

std::vector<CheckLine> cnot_disentangle_check(double tol) {
    std::vector<CheckLine> lines;
    ComplexMatrix u = cnot_gate();
    const std::pair<size_t, size_t> pairs[4] = {{13, 11}, {14, 12}, {15, 7}, {16, 8}};
    for (auto [k, kp] : pairs) {
        double err = max_abs_diff(u * gamma_matrix(k - 1) * u, gamma_matrix(kp - 1));
        lines.push_back(check_line(fmt::format("U_CNOT gamma_{} U_CNOT = gamma_{}", k, kp), err, tol));
    }
    ComplexMatrix g13 = gamma_matrix(12);
    ComplexMatrix s = phase_gate();
    ComplexMatrix id = ComplexMatrix::identity(2);
    ComplexMatrix x = pauli(1);
    ComplexMatrix l14 = kron(s, id);
    ComplexMatrix l15 = kron(id, x);
    ComplexMatrix l16 = kron(s, x);
    lines.push_back(check_line("gamma_14 = (S x I) gamma_13 (S^dag x I)",
                               max_abs_diff(l14 * g13 * l14.adjoint(), gamma_matrix(13)), tol));
    lines.push_back(check_line("gamma_15 = (I x sigma_1) gamma_13 (I x sigma_1)",
                               max_abs_diff(l15 * g13 * l15.adjoint(), gamma_matrix(14)), tol));
    lines.push_back(check_line("gamma_16 = (S x sigma_1) gamma_13 (S^dag x sigma_1)",
                               max_abs_diff(l16 * g13 * l16.adjoint(), gamma_matrix(15)), tol));
    lines.push_back(check_line("U_CNOT (U_CNOT gamma_13 U_CNOT) U_CNOT = gamma_13", max_abs_diff(u * (u * g13 * u) * u, g13),
                               tol));
    return lines;
}

std::vector<CheckLine> mub_overlap_check(MubVariant variant, double tol) {
    auto spec = protocol_5_mub(variant);
    const char *bases = "ABCDE";
    std::vector<CheckLine> lines;
    for (size_t x = 0; x < 5; x++) {
        for (size_t y = 0; y < 5; y++) {
            if (x == y) {
                continue;
            }
            for (size_t m = 0; m < 4; m++) {
                for (size_t n = 0; n < 4; n++) {
                    const auto &a = spec.elements[4 * x + m];
                    const auto &b = spec.elements[4 * y + n];
                    double err = std::abs(std::abs(inner(a.state, b.state)) - 0.5);
                    lines.push_back(check_line(
                        fmt::format("|<{}{}|{}{}>| = 1/2 ({} vs {})", bases[x], m + 1, bases[y], n + 1, a.label, b.label),
                        err, tol));
                }
            }
        }
    }
    return lines;
}

std::vector<CheckLine> mub_local_equivalence_check(MubVariant variant, double tol) {
    auto spec = protocol_5_mub(variant);
    ComplexMatrix s = phase_gate();
    ComplexMatrix h = hadamard_gate();
    ComplexMatrix id = ComplexMatrix::identity(2);
    struct Relation {
        char basis;
        ComplexMatrix u;
        std::string u_label;
    };
    std::vector<Relation> relations;
    if (variant == MubVariant::adamson) {
        relations.push_back({'D', kron(s * h * s, pauli(2)), "SHS x sigma_2"});
        relations.push_back({'E', kron(s * h * s, s * h), "SHS x SH"});
    } else {
        relations.push_back({'D', kron(s * h, id), "SH x I"});
        relations.push_back({'E', kron(id, s * h), "I x SH"});
    }
    const char *bells[4] = {"phi+", "phi-", "psi+", "psi-"};
    std::vector<CheckLine> lines;
    for (const auto &rel : relations) {
        size_t offset = rel.basis == 'D' ? 12 : 16;
        for (size_t n = 0; n < 4; n++) {
            const auto &target = spec.elements[offset + n];
            double ov = std::abs(inner(target.state, rel.u * named_state(bells[n])));
            lines.push_back(check_line(fmt::format("|<{}{} {}|({}) {}>| = 1", rel.basis, n + 1, target.label,
                                                   rel.u_label, bells[n]),
                                       std::abs(ov - 1), tol));
        }
    }
    return lines;
}

}  // namespace optqst
