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

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "optqst/conditioning.h"
#include "optqst/optics.h"
#include "optqst/protocols.h"
#include "optqst/simulate.h"
#include "optqst/states.h"

using namespace optqst;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            passed = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v) {
    return fmt::format("{:.6g}", v);
}

double relative_error(const RealVector &a, const RealVector &b) {
    double m = 0;
    for (size_t i = 0; i < a.size(); i++) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

Outcome criterion_table1() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    auto cells = check_table1(table1_report());
    double elapsed = seconds_since(t0);
    size_t passed = 0;
    for (const auto &c : cells) {
        if (c.passed) {
            passed++;
        } else {
            o.require(false, fmt::format("protocol {} {} = {} but table gives {}", c.id, c.column, num(c.actual),
                                         num(c.expected)));
        }
    }
    o.require(elapsed < 1.0, fmt::format("runtime {} s", num(elapsed)));
    o.detail = fmt::format("{}/{} cells, {} s{}{}", passed, cells.size(), num(elapsed), o.detail.empty() ? "" : "; ",
                           o.detail);
    return o;
}

Outcome criterion_protocol1_matrix() {
    Outcome o;
    const double s = -1;
    const std::pair<size_t, double> entries[16] = {{0, 1},  {7, 1},  {12, 1}, {15, 1}, {1, 1},  {2, s},
                                                   {3, 1},  {4, s},  {13, 1}, {14, s}, {10, 1}, {11, s},
                                                   {8, 1},  {9, s},  {5, 1},  {6, s}};
    RealMatrix expected(16, 16);
    for (size_t r = 0; r < 16; r++) {
        expected(r, entries[r].first) = entries[r].second;
    }
    const auto &a = protocol_1_optimal().rotation_matrix;
    o.require(a == expected, "rotation matrix differs from the printed one");
    auto sv = singular_values(a);
    double worst = 0;
    for (double v : sv) {
        worst = std::max(worst, std::abs(v - 1));
    }
    o.require(sv.size() == 16 && worst <= 1e-12, fmt::format("singular values deviate from 1 by {}", num(worst)));
    if (o.passed) {
        o.detail = fmt::format("exact match, max |sigma - 1| = {}", num(worst));
    }
    return o;
}

Outcome criterion_worked_example() {
    Outcome o;
    RealMatrix a{{6, 7}, {5, 6}};
    auto k = condition_number(a);
    o.require(!k.singular && k.value >= 145.9 && k.value <= 146.1, fmt::format("kappa = {}", num(k.value)));
    RealVector b1{0.7, 0.6}, b2{0.71, 0.59};
    auto x1 = least_squares_solve(a, std::span<const double>(b1));
    auto x2 = least_squares_solve(a, std::span<const double>(b2));
    double e1 = relative_error(x1, {0, 0.1});
    double e2 = relative_error(x2, {0.13, -0.01});
    o.require(e1 <= 1e-12, fmt::format("x = [{}, {}]", num(x1[0]), num(x1[1])));
    o.require(e2 <= 1e-12, fmt::format("x' = [{}, {}]", num(x2[0]), num(x2[1])));
    if (o.passed) {
        o.detail = fmt::format("kappa = {}, solution errors {} and {}", num(k.value), num(e1), num(e2));
    }
    return o;
}

Outcome criterion_single_qubit() {
    Outcome o;
    auto q = single_qubit_protocols();
    RealMatrix opt{{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, -1, 0}};
    RealMatrix p4{{0, 2, 0, 0}, {0, 0, -2, 0}, {1, 0, 0, -1}, {1, 0, 0, 1}};
    RealMatrix p3{{0, 2, 0}, {0, 0, -2}, {2, 0, 0}};
    o.require(q.optimal.rotation_matrix == opt, "optimal single-qubit A differs");
    o.require(q.pauli4.rotation_matrix == p4, "four-Pauli A differs");
    o.require(q.pauli3_reduced.rotation_matrix == p3, "reduced three-Pauli A differs");
    o.require(q.pauli3_reduced.displacement == RealVector{0, 0, 1}, "displacement is not [0, 0, 1]");
    const std::pair<const ProtocolSpec *, double> kappas[] = {
        {&q.optimal, 1.0}, {&q.pauli4, std::sqrt(2.0)}, {&q.pauli3_reduced, 1.0}};
    for (const auto &[spec, want] : kappas) {
        auto k = condition_number(spec->rotation_matrix);
        o.require(!k.singular && std::abs(k.value - want) <= 1e-12,
                  fmt::format("{} kappa = {}", spec->key, num(k.value)));
    }
    std::mt19937_64 rng(4);
    double worst = 0;
    NoiseModel ideal;
    for (int t = 0; t < 200; t++) {
        auto rho = random_density_matrix(2, rng);
        auto r = reconstruct(measure(rho, q.pauli3_reduced, ideal, rng), q.pauli3_reduced);
        worst = std::max(worst, max_abs_diff(r.rho.matrix(), rho.matrix()));
    }
    o.require(worst <= 1e-12, fmt::format("round-trip error {}", num(worst)));
    if (o.passed) {
        o.detail = fmt::format("A exact, kappa 1, sqrt 2, 1; 200 reduced round trips within {}", num(worst));
    }
    return o;
}

Outcome criterion_qudit() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    for (size_t d = 2; d <= 8; d++) {
        auto k = condition_number(optimal_gpos_qudit(d).rotation_matrix);
        o.require(!k.singular && std::abs(k.value - 1) <= 1e-10, fmt::format("d = {} kappa = {}", d, num(k.value)));
    }
    for (size_t n = 1; n <= 3; n++) {
        auto k = condition_number(pauli_tensor_protocol(n).rotation_matrix);
        o.require(!k.singular && std::abs(k.value - std::sqrt(2.0)) <= 1e-10,
                  fmt::format("N = {} kappa = {}", n, num(k.value)));
    }
    auto q = optimal_gpos_qudit(4);
    auto p = protocol_1_optimal();
    auto contains = [](const ProtocolSpec &spec, const ComplexMatrix &m) {
        for (const auto &e : spec.elements) {
            if (max_abs_diff(e.op, m) < 1e-14) {
                return true;
            }
        }
        return false;
    };
    bool same = q.elements.size() == p.elements.size();
    for (const auto &e : p.elements) {
        same = same && contains(q, e.op);
    }
    o.require(same, "d = 4 set differs from protocol 1");
    double elapsed = seconds_since(t0);
    o.require(elapsed < 5.0, fmt::format("runtime {} s", num(elapsed)));
    if (o.passed) {
        o.detail = fmt::format("d = 2..8 kappa 1, N = 1..3 kappa sqrt 2, d = 4 set equal, {} s", num(elapsed));
    }
    return o;
}

Outcome criterion_perturbation() {
    Outcome o;
    auto protocols = table1_protocols();
    std::mt19937_64 rng(6);
    std::normal_distribution<double> noise;
    size_t violations = 0, p1_trials = 0;
    double p1_worst = 0, solve_worst = 0;
    const size_t trials = 1000;
    for (size_t t = 0; t < trials; t++) {
        const auto &spec = protocols[t % protocols.size()];
        const auto &a = spec.rotation_matrix;
        auto x = vec(random_density_matrix(4, rng)).values;
        auto b = a * x;
        RealVector db(b.size()), bp(b.size());
        double scale = std::pow(10.0, -1 - 3 * std::uniform_real_distribution<double>()(rng));
        for (size_t i = 0; i < b.size(); i++) {
            db[i] = scale * noise(rng);
            bp[i] = b[i] + db[i];
        }
        auto rep = perturbation_bound_check(a, b, db);
        auto xp = least_squares_solve(a, std::span<const double>(bp));
        RealVector dx(x.size());
        for (size_t i = 0; i < x.size(); i++) {
            dx[i] = xp[i] - x[i];
        }
        double rel_dx = norm2(dx) / norm2(x);
        solve_worst = std::max(solve_worst, std::abs(rel_dx - rep.relative_dx) / rel_dx);
        bool upper_ok = rel_dx <= condition_number(a).value * norm2(db) / norm2(b) * (1 + 1e-9);
        if (!rep.bounds_hold || !upper_ok) {
            violations++;
        }
        if (spec.id == 1) {
            p1_trials++;
            p1_worst = std::max(p1_worst, std::abs(rep.amplification - 1));
        }
    }
    o.require(violations == 0, fmt::format("{} bound violations", violations));
    o.require(p1_worst <= 1e-9, fmt::format("protocol 1 amplification off by {}", num(p1_worst)));
    o.require(solve_worst <= 1e-9, fmt::format("independent solve disagrees by {}", num(solve_worst)));
    if (o.passed) {
        o.detail = fmt::format("{} trials, 0 violations, protocol 1 amplification within {} of 1 on {} trials", trials,
                               num(p1_worst), p1_trials);
    }
    return o;
}

Outcome criterion_gastinel_kahan() {
    Outcome o;
    size_t checked = 0;
    for (const auto &spec : table1_protocols()) {
        const auto &a = spec.rotation_matrix;
        if (a.rows() != a.cols()) {
            continue;
        }
        checked++;
        auto gk = gastinel_kahan_distance(a);
        auto sv = singular_values(gk.nearest_singular);
        auto k = condition_number(a);
        double rel = spectral_norm(a - gk.nearest_singular) / spectral_norm(a);
        o.require(sv.back() < 1e-10 * sv.front(), fmt::format("protocol {} nearest matrix not singular", spec.id));
        o.require(std::abs(rel - 1 / k.value) <= 1e-9 * (1 / k.value),
                  fmt::format("protocol {} distance {} vs 1/kappa {}", spec.id, num(rel), num(1 / k.value)));
    }
    if (o.passed) {
        o.detail = fmt::format("{} square protocols (1, 2, 3, 6)", checked);
    }
    return o;
}

Outcome criterion_optics() {
    Outcome o;
    double worst_row = 0;
    for (const auto &row : table2_rows()) {
        worst_row = std::max(worst_row, std::abs(verify_table2(row) - 1));
    }
    for (const auto &row : table3_rows()) {
        worst_row = std::max(worst_row, std::abs(verify_table3(row) - 1));
    }
    o.require(table2_rows().size() == 20 && table3_rows().size() == 8, "table sizes");
    o.require(worst_row <= 1e-10, fmt::format("table row fidelity off by {}", num(worst_row)));
    size_t lines = 0;
    auto check_all = [&](const std::vector<CheckLine> &checks) {
        for (const auto &l : checks) {
            lines++;
            o.require(l.passed, l.description);
        }
    };
    check_all(beam_splitter_identity_check(1e-12));
    check_all(cnot_disentangle_check(1e-12));
    check_all(setup2_disentangle_check(1e-12));

    auto signature = [&](const char *state, const std::vector<std::string> &heralds) {
        auto events = classify_coincidence(beam_splitter(dual_rail(named_state(state))));
        double total = 0, heralded = 0;
        for (const auto &e : events) {
            total += e.probability;
            for (const auto &h : heralds) {
                if (e.detectors == h) {
                    heralded += e.probability;
                }
            }
        }
        o.require(std::abs(total - 1) <= 1e-12, fmt::format("{} total probability {}", state, num(total)));
        o.require(std::abs(heralded - 1) <= 1e-12, fmt::format("{} heralded probability {}", state, num(heralded)));
    };
    signature("psi-", {"D1H&D2V", "D1V&D2H"});
    signature("psi+", {"D1H&D1V", "D2H&D2V"});
    if (o.passed) {
        o.detail = fmt::format("28 table rows within {}, {} identity/CNOT checks, both coincidence signatures",
                               num(worst_row), lines);
    }
    return o;
}

Outcome criterion_monte_carlo() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig c;
    c.protocols = {"1", "2", "3"};
    c.random_states = 400;
    NoiseModel n;
    n.mode = NoiseMode::poisson;
    n.shots = 1e4;
    c.noise_levels = {n};
    c.seed = 2015;
    auto result = robustness_experiment(c);
    double elapsed = seconds_since(t0);
    std::vector<double> td;
    for (const auto &row : result.summary) {
        td.push_back(row.mean_trace_distance);
    }
    o.require(td.size() == 3, "missing summary rows");
    if (td.size() == 3) {
        o.require(td[0] <= td[1] && td[1] <= td[2],
                  fmt::format("ordering broken: {}, {}, {}", num(td[0]), num(td[1]), num(td[2])));
    }
    o.require(elapsed < 60, fmt::format("runtime {} s", num(elapsed)));
    if (o.passed) {
        o.detail = fmt::format("seed 2015, 400 states, mean trace distance {} <= {} <= {}, {} s", num(td[0]),
                               num(td[1]), num(td[2]), num(elapsed));
    }
    return o;
}

Outcome criterion_mub() {
    Outcome o;
    size_t overlaps = 0, relations = 0;
    for (auto variant : {MubVariant::adamson, MubVariant::bandyopadhyay}) {
        const char *name = variant == MubVariant::adamson ? "5a" : "5b";
        for (const auto &l : mub_overlap_check(variant, 1e-12)) {
            overlaps++;
            o.require(l.passed, fmt::format("{} {}", name, l.description));
        }
        for (const auto &l : mub_local_equivalence_check(variant, 1e-12)) {
            relations++;
            o.require(l.passed, fmt::format("{} {} (|overlap| off by {})", name, l.description, num(l.error)));
        }
    }
    if (o.passed) {
        o.detail = fmt::format("{} overlap checks and {} local-equivalence relations", overlaps, relations);
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"Table I condition numbers and minimal singular values", criterion_table1},
        {"Protocol 1 rotation matrix and unit singular values", criterion_protocol1_matrix},
        {"ill-conditioned 2x2 worked example", criterion_worked_example},
        {"single-qubit protocols", criterion_single_qubit},
        {"qudit and multiqubit generalizations", criterion_qudit},
        {"perturbation bounds on random trials", criterion_perturbation},
        {"distance to the nearest singular matrix", criterion_gastinel_kahan},
        {"waveplate tables, beam splitter and coincidence signatures", criterion_optics},
        {"Monte Carlo robustness ordering", criterion_monte_carlo},
        {"mutually unbiased bases", criterion_mub},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); i++) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o.passed = false;
            o.detail = fmt::format("exception: {}", e.what());
        }
        failed += !o.passed;
        std::cout << fmt::format("{} criterion {:>2}: {} ({})", o.passed ? "PASS" : "FAIL", i + 1,
                                 criteria[i].first, o.detail)
                  << std::endl;
    }
    std::cout << fmt::format("{}/{} criteria passed", criteria.size() - failed, criteria.size()) << std::endl;
    return failed == 0 ? 0 : 1;
}
