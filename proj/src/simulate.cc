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

#include "optqst/simulate.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "optqst/conditioning.h"

namespace optqst {

namespace {

std::mt19937_64 substream(uint64_t seed, std::initializer_list<uint64_t> keys) {
    std::vector<uint32_t> words = {uint32_t(seed), uint32_t(seed >> 32)};
    for (uint64_t k : keys) {
        words.push_back(uint32_t(k));
        words.push_back(uint32_t(k >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

const uint64_t kStateStream = 0x5747e5;

void check_state(const DensityMatrix &rho, const ProtocolSpec &spec) {
    if (rho.dim() != spec.dim) {
        throw std::invalid_argument(
            fmt::format("state has dimension {} but protocol '{}' needs {}", rho.dim(), spec.key, spec.dim));
    }
    double min_eig = rho.validity().min_eigenvalue;
    if (min_eig < -1e-10) {
        throw std::invalid_argument(
            fmt::format("state is not positive semidefinite (minimum eigenvalue {:.3g})", min_eig));
    }
}

double probability(const DensityMatrix &rho, const ComplexVector &psi) {
    auto m = rho.matrix() * std::span<const Complex>(psi);
    double p = inner(psi, m).real();
    if (p < -1e-9 || p > 1 + 1e-9) {
        throw std::invalid_argument(fmt::format("projector probability {:.12g} lies outside [0, 1]", p));
    }
    return p;
}

template <typename F>
RealVector assemble(const DensityMatrix &rho, const ProtocolSpec &spec, F &&estimate) {
    RealVector b;
    b.reserve(spec.row_count());
    for (const auto &e : spec.elements) {
        for (const auto &obs : e.observables) {
            double v = 0;
            for (const auto &c : obs.spectrum) {
                v += c.eigenvalue * estimate(probability(rho, c.state));
            }
            b.push_back(v);
        }
    }
    return b;
}

double mean_of(const std::vector<double> &v) {
    double s = 0;
    for (double x : v) {
        s += x;
    }
    return v.empty() ? 0 : s / v.size();
}

double std_of(const std::vector<double> &v) {
    if (v.size() < 2) {
        return 0;
    }
    double m = mean_of(v);
    double s = 0;
    for (double x : v) {
        s += (x - m) * (x - m);
    }
    return std::sqrt(s / (v.size() - 1));
}

}  // namespace

std::string_view to_string(NoiseMode mode) {
    switch (mode) {
        case NoiseMode::ideal:
            return "ideal";
        case NoiseMode::gaussian:
            return "gaussian";
        case NoiseMode::poisson:
            return "poisson";
    }
    return "unknown";
}

NoiseMode parse_noise_mode(std::string_view name) {
    if (name == "ideal") return NoiseMode::ideal;
    if (name == "gaussian") return NoiseMode::gaussian;
    if (name == "poisson") return NoiseMode::poisson;
    throw std::invalid_argument(fmt::format("unknown noise mode '{}' (expected ideal, gaussian or poisson)", name));
}

std::string_view to_string(BudgetMode mode) {
    return mode == BudgetMode::per_setting ? "per-setting" : "total";
}

BudgetMode parse_budget_mode(std::string_view name) {
    if (name == "per-setting") return BudgetMode::per_setting;
    if (name == "total") return BudgetMode::total;
    throw std::invalid_argument(fmt::format("unknown budget mode '{}' (expected per-setting or total)", name));
}

void NoiseModel::validate() const {
    if (!(efficiency > 0) || !(assumed_efficiency > 0)) {
        throw std::invalid_argument(fmt::format("efficiencies must be positive (got {} and {})", efficiency,
                                                assumed_efficiency));
    }
    if (efficiency > 1) {
        throw std::invalid_argument(fmt::format("efficiency {} exceeds 1", efficiency));
    }
    if (mode == NoiseMode::poisson && !(shots > 0)) {
        throw std::invalid_argument(fmt::format("shot count must be positive, got {}", shots));
    }
    if (mode == NoiseMode::gaussian && !(sigma_rel >= 0)) {
        throw std::invalid_argument(fmt::format("sigma_rel must be nonnegative, got {}", sigma_rel));
    }
}

size_t sampled_outcomes(const ProtocolSpec &spec) {
    size_t n = 0;
    for (const auto &e : spec.elements) {
        for (const auto &obs : e.observables) {
            n += obs.spectrum.size();
        }
    }
    return n;
}

double shots_per_outcome(const ProtocolSpec &spec, const NoiseModel &noise) {
    if (noise.budget == BudgetMode::per_setting) {
        return noise.shots;
    }
    return noise.shots / double(sampled_outcomes(spec));
}

RealVector ideal_observation(const DensityMatrix &rho, const ProtocolSpec &spec) {
    check_state(rho, spec);
    return assemble(rho, spec, [](double p) { return p; });
}

RealVector measure(const DensityMatrix &rho, const ProtocolSpec &spec, const NoiseModel &noise,
                   std::mt19937_64 &rng) {
    noise.validate();
    check_state(rho, spec);
    switch (noise.mode) {
        case NoiseMode::ideal:
            return assemble(rho, spec, [](double p) { return p; });
        case NoiseMode::gaussian: {
            auto b = assemble(rho, spec, [](double p) { return p; });
            double scale = 0;
            for (double v : b) {
                scale = std::max(scale, std::abs(v));
            }
            std::normal_distribution<double> dist(0, noise.sigma_rel * scale);
            for (double &v : b) {
                v += dist(rng);
            }
            return b;
        }
        case NoiseMode::poisson: {
            double n = shots_per_outcome(spec, noise);
            return assemble(rho, spec, [&](double p) {
                double mean = n * noise.efficiency * std::max(p, 0.0);
                double count = 0;
                if (mean > 0) {
                    std::poisson_distribution<long long> dist(mean);
                    count = double(dist(rng));
                }
                return count / (n * noise.assumed_efficiency);
            });
        }
    }
    throw std::logic_error("unhandled noise mode");
}

RealVector measure(const DensityMatrix &rho, const ProtocolSpec &spec, const NoiseModel &noise, uint64_t seed) {
    auto rng = substream(seed, {});
    return measure(rho, spec, noise, rng);
}

ReconstructionResult reconstruct(std::span<const double> b, const ProtocolSpec &spec, const DensityMatrix *truth) {
    const auto &a = spec.rotation_matrix;
    if (b.size() != a.rows()) {
        throw std::invalid_argument(
            fmt::format("observation vector has {} entries, protocol '{}' needs {}", b.size(), spec.key, a.rows()));
    }
    RealVector rhs(b.begin(), b.end());
    for (size_t i = 0; i < rhs.size(); i++) {
        rhs[i] += spec.displacement[i];
    }
    auto solved = least_squares_solve(a, std::span<const double>(rhs));
    auto fitted = a * solved;
    double res = 0;
    for (size_t i = 0; i < rhs.size(); i++) {
        res += (fitted[i] - rhs[i]) * (fitted[i] - rhs[i]);
    }

    size_t d = spec.dim;
    RealStateVector x{d, solved};
    if (spec.trace_constrained) {
        double rest = 1;
        auto slots = vec_slots(d);
        for (size_t i = 0; i < solved.size(); i++) {
            if (slots[i].part == VecSlot::Part::diagonal) {
                rest -= solved[i];
            }
        }
        x.values.push_back(rest);
    }

    ReconstructionResult out{x, unvec(x), std::sqrt(res), 0, std::nullopt, std::nullopt, {}};
    out.trace = out.rho.trace();
    if (truth != nullptr) {
        if (truth->dim() != d) {
            throw std::invalid_argument("true state dimension does not match the protocol");
        }
        auto xt = vec(*truth).values;
        out.element_errors.resize(xt.size());
        for (size_t i = 0; i < xt.size(); i++) {
            out.element_errors[i] = std::abs(x.values[i] - xt[i]);
        }
        auto est = out.rho.normalized();
        auto ref = truth->normalized();
        out.fidelity = fidelity(est, ref);
        out.trace_distance = trace_distance(est, ref);
    }
    return out;
}

std::vector<LabeledState> experiment_states(const ExperimentConfig &config) {
    if (config.protocols.empty()) {
        throw std::invalid_argument("experiment needs at least one protocol");
    }
    size_t dim = protocol_by_key(config.protocols.front()).dim;
    std::vector<LabeledState> states = config.states;
    for (size_t k = 0; k < config.random_states; k++) {
        auto rng = substream(config.seed, {kStateStream, k});
        states.push_back(LabeledState{fmt::format("random-{}", k), random_density_matrix(dim, rng)});
    }
    return states;
}

ExperimentResult robustness_experiment(const ExperimentConfig &config) {
    if (config.trials < 1) {
        throw std::invalid_argument("trials must be at least 1");
    }
    if (config.noise_levels.empty()) {
        throw std::invalid_argument("experiment needs at least one noise level");
    }
    for (const auto &n : config.noise_levels) {
        n.validate();
    }
    std::vector<ProtocolSpec> specs;
    for (const auto &key : config.protocols) {
        specs.push_back(protocol_by_key(key));
        if (specs.back().dim != specs.front().dim) {
            throw std::invalid_argument(fmt::format("protocol '{}' has dimension {}, expected {}", key,
                                                    specs.back().dim, specs.front().dim));
        }
    }
    auto states = experiment_states(config);
    if (states.empty()) {
        throw std::invalid_argument("experiment needs at least one state");
    }
    for (const auto &s : states) {
        check_state(s.rho, specs.front());
    }

    const size_t n_noise = config.noise_levels.size();
    const size_t n_states = states.size();
    const size_t per_protocol = n_noise * n_states * config.trials;
    const size_t total = specs.size() * per_protocol;
    std::vector<TrialRecord> records(total);

    auto run = [&](size_t idx) {
        size_t p = idx / per_protocol;
        size_t rest = idx % per_protocol;
        size_t n = rest / (n_states * config.trials);
        rest %= n_states * config.trials;
        size_t s = rest / config.trials;
        size_t t = rest % config.trials;
        const auto &spec = specs[p];
        const auto &state = states[s];
        auto rng = substream(config.seed, {p, n, s, t});
        auto b_ideal = ideal_observation(state.rho, spec);
        auto b = measure(state.rho, spec, config.noise_levels[n], rng);
        RealVector rhs(b_ideal), db(b.size());
        for (size_t i = 0; i < b.size(); i++) {
            rhs[i] += spec.displacement[i];
            db[i] = b[i] - b_ideal[i];
        }
        auto bound = perturbation_bound_check(spec.rotation_matrix, rhs, db);
        auto rec = reconstruct(b, spec, &state.rho);
        records[idx] = TrialRecord{spec.key,
                                   n,
                                   state.label,
                                   t,
                                   bound.relative_db,
                                   bound.relative_dx,
                                   bound.amplification,
                                   bound.lower_bound,
                                   bound.upper_bound,
                                   bound.bounds_hold,
                                   *rec.trace_distance,
                                   rec.fidelity->value,
                                   rec.trace};
    };

    size_t jobs = std::max<size_t>(1, std::min(config.jobs, total));
    if (jobs == 1) {
        for (size_t i = 0; i < total; i++) {
            run(i);
        }
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::exception_ptr> errors(jobs);
        std::vector<std::thread> pool;
        for (size_t j = 0; j < jobs; j++) {
            pool.emplace_back([&, j] {
                try {
                    for (size_t i = next++; i < total; i = next++) {
                        run(i);
                    }
                } catch (...) {
                    errors[j] = std::current_exception();
                    next = total;
                }
            });
        }
        for (auto &th : pool) {
            th.join();
        }
        for (auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    ExperimentResult result;
    for (size_t p = 0; p < specs.size(); p++) {
        double kappa = condition_number(specs[p].rotation_matrix).value;
        for (size_t n = 0; n < n_noise; n++) {
            std::vector<double> dx, td, fid;
            double max_amp = 0;
            size_t violations = 0;
            for (size_t k = 0; k < n_states * config.trials; k++) {
                const auto &r = records[p * per_protocol + n * n_states * config.trials + k];
                dx.push_back(r.relative_dx);
                td.push_back(r.trace_distance);
                fid.push_back(r.fidelity);
                max_amp = std::max(max_amp, r.amplification);
                violations += !r.bounds_hold;
            }
            result.summary.push_back(SummaryRow{specs[p].key, n, config.noise_levels[n], kappa, dx.size(),
                                                mean_of(dx), std_of(dx), mean_of(td), std_of(td), mean_of(fid),
                                                max_amp, violations});
        }
    }
    result.trials = std::move(records);
    return result;
}

}  // namespace optqst
