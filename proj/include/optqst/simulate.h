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

#ifndef _OPTQST_SIMULATE_H
#define _OPTQST_SIMULATE_H

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "optqst/protocols.h"
#include "optqst/states.h"

namespace optqst {

enum class NoiseMode { ideal, gaussian, poisson };
std::string_view to_string(NoiseMode mode);
NoiseMode parse_noise_mode(std::string_view name);

/// How the shot count is shared among projector outcomes.
enum class BudgetMode {
    /// Every sampled projector outcome gets `shots` trials.
    per_setting,
    /// `shots` is divided evenly over all sampled projector outcomes of the protocol.
    total,
};
std::string_view to_string(BudgetMode mode);
BudgetMode parse_budget_mode(std::string_view name);

struct NoiseModel {
    NoiseMode mode = NoiseMode::ideal;
    double shots = 10000;
    /// Detection efficiency used to draw counts.
    double efficiency = 1;
    /// Efficiency assumed when converting counts to probabilities.
    double assumed_efficiency = 1;
    /// Gaussian mode: standard deviation relative to max |b_j|.
    double sigma_rel = 0;
    BudgetMode budget = BudgetMode::per_setting;

    /// Throws on nonpositive efficiencies or shot counts, or a negative sigma_rel.
    void validate() const;
};

/// Number of independently sampled projector outcomes (sum of spectrum sizes over all observables).
size_t sampled_outcomes(const ProtocolSpec &spec);
/// Shots given to each sampled projector outcome under the noise model's budget mode.
double shots_per_outcome(const ProtocolSpec &spec, const NoiseModel &noise);

/// b = A vec(rho), assembled from eigenstate probabilities: b_j = sum_l lambda_jl <psi_jl|rho|psi_jl>.
RealVector ideal_observation(const DensityMatrix &rho, const ProtocolSpec &spec);

/// Noisy observation vector. Throws if rho has the wrong dimension, is not PSD within 1e-10, or
/// yields a probability outside [0, 1] beyond 1e-9.
RealVector measure(const DensityMatrix &rho, const ProtocolSpec &spec, const NoiseModel &noise,
                   std::mt19937_64 &rng);
RealVector measure(const DensityMatrix &rho, const ProtocolSpec &spec, const NoiseModel &noise, uint64_t seed);

struct ReconstructionResult {
    /// All dim^2 components, including the one fixed by a trace constraint.
    RealStateVector x;
    DensityMatrix rho;
    /// ||A x - (b + displacement)||_2 over the protocol's unknowns.
    double residual;
    double trace;
    /// Filled when a true state is supplied; metrics use trace-normalized copies.
    std::optional<MetricResult> fidelity;
    std::optional<double> trace_distance;
    RealVector element_errors;
};

/// Raw least-squares linear inversion; no positivity or trace repair.
ReconstructionResult reconstruct(std::span<const double> b, const ProtocolSpec &spec,
                                 const DensityMatrix *truth = nullptr);

struct LabeledState {
    std::string label;
    DensityMatrix rho;
};

struct ExperimentConfig {
    std::vector<std::string> protocols;
    std::vector<LabeledState> states;
    /// Number of Hilbert-Schmidt random states appended to `states`, drawn from `seed`.
    size_t random_states = 0;
    std::vector<NoiseModel> noise_levels;
    size_t trials = 1;
    uint64_t seed = 2015;
    size_t jobs = 1;
};

struct TrialRecord {
    std::string protocol;
    size_t noise_index;
    std::string state;
    size_t trial;
    double relative_db;
    double relative_dx;
    double amplification;
    double lower_bound;
    double upper_bound;
    bool bounds_hold;
    double trace_distance;
    double fidelity;
    double trace;
};

struct SummaryRow {
    std::string protocol;
    size_t noise_index;
    NoiseModel noise;
    double kappa_A;
    size_t samples;
    double mean_relative_dx;
    double std_relative_dx;
    double mean_trace_distance;
    double std_trace_distance;
    double mean_fidelity;
    double max_amplification;
    size_t bound_violations;
};

struct ExperimentResult {
    std::vector<SummaryRow> summary;
    /// Ordered by (protocol, noise level, state, trial).
    std::vector<TrialRecord> trials;
};

/// The states used by an experiment: the configured ones followed by the random ones.
std::vector<LabeledState> experiment_states(const ExperimentConfig &config);

/// Every trial draws from its own generator keyed by (seed, protocol, noise level, state, trial),
/// so results do not depend on `jobs`.
ExperimentResult robustness_experiment(const ExperimentConfig &config);

}  // namespace optqst

#endif
