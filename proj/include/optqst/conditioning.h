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

#ifndef _OPTQST_CONDITIONING_H
#define _OPTQST_CONDITIONING_H

#include <optional>
#include <string>
#include <vector>

#include "optqst/numerics.h"
#include "optqst/protocols.h"

namespace optqst {

/// sigma_max / sigma_min, or an explicit singular flag when sigma_min is below the rank tolerance.
struct ConditionNumber {
    double value = 0;
    bool singular = false;
};
ConditionNumber condition_number(const RealMatrix &a);
ConditionNumber condition_number(std::span<const double> sorted_singular_values);

/// C = A^T A.
RealMatrix error_matrix(const RealMatrix &a);

struct GastinelKahanResult {
    /// sigma_min / sigma_max = 1 / kappa(A).
    double distance;
    /// A - sigma_min u_min v_min^T.
    RealMatrix nearest_singular;
    /// ||A - nearest_singular||_2 / ||A||_2.
    double relative_spectral_distance;
    /// sigma_min(nearest_singular) / sigma_max(nearest_singular).
    double nearest_relative_sigma_min;
};
/// Throws for non-square or singular input.
GastinelKahanResult gastinel_kahan_distance(const RealMatrix &a);

struct PerturbationReport {
    double relative_db;
    double relative_da;
    double relative_dx;
    double kappa;
    double lower_bound;
    double upper_bound;
    bool bounds_hold;
    /// (||dx|| / ||x||) / (||db|| / ||b||); zero when db = 0.
    double amplification;
};

/// Solves A x = b and (A + dA)(x + dx) = b + db by least squares and compares the relative change in x
/// with the condition-number bounds. Without dA both sides of
///   (1/kappa) ||P db|| / ||P b|| <= ||dx|| / ||x|| <= kappa ||db|| / ||P b||
/// are checked, P being the orthogonal projector onto range(A) (P = I for square A).
/// With dA (square A only) the upper bound kappa / (1 - kappa r_A) (r_A + r_b) is checked;
/// ||dA|| must stay below sigma_min(A) or the check is refused.
PerturbationReport perturbation_bound_check(const RealMatrix &a, std::span<const double> b,
                                            std::span<const double> db,
                                            const std::optional<RealMatrix> &da = std::nullopt,
                                            double slack = 1e-9);

struct ConditioningReport {
    std::string key;
    int id = 0;
    std::string name;
    std::string locality;
    std::string construction;
    size_t rows = 0;
    size_t cols = 0;
    size_t n_elements = 0;
    size_t projector_outcomes = 0;
    RealVector singular_values_A;
    ConditionNumber kappa_A;
    ConditionNumber kappa_C;
    double min_svd_C = 0;
    double dist_to_singular = 0;
};

ConditioningReport conditioning_report(const ProtocolSpec &spec);
/// Builds a report from an externally supplied rotation matrix (used for protocol catalog files).
ConditioningReport conditioning_report(const ProtocolSpec &spec, const RealMatrix &rotation_matrix);
std::vector<ConditioningReport> table1_report();

struct Table1Target {
    int id;
    size_t n_projectors;
    double kappa_C;
    double min_svd_C;
};
const std::vector<Table1Target> &table1_targets();

struct Table1Cell {
    int id;
    std::string column;
    double expected;
    double actual;
    /// "exact" (1e-9 relative) or "abs" with the given tolerance.
    std::string tolerance;
    bool passed;
};
/// One cell per (protocol, column) for n_projectors, kappa_C and min_svd_C.
std::vector<Table1Cell> check_table1(const std::vector<ConditioningReport> &reports);

}  // namespace optqst

#endif
