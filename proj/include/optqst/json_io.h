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

#ifndef _OPTQST_JSON_IO_H
#define _OPTQST_JSON_IO_H

#include <string>

#include "json.hpp"
#include "optqst/conditioning.h"
#include "optqst/optics.h"
#include "optqst/protocols.h"
#include "optqst/simulate.h"
#include "optqst/states.h"

namespace optqst {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix complex_matrix_from_json(const Json &j);
Json matrix_to_json(const RealMatrix &m);
RealMatrix real_matrix_from_json(const Json &j);

/// {"dim": d, "re": [[..]], "im": [[..]]}
Json to_json(const DensityMatrix &rho);
DensityMatrix density_matrix_from_json(const Json &j);
/// {"dim": d, "x": [..]}
Json to_json(const RealStateVector &x);
RealStateVector state_vector_from_json(const Json &j);

/// {id, key, name, dim, locality, construction, trace_constrained, elements, rotation_matrix, displacement}
Json to_json(const ProtocolSpec &spec);
ProtocolSpec protocol_from_json(const Json &j);
/// {"protocols": [...]} with the Table I protocols in order.
Json protocol_catalog_json(const std::vector<ProtocolSpec> &specs);
std::vector<ProtocolSpec> protocols_from_catalog(const Json &j);

Json to_json(const ConditioningReport &r);
Json to_json(const CheckLine &line);
Json to_json(const ReconstructionResult &r);
Json to_json(const NoiseModel &n);
NoiseModel noise_model_from_json(const Json &j);

/// Experiment file: {"protocols": ["1", ...], "states": ["phi+", {"random": 200}, {"file": "rho.json"}, ...],
/// "noise": {...} or [{...}, ...], "trials": n, "seed": s, "jobs": j}. Relative files resolve against base_dir.
ExperimentConfig experiment_config_from_json(const Json &j, const std::string &base_dir = ".");

Json read_json_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

}  // namespace optqst

#endif
