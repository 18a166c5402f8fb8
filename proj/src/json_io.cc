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

#include "optqst/json_io.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace optqst {

namespace {

template <typename T>
Json rows_of(const Matrix<T> &m, double (*part)(const T &)) {
    Json rows = Json::array();
    for (size_t r = 0; r < m.rows(); r++) {
        Json row = Json::array();
        for (size_t c = 0; c < m.cols(); c++) {
            row.push_back(part(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

double real_of(const Complex &z) {
    return z.real();
}
double imag_of(const Complex &z) {
    return z.imag();
}
double identity_of(const double &v) {
    return v;
}

RealMatrix parse_rows(const Json &j, const char *what) {
    if (!j.is_array()) {
        throw std::invalid_argument(fmt::format("'{}' must be an array of rows", what));
    }
    size_t rows = j.size();
    size_t cols = rows == 0 ? 0 : j[0].size();
    RealMatrix m(rows, cols);
    for (size_t r = 0; r < rows; r++) {
        if (!j[r].is_array() || j[r].size() != cols) {
            throw std::invalid_argument(fmt::format("'{}' row {} has the wrong length", what, r));
        }
        for (size_t c = 0; c < cols; c++) {
            m(r, c) = j[r][c].get<double>();
        }
    }
    return m;
}

Json vector_to_json(std::span<const Complex> v) {
    Json re = Json::array(), im = Json::array();
    for (const auto &z : v) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    return Json{{"re", re}, {"im", im}};
}

ComplexVector vector_from_json(const Json &j) {
    const auto &re = j.at("re");
    const auto &im = j.at("im");
    if (re.size() != im.size()) {
        throw std::invalid_argument("state vector re/im lengths differ");
    }
    ComplexVector v(re.size());
    for (size_t k = 0; k < v.size(); k++) {
        v[k] = Complex(re[k].get<double>(), im[k].get<double>());
    }
    return v;
}

ElementKind parse_kind(const std::string &s) {
    for (auto k : {ElementKind::hermitian_operator, ElementKind::pure_projector, ElementKind::general_operator}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw std::invalid_argument(fmt::format("unknown element kind '{}'", s));
}

Json condition_json(const ConditionNumber &k) {
    if (k.singular) {
        return "singular";
    }
    return k.value;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix &m) {
    return Json{{"re", rows_of(m, real_of)}, {"im", rows_of(m, imag_of)}};
}

ComplexMatrix complex_matrix_from_json(const Json &j) {
    auto re = parse_rows(j.at("re"), "re");
    auto im = parse_rows(j.at("im"), "im");
    if (re.rows() != im.rows() || re.cols() != im.cols()) {
        throw std::invalid_argument("matrix re/im shapes differ");
    }
    ComplexMatrix m(re.rows(), re.cols());
    for (size_t r = 0; r < re.rows(); r++) {
        for (size_t c = 0; c < re.cols(); c++) {
            m(r, c) = Complex(re(r, c), im(r, c));
        }
    }
    return m;
}

Json matrix_to_json(const RealMatrix &m) {
    return rows_of(m, identity_of);
}

RealMatrix real_matrix_from_json(const Json &j) {
    return parse_rows(j, "matrix");
}

Json to_json(const DensityMatrix &rho) {
    auto j = matrix_to_json(rho.matrix());
    return Json{{"dim", rho.dim()}, {"re", j["re"]}, {"im", j["im"]}};
}

DensityMatrix density_matrix_from_json(const Json &j) {
    auto m = complex_matrix_from_json(j);
    if (j.contains("dim") && j.at("dim").get<size_t>() != m.rows()) {
        throw std::invalid_argument(
            fmt::format("density matrix 'dim' is {} but the matrix has {} rows", j.at("dim").get<size_t>(), m.rows()));
    }
    return DensityMatrix(std::move(m));
}

Json to_json(const RealStateVector &x) {
    return Json{{"dim", x.dim}, {"x", x.values}};
}

RealStateVector state_vector_from_json(const Json &j) {
    RealStateVector x{j.at("dim").get<size_t>(), j.at("x").get<RealVector>()};
    if (x.values.size() != x.dim * x.dim) {
        throw std::invalid_argument(fmt::format("state vector needs {} entries, got {}", x.dim * x.dim, x.values.size()));
    }
    return x;
}

Json to_json(const ProtocolSpec &spec) {
    Json elements = Json::array();
    for (const auto &e : spec.elements) {
        Json je{{"kind", to_string(e.kind)}, {"label", e.label}, {"operator", matrix_to_json(e.op)}};
        if (e.kind == ElementKind::pure_projector) {
            je["state"] = vector_to_json(e.state);
        }
        Json obs = Json::array();
        for (const auto &o : e.observables) {
            Json spectrum = Json::array();
            for (const auto &c : o.spectrum) {
                Json jc{{"eigenvalue", c.eigenvalue}, {"label", c.label}};
                jc["state"] = vector_to_json(c.state);
                spectrum.push_back(std::move(jc));
            }
            obs.push_back(Json{{"label", o.label}, {"matrix", matrix_to_json(o.matrix)}, {"spectrum", spectrum}});
        }
        je["observables"] = std::move(obs);
        elements.push_back(std::move(je));
    }
    return Json{{"id", spec.id},
                {"key", spec.key},
                {"name", spec.name},
                {"dim", spec.dim},
                {"locality", to_string(spec.locality)},
                {"construction", spec.construction},
                {"trace_constrained", spec.trace_constrained},
                {"elements", elements},
                {"rotation_matrix", matrix_to_json(spec.rotation_matrix)},
                {"displacement", spec.displacement}};
}

ProtocolSpec protocol_from_json(const Json &j) {
    ProtocolSpec spec;
    spec.id = j.at("id").get<int>();
    spec.key = j.at("key").get<std::string>();
    spec.name = j.at("name").get<std::string>();
    spec.dim = j.at("dim").get<size_t>();
    spec.locality = j.at("locality").get<std::string>() == "local" ? Locality::local : Locality::local_and_global;
    spec.construction = j.value("construction", "");
    spec.trace_constrained = j.value("trace_constrained", false);
    for (const auto &je : j.at("elements")) {
        MeasurementElement e;
        e.kind = parse_kind(je.at("kind").get<std::string>());
        e.label = je.at("label").get<std::string>();
        e.op = complex_matrix_from_json(je.at("operator"));
        if (je.contains("state")) {
            e.state = vector_from_json(je.at("state"));
        }
        for (const auto &jo : je.at("observables")) {
            Observable o{jo.at("label").get<std::string>(), complex_matrix_from_json(jo.at("matrix")), {}};
            for (const auto &jc : jo.at("spectrum")) {
                o.spectrum.push_back(EigenComponent{jc.at("eigenvalue").get<double>(), vector_from_json(jc.at("state")),
                                                    jc.at("label").get<std::string>()});
            }
            e.observables.push_back(std::move(o));
        }
        spec.elements.push_back(std::move(e));
    }
    spec.rotation_matrix = real_matrix_from_json(j.at("rotation_matrix"));
    spec.displacement = j.at("displacement").get<RealVector>();
    if (spec.rotation_matrix.cols() != spec.unknowns()) {
        throw std::invalid_argument(fmt::format("protocol '{}': rotation matrix has {} columns, expected {}", spec.key,
                                                spec.rotation_matrix.cols(), spec.unknowns()));
    }
    if (spec.displacement.size() != spec.rotation_matrix.rows()) {
        throw std::invalid_argument(fmt::format("protocol '{}': displacement length {} does not match {} rows",
                                                spec.key, spec.displacement.size(), spec.rotation_matrix.rows()));
    }
    return spec;
}

Json protocol_catalog_json(const std::vector<ProtocolSpec> &specs) {
    Json list = Json::array();
    for (const auto &s : specs) {
        list.push_back(to_json(s));
    }
    return Json{{"protocols", list}};
}

std::vector<ProtocolSpec> protocols_from_catalog(const Json &j) {
    std::vector<ProtocolSpec> out;
    for (const auto &p : j.at("protocols")) {
        out.push_back(protocol_from_json(p));
    }
    return out;
}

Json to_json(const ConditioningReport &r) {
    return Json{{"protocol", r.id},
                {"key", r.key},
                {"name", r.name},
                {"n_projectors", r.n_elements},
                {"projector_outcomes", r.projector_outcomes},
                {"locality", r.locality},
                {"shape", {r.rows, r.cols}},
                {"singular_values_A", r.singular_values_A},
                {"kappa_A", condition_json(r.kappa_A)},
                {"kappa_C", condition_json(r.kappa_C)},
                {"min_svd_C", r.min_svd_C},
                {"dist_to_singular", r.dist_to_singular},
                {"construction", r.construction}};
}

Json to_json(const CheckLine &line) {
    return Json{{"check", line.description}, {"error", line.error}, {"pass", line.passed}};
}

Json to_json(const ReconstructionResult &r) {
    Json j{{"x", to_json(r.x)}, {"rho", to_json(r.rho)}, {"residual", r.residual}, {"trace", r.trace}};
    if (r.fidelity) {
        j["fidelity"] = r.fidelity->value;
        j["fidelity_psd_projected"] = r.fidelity->psd_projected;
    }
    if (r.trace_distance) {
        j["trace_distance"] = *r.trace_distance;
    }
    if (!r.element_errors.empty()) {
        j["element_errors"] = r.element_errors;
    }
    return j;
}

Json to_json(const NoiseModel &n) {
    return Json{{"mode", to_string(n.mode)},        {"shots", n.shots},
                {"efficiency", n.efficiency},       {"assumed_efficiency", n.assumed_efficiency},
                {"sigma_rel", n.sigma_rel},         {"budget", to_string(n.budget)}};
}

NoiseModel noise_model_from_json(const Json &j) {
    static const std::vector<std::string> known = {"mode",      "shots",  "efficiency", "assumed_efficiency",
                                                   "sigma_rel", "budget"};
    for (const auto &item : j.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
            throw std::invalid_argument(fmt::format("unknown noise field '{}'", item.key()));
        }
    }
    NoiseModel n;
    n.mode = parse_noise_mode(j.value("mode", "ideal"));
    n.shots = j.value("shots", n.shots);
    n.efficiency = j.value("efficiency", n.efficiency);
    n.assumed_efficiency = j.value("assumed_efficiency", n.efficiency);
    n.sigma_rel = j.value("sigma_rel", n.sigma_rel);
    n.budget = parse_budget_mode(j.value("budget", "per-setting"));
    n.validate();
    return n;
}

ExperimentConfig experiment_config_from_json(const Json &j, const std::string &base_dir) {
    static const std::vector<std::string> known = {"protocols", "states", "noise", "trials", "seed", "jobs"};
    for (const auto &item : j.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
            throw std::invalid_argument(fmt::format("unknown experiment field '{}'", item.key()));
        }
    }
    ExperimentConfig c;
    for (const auto &p : j.at("protocols")) {
        c.protocols.push_back(p.is_string() ? p.get<std::string>() : std::to_string(p.get<int>()));
    }
    for (const auto &s : j.value("states", Json::array())) {
        if (s.is_string()) {
            auto name = s.get<std::string>();
            c.states.push_back(LabeledState{name, pure_state(named_state(name))});
        } else if (s.contains("random")) {
            c.random_states += s.at("random").get<size_t>();
        } else if (s.contains("file")) {
            std::filesystem::path path = s.at("file").get<std::string>();
            if (path.is_relative()) {
                path = std::filesystem::path(base_dir) / path;
            }
            c.states.push_back(LabeledState{path.filename().string(), density_matrix_from_json(read_json_file(path))});
        } else {
            throw std::invalid_argument(fmt::format("cannot interpret state entry {}", s.dump()));
        }
    }
    const Json &noise = j.at("noise");
    if (noise.is_array()) {
        for (const auto &n : noise) {
            c.noise_levels.push_back(noise_model_from_json(n));
        }
    } else {
        c.noise_levels.push_back(noise_model_from_json(noise));
    }
    c.trials = j.value("trials", size_t{1});
    c.seed = j.value("seed", c.seed);
    c.jobs = j.value("jobs", size_t{1});
    return c;
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open '{}'", path));
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw std::runtime_error(fmt::format("'{}' is not valid JSON: {}", path, e.what()));
    }
}

void write_text_file(const std::string &path, const std::string &text) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path());
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error(fmt::format("cannot write '{}'", path));
    }
    out << text;
}

}  // namespace optqst
