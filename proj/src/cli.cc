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

#include "optqst/cli.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "optqst/conditioning.h"
#include "optqst/json_io.h"
#include "optqst/optics.h"
#include "optqst/protocols.h"
#include "optqst/simulate.h"
#include "optqst/states.h"

#ifndef OPTQST_VERSION
#define OPTQST_VERSION "0.0.0"
#endif

namespace optqst {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    return fmt::format("{:.12g}", v);
}

std::string condition_text(const ConditionNumber &k) {
    return k.singular ? "inf" : num(k.value);
}

struct Output {
    std::string format = "text";
    std::string path;
};

struct RunHeader {
    std::string command;
    Json config;
    std::optional<uint64_t> seed;

    std::string text() const {
        return fmt::format("# optqst {}\n# command: {}\n# config: {}\n# seed: {}\n", version_string(), command,
                           config.dump(), seed ? std::to_string(*seed) : "none");
    }
    Json json() const {
        Json j{{"tool", "optqst"}, {"version", version_string()}, {"command", command}, {"config", config}};
        j["seed"] = seed ? Json(*seed) : Json(nullptr);
        return j;
    }
};

std::filesystem::path resolve_output(const std::string &path) {
    std::filesystem::path p(path);
    const char *dir = std::getenv(kOutputDirEnv);
    if (p.is_relative() && dir != nullptr && *dir != '\0') {
        p = std::filesystem::path(dir) / p;
    }
    return p;
}

void emit(const Output &o, const std::string &text, std::ostream &out, std::ostream &err) {
    if (o.path.empty()) {
        out << text;
        return;
    }
    auto p = resolve_output(o.path);
    write_text_file(p.string(), text);
    err << "wrote " << p.string() << "\n";
}

std::string json_text(const Json &j) {
    return j.dump(2) + "\n";
}

void add_output_options(CLI::App *cmd, Output &o, std::vector<std::string> formats) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
    cmd->add_option("--output,-o", o.path,
                    fmt::format("Write to this file instead of stdout (relative paths resolve against ${})",
                                kOutputDirEnv));
}

DensityMatrix load_state(const std::string &source, size_t dim) {
    DensityMatrix rho = [&] {
        if (source.starts_with("file:")) {
            return density_matrix_from_json(read_json_file(source.substr(5)));
        }
        if (source.starts_with("random:")) {
            std::string digits = source.substr(7);
            size_t pos = 0;
            uint64_t seed = 0;
            try {
                seed = std::stoull(digits, &pos);
            } catch (const std::exception &) {
                pos = 0;
            }
            if (digits.empty() || pos != digits.size()) {
                throw UsageError(fmt::format("malformed state source '{}' (expected random:<seed>)", source));
            }
            std::mt19937_64 rng(seed);
            return random_density_matrix(dim, rng);
        }
        return pure_state(named_state(source));
    }();
    if (rho.dim() != dim) {
        throw UsageError(fmt::format("state '{}' has dimension {} but the protocol needs {}", source, rho.dim(), dim));
    }
    return rho;
}

// table1 ---------------------------------------------------------------------------------------------------------

struct Table1Options {
    Output out;
    std::string catalog;
};

int cmd_table1(const Table1Options &o, const RunHeader &header, std::ostream &out, std::ostream &err) {
    std::vector<ConditioningReport> reports;
    std::vector<std::string> problems;
    if (o.catalog.empty()) {
        reports = table1_report();
    } else {
        for (const auto &spec : protocols_from_catalog(read_json_file(o.catalog))) {
            try {
                auto rebuilt = build_rotation_matrix(spec);
                const auto &stored = spec.rotation_matrix;
                if (rebuilt.rows() != stored.rows() || rebuilt.cols() != stored.cols()) {
                    problems.push_back(fmt::format("protocol {} rotation_matrix: stored shape {}x{}, elements give {}x{}",
                                                   spec.id, stored.rows(), stored.cols(), rebuilt.rows(),
                                                   rebuilt.cols()));
                } else {
                    for (size_t r = 0; r < stored.rows(); r++) {
                        for (size_t c = 0; c < stored.cols(); c++) {
                            if (std::abs(stored(r, c) - rebuilt(r, c)) > 1e-12) {
                                problems.push_back(fmt::format(
                                    "protocol {} rotation_matrix[{}][{}]: stored {}, elements give {}", spec.id, r, c,
                                    num(stored(r, c)), num(rebuilt(r, c))));
                            }
                        }
                    }
                }
            } catch (const std::invalid_argument &e) {
                problems.push_back(fmt::format("protocol {} elements: {}", spec.id, e.what()));
            }
            reports.push_back(conditioning_report(spec, spec.rotation_matrix));
        }
    }
    auto cells = check_table1(reports);
    for (const auto &c : cells) {
        if (!c.passed) {
            problems.push_back(fmt::format("protocol {} {}: got {}, expected {} ({})", c.id, c.column, num(c.actual),
                                           num(c.expected), c.tolerance));
        }
    }
    auto row_status = [&](int id) {
        for (const auto &c : cells) {
            if (c.id == id && !c.passed) {
                return std::string("FAIL");
            }
        }
        for (const auto &p : problems) {
            if (p.starts_with(fmt::format("protocol {} ", id))) {
                return std::string("FAIL");
            }
        }
        return std::string("PASS");
    };

    std::string text;
    if (o.out.format == "json") {
        Json j = header.json();
        Json rows = Json::array();
        for (const auto &r : reports) {
            Json row = to_json(r);
            row["status"] = row_status(r.id);
            rows.push_back(std::move(row));
        }
        j["rows"] = rows;
        Json jc = Json::array();
        for (const auto &c : cells) {
            jc.push_back(Json{{"protocol", c.id},
                              {"column", c.column},
                              {"expected", c.expected},
                              {"actual", c.actual},
                              {"tolerance", c.tolerance},
                              {"pass", c.passed}});
        }
        j["cells"] = jc;
        j["failures"] = problems;
        text = json_text(j);
    } else if (o.out.format == "csv") {
        text = header.text();
        text += "protocol,n_projectors,locality,kappa_A,kappa_C,min_svd_C,dist_to_singular,status\n";
        for (const auto &r : reports) {
            text += fmt::format("{},{},{},{},{},{},{},{}\n", r.id, r.n_elements, r.locality,
                                condition_text(r.kappa_A), condition_text(r.kappa_C), num(r.min_svd_C),
                                num(r.dist_to_singular), row_status(r.id));
        }
    } else {
        text = header.text();
        text += fmt::format("{:<9} {:<24} {:>6} {:<15} {:>16} {:>16} {:>16} {:>16}  {}\n", "protocol", "name",
                            "proj.", "locality", "kappa(A)", "kappa(C)", "min svd(C)", "dist. to sing.", "status");
        for (const auto &r : reports) {
            text += fmt::format("{:<9} {:<24} {:>6} {:<15} {:>16} {:>16} {:>16} {:>16}  {}\n", r.id, r.name,
                                r.n_elements, r.locality, condition_text(r.kappa_A), condition_text(r.kappa_C),
                                num(r.min_svd_C), num(r.dist_to_singular), row_status(r.id));
        }
        for (const auto &p : problems) {
            text += "FAIL " + p + "\n";
        }
        text += problems.empty() ? "all Table I values reproduced\n"
                                 : fmt::format("{} Table I discrepancies\n", problems.size());
    }
    emit(o.out, text, out, err);
    return problems.empty() ? kExitSuccess : kExitVerificationFailure;
}

// reconstruct ----------------------------------------------------------------------------------------------------

struct ReconstructOptions {
    Output out;
    std::string state = "phi+";
    std::string protocol = "1";
    std::string noise = "ideal";
    double shots = 10000;
    double efficiency = 1;
    std::optional<double> assumed_efficiency;
    double sigma_rel = 0.01;
    std::string budget = "per-setting";
    uint64_t seed = 2015;
};

NoiseModel make_noise(const std::string &mode, double shots, double efficiency, std::optional<double> assumed,
                      double sigma_rel, const std::string &budget) {
    NoiseModel n;
    n.mode = parse_noise_mode(mode);
    n.shots = shots;
    n.efficiency = efficiency;
    n.assumed_efficiency = assumed.value_or(efficiency);
    n.sigma_rel = sigma_rel;
    n.budget = parse_budget_mode(budget);
    n.validate();
    return n;
}

std::string matrix_text(const ComplexMatrix &m, bool imaginary) {
    std::string s;
    for (size_t r = 0; r < m.rows(); r++) {
        s += " ";
        for (size_t c = 0; c < m.cols(); c++) {
            s += fmt::format(" {:>19}", num(imaginary ? m(r, c).imag() : m(r, c).real()));
        }
        s += "\n";
    }
    return s;
}

int cmd_reconstruct(const ReconstructOptions &o, const RunHeader &header, std::ostream &out, std::ostream &err) {
    auto spec = protocol_by_key(o.protocol);
    auto rho = load_state(o.state, spec.dim);
    auto noise = make_noise(o.noise, o.shots, o.efficiency, o.assumed_efficiency, o.sigma_rel, o.budget);
    auto b = measure(rho, spec, noise, o.seed);
    auto result = reconstruct(b, spec, &rho);

    std::string text;
    if (o.out.format == "json") {
        Json j = header.json();
        j["protocol"] = Json{{"key", spec.key}, {"name", spec.name}};
        j["noise"] = to_json(noise);
        j["true_state"] = to_json(rho);
        j["observation"] = b;
        j["result"] = to_json(result);
        text = json_text(j);
    } else if (o.out.format == "csv") {
        text = header.text();
        text += "slot,x_hat,x_true,abs_error\n";
        auto xt = vec(rho).values;
        for (size_t i = 0; i < xt.size(); i++) {
            text += fmt::format("{},{},{},{}\n", i + 1, num(result.x.values[i]), num(xt[i]),
                                num(result.element_errors[i]));
        }
    } else {
        text = header.text();
        text += fmt::format("protocol: {} ({})\n", spec.key, spec.name);
        text += fmt::format("state: {}\n", o.state);
        text += fmt::format("noise: {}\n", to_json(noise).dump());
        text += fmt::format("residual: {}\n", num(result.residual));
        text += fmt::format("trace: {}\n", num(result.trace));
        text += fmt::format("fidelity: {}{}\n", num(result.fidelity->value),
                            result.fidelity->psd_projected ? " (estimate projected onto PSD cone)" : "");
        text += fmt::format("trace_distance: {}\n", num(*result.trace_distance));
        text += "rho_hat (real part):\n" + matrix_text(result.rho.matrix(), false);
        text += "rho_hat (imaginary part):\n" + matrix_text(result.rho.matrix(), true);
    }
    emit(o.out, text, out, err);
    return kExitSuccess;
}

// robustness -----------------------------------------------------------------------------------------------------

struct RobustnessOptions {
    Output out;
    std::string config;
    std::vector<std::string> protocols = {"1", "2", "3"};
    std::vector<std::string> states;
    size_t random_states = 200;
    std::string noise = "poisson";
    std::vector<double> shots = {10000};
    std::vector<double> sigma_rel = {0.01};
    double efficiency = 1;
    std::optional<double> assumed_efficiency;
    std::string budget = "per-setting";
    size_t trials = 1;
    uint64_t seed = 2015;
    size_t jobs = 1;
    bool jobs_set = false;
    bool raw = false;
};

ExperimentConfig robustness_config(const RobustnessOptions &o) {
    if (!o.config.empty()) {
        auto dir = std::filesystem::path(o.config).parent_path().string();
        auto c = experiment_config_from_json(read_json_file(o.config), dir.empty() ? "." : dir);
        if (o.jobs_set) {
            c.jobs = o.jobs;
        }
        return c;
    }
    ExperimentConfig c;
    c.protocols = o.protocols;
    for (const auto &s : o.states) {
        c.states.push_back(LabeledState{s, pure_state(named_state(s))});
    }
    c.random_states = o.random_states;
    auto mode = parse_noise_mode(o.noise);
    if (mode == NoiseMode::poisson) {
        for (double s : o.shots) {
            c.noise_levels.push_back(make_noise(o.noise, s, o.efficiency, o.assumed_efficiency, 0, o.budget));
        }
    } else if (mode == NoiseMode::gaussian) {
        for (double s : o.sigma_rel) {
            c.noise_levels.push_back(make_noise(o.noise, 0, o.efficiency, o.assumed_efficiency, s, o.budget));
        }
    } else {
        c.noise_levels.push_back(make_noise(o.noise, 1, o.efficiency, o.assumed_efficiency, 0, o.budget));
    }
    c.trials = o.trials;
    c.seed = o.seed;
    c.jobs = o.jobs;
    return c;
}

Json experiment_json(const ExperimentConfig &c) {
    Json noise = Json::array();
    for (const auto &n : c.noise_levels) {
        noise.push_back(to_json(n));
    }
    Json states = Json::array();
    for (const auto &s : c.states) {
        states.push_back(s.label);
    }
    return Json{{"protocols", c.protocols}, {"states", states},   {"random_states", c.random_states},
                {"noise", noise},           {"trials", c.trials}, {"seed", c.seed}};
}

int cmd_robustness(const RobustnessOptions &o, RunHeader header, std::ostream &out, std::ostream &err) {
    auto config = robustness_config(o);
    header.config = experiment_json(config);
    header.config["format"] = o.out.format;
    header.seed = config.seed;
    auto result = robustness_experiment(config);
    size_t violations = 0;
    for (const auto &row : result.summary) {
        violations += row.bound_violations;
    }

    std::string text;
    if (o.out.format == "json") {
        Json j = header.json();
        Json rows = Json::array();
        for (const auto &r : result.summary) {
            rows.push_back(Json{{"protocol", r.protocol},
                                {"noise", to_json(r.noise)},
                                {"kappa_A", r.kappa_A},
                                {"samples", r.samples},
                                {"mean_relative_dx", r.mean_relative_dx},
                                {"std_relative_dx", r.std_relative_dx},
                                {"mean_trace_distance", r.mean_trace_distance},
                                {"std_trace_distance", r.std_trace_distance},
                                {"mean_fidelity", r.mean_fidelity},
                                {"max_amplification", r.max_amplification},
                                {"bound_violations", r.bound_violations}});
        }
        j["summary"] = rows;
        if (o.raw) {
            Json trials = Json::array();
            for (const auto &t : result.trials) {
                trials.push_back(Json{{"protocol", t.protocol},
                                      {"noise_index", t.noise_index},
                                      {"state", t.state},
                                      {"trial", t.trial},
                                      {"relative_db", t.relative_db},
                                      {"relative_dx", t.relative_dx},
                                      {"amplification", t.amplification},
                                      {"lower_bound", t.lower_bound},
                                      {"upper_bound", t.upper_bound},
                                      {"bounds_hold", t.bounds_hold},
                                      {"trace_distance", t.trace_distance},
                                      {"fidelity", t.fidelity},
                                      {"trace", t.trace}});
            }
            j["trials"] = trials;
        }
        text = json_text(j);
    } else {
        text = header.text();
        text += "protocol,noise_mode,shots,budget,sigma_rel,efficiency,kappa_A,samples,mean_relative_dx,"
                "std_relative_dx,mean_trace_distance,std_trace_distance,mean_fidelity,max_amplification,"
                "bound_violations\n";
        for (const auto &r : result.summary) {
            text += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.protocol, to_string(r.noise.mode),
                                num(r.noise.shots), to_string(r.noise.budget), num(r.noise.sigma_rel),
                                num(r.noise.efficiency), num(r.kappa_A), r.samples, num(r.mean_relative_dx),
                                num(r.std_relative_dx), num(r.mean_trace_distance), num(r.std_trace_distance),
                                num(r.mean_fidelity), num(r.max_amplification), r.bound_violations);
        }
    }
    emit(o.out, text, out, err);
    if (violations > 0) {
        err << violations << " trials violated the condition-number bounds\n";
        return kExitVerificationFailure;
    }
    return kExitSuccess;
}

// verify-setup ---------------------------------------------------------------------------------------------------

int cmd_verify_setup(const Output &o, const RunHeader &header, std::ostream &out, std::ostream &err) {
    auto lines = verify_setup();
    size_t failed = 0;
    for (const auto &l : lines) {
        failed += !l.passed;
    }
    std::string text;
    if (o.format == "json") {
        Json j = header.json();
        Json checks = Json::array();
        for (const auto &l : lines) {
            checks.push_back(to_json(l));
        }
        j["checks"] = checks;
        j["passed"] = lines.size() - failed;
        j["failed"] = failed;
        text = json_text(j);
    } else {
        text = header.text();
        for (const auto &l : lines) {
            text += fmt::format("{}  {:<10}  {}\n", l.passed ? "PASS" : "FAIL", fmt::format("{:.2e}", l.error),
                                l.description);
        }
        text += fmt::format("{}/{} checks passed\n", lines.size() - failed, lines.size());
    }
    emit(o, text, out, err);
    return failed == 0 ? kExitSuccess : kExitVerificationFailure;
}

// qudit ----------------------------------------------------------------------------------------------------------

struct QuditOptions {
    Output out;
    size_t d = 0;
    size_t qubits = 0;
};

int cmd_qudit(const QuditOptions &o, const RunHeader &header, std::ostream &out, std::ostream &err) {
    if ((o.d == 0) == (o.qubits == 0)) {
        throw UsageError("give exactly one of --d or --qubits");
    }
    ProtocolSpec spec = o.d != 0 ? optimal_gpos_qudit(o.d) : pauli_tensor_protocol(o.qubits);
    double expected = o.d != 0 ? 1.0 : std::sqrt(2.0);
    auto k = condition_number(spec.rotation_matrix);
    bool pass = !k.singular && std::abs(k.value - expected) <= 1e-10;
    std::string text;
    if (o.out.format == "json") {
        Json j = header.json();
        j["protocol"] = spec.key;
        j["dim"] = spec.dim;
        j["operators"] = spec.elements.size();
        j["kappa_A"] = k.singular ? Json("singular") : Json(k.value);
        j["expected_kappa_A"] = expected;
        j["pass"] = pass;
        text = json_text(j);
    } else if (o.out.format == "csv") {
        text = header.text() + "protocol,dim,operators,kappa_A,expected_kappa_A,status\n";
        text += fmt::format("{},{},{},{},{},{}\n", spec.key, spec.dim, spec.elements.size(), condition_text(k),
                            num(expected), pass ? "PASS" : "FAIL");
    } else {
        text = header.text();
        text += fmt::format("{}: {} ({} operators, dimension {})\n", spec.key, spec.name, spec.elements.size(),
                            spec.dim);
        text += fmt::format("kappa(A) = {} (expected {}) {}\n", condition_text(k), num(expected),
                            pass ? "PASS" : "FAIL");
    }
    emit(o.out, text, out, err);
    return pass ? kExitSuccess : kExitVerificationFailure;
}

// export-protocols -----------------------------------------------------------------------------------------------

struct ExportOptions {
    Output out;
    std::vector<std::string> protocols = {"1", "2", "3", "4", "5", "6", "7"};
};

int cmd_export(const ExportOptions &o, const RunHeader &header, std::ostream &out, std::ostream &err) {
    std::vector<ProtocolSpec> specs;
    for (const auto &k : o.protocols) {
        specs.push_back(protocol_by_key(k));
    }
    Json j = header.json();
    j["protocols"] = protocol_catalog_json(specs)["protocols"];
    emit(o.out, json_text(j), out, err);
    return kExitSuccess;
}

std::string join_args(const std::vector<std::string> &args) {
    std::string s = "optqst";
    for (const auto &a : args) {
        s += " " + a;
    }
    return s;
}

}  // namespace

std::string version_string() {
    return OPTQST_VERSION;
}

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Two-qubit and qudit state tomography: protocols, condition numbers, simulation, optics checks",
                 "optqst"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    Table1Options t1;
    auto *table1 = app.add_subcommand("table1", "Reproduce the protocol comparison table (condition numbers)");
    add_output_options(table1, t1.out, {"text", "json", "csv"});
    table1->add_option("--catalog", t1.catalog, "Protocol catalog JSON (from export-protocols) to check instead");

    ReconstructOptions rc;
    auto *recon = app.add_subcommand("reconstruct", "Simulate measurement and linear-inversion reconstruction");
    add_output_options(recon, rc.out, {"text", "json", "csv"});
    recon->add_option("--state", rc.state, "Named state, file:<rho.json> or random:<seed>")->capture_default_str();
    recon->add_option("--protocol", rc.protocol, "Protocol key (1..7, 5b, qubit-*, qudit-<d>, pauli-<n>)")
        ->capture_default_str();
    recon->add_option("--noise", rc.noise, "Noise model")
        ->check(CLI::IsMember({"ideal", "gaussian", "poisson"}))
        ->capture_default_str();
    recon->add_option("--shots", rc.shots, "Shots per projector outcome (poisson)")->capture_default_str();
    recon->add_option("--efficiency", rc.efficiency, "Detection efficiency")->capture_default_str();
    recon->add_option("--assumed-efficiency", rc.assumed_efficiency, "Efficiency assumed by the estimator");
    recon->add_option("--sigma-rel", rc.sigma_rel, "Relative standard deviation (gaussian)")->capture_default_str();
    recon->add_option("--budget", rc.budget, "Shot budget")
        ->check(CLI::IsMember({"per-setting", "total"}))
        ->capture_default_str();
    recon->add_option("--seed", rc.seed, "Random seed")->capture_default_str();

    RobustnessOptions ro;
    auto *robust = app.add_subcommand("robustness", "Monte Carlo comparison of reconstruction errors");
    add_output_options(robust, ro.out, {"csv", "json"});
    ro.out.format = "csv";
    robust->add_option("--config", ro.config, "Experiment JSON file");
    robust->add_option("--protocols", ro.protocols, "Protocol keys")->delimiter(',')->capture_default_str();
    robust->add_option("--states", ro.states, "Named states")->delimiter(',');
    robust->add_option("--random-states", ro.random_states, "Number of random states")->capture_default_str();
    robust->add_option("--noise", ro.noise, "Noise model")
        ->check(CLI::IsMember({"ideal", "gaussian", "poisson"}))
        ->capture_default_str();
    robust->add_option("--shots", ro.shots, "Shot levels (poisson)")->delimiter(',')->capture_default_str();
    robust->add_option("--sigma-rel", ro.sigma_rel, "Noise levels (gaussian)")->delimiter(',')->capture_default_str();
    robust->add_option("--efficiency", ro.efficiency, "Detection efficiency")->capture_default_str();
    robust->add_option("--assumed-efficiency", ro.assumed_efficiency, "Efficiency assumed by the estimator");
    robust->add_option("--budget", ro.budget, "Shot budget")
        ->check(CLI::IsMember({"per-setting", "total"}))
        ->capture_default_str();
    robust->add_option("--trials", ro.trials, "Trials per state")->check(CLI::PositiveNumber)->capture_default_str();
    robust->add_option("--seed", ro.seed, "Random seed")->capture_default_str();
    auto *jobs = robust->add_option("--jobs", ro.jobs, "Worker threads")->check(CLI::PositiveNumber);
    robust->add_flag("--raw", ro.raw, "Include per-trial records (json)");

    Output vs;
    auto *verify = app.add_subcommand("verify-setup", "Check waveplate settings and beam-splitter identities");
    add_output_options(verify, vs, {"text", "json"});

    QuditOptions qo;
    auto *qudit = app.add_subcommand("qudit", "Condition number of the qudit and multiqubit generalizations");
    add_output_options(qudit, qo.out, {"text", "json", "csv"});
    auto *opt_d = qudit->add_option("--d", qo.d, "Qudit dimension (optimal GPOs)")->check(CLI::Range(2, 64));
    auto *opt_q = qudit->add_option("--qubits", qo.qubits, "Number of qubits (Pauli products)")->check(CLI::Range(1, 4));
    opt_d->excludes(opt_q);

    ExportOptions eo;
    auto *exp = app.add_subcommand("export-protocols", "Write the protocol catalog as JSON");
    add_output_options(exp, eo.out, {"json"});
    eo.out.format = "json";
    exp->add_option("--protocols", eo.protocols, "Protocol keys")->delimiter(',')->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitSuccess : kExitUsage;
    }
    ro.jobs_set = jobs->count() > 0;

    RunHeader header{join_args(args), Json::object(), std::nullopt};
    try {
        if (*table1) {
            header.config = Json{{"format", t1.out.format}, {"catalog", t1.catalog}};
            return cmd_table1(t1, header, out, err);
        }
        if (*recon) {
            header.config = Json{{"protocol", rc.protocol}, {"state", rc.state},       {"noise", rc.noise},
                                 {"shots", rc.shots},       {"efficiency", rc.efficiency},
                                 {"sigma_rel", rc.sigma_rel}, {"budget", rc.budget}, {"format", rc.out.format}};
            header.config["assumed_efficiency"] = rc.assumed_efficiency.value_or(rc.efficiency);
            header.seed = rc.seed;
            return cmd_reconstruct(rc, header, out, err);
        }
        if (*robust) {
            return cmd_robustness(ro, header, out, err);
        }
        if (*verify) {
            header.config = Json{{"format", vs.format}};
            return cmd_verify_setup(vs, header, out, err);
        }
        if (*qudit) {
            header.config = Json{{"d", qo.d}, {"qubits", qo.qubits}, {"format", qo.out.format}};
            return cmd_qudit(qo, header, out, err);
        }
        if (*exp) {
            header.config = Json{{"protocols", eo.protocols}};
            return cmd_export(eo, header, out, err);
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace optqst
