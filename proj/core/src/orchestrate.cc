// Copyright 2026 The mvflow Authors
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
#include "mvflow/orchestrate.h"

#include <algorithm>
#include <optional>

#include "mvflow/errors.h"

namespace mvflow {

namespace {

Ensemble initial_ensemble(const CircuitDocument &doc) {
    switch (doc.init.kind) {
        case InitKind::Basis:
            return Ensemble::homogeneous(BitWord(doc.init.basis, doc.width));
        case InitKind::Ensemble: {
            std::map<std::uint64_t, Rational> mu;
            for (const auto &[b, m] : doc.init.ensemble) {
                mu[b] += m;
            }
            return Ensemble(doc.width, std::move(mu));
        }
        case InitKind::State:
            break;
    }
    throw ValidationError("an amplitude init has no classical ensemble");
}

// Step tables for the classical side; non-classical steps either fail or
// leave the ensemble alone.
std::vector<StepPermutation> classical_tables(const CircuitDocument &doc, bool idle_if_quantum,
                                              const char *engine) {
    std::vector<StepPermutation> out;
    for (std::size_t t = 0; t < doc.steps.size(); ++t) {
        auto f = classical_candidate(doc.steps[t], doc.width);
        if (!f && !idle_if_quantum) {
            throw ValidationError("step " + std::to_string(t) + " has no classical analogue; the " + engine +
                                  " engine cannot run it");
        }
        out.push_back(f ? *f : StepPermutation::identity(doc.width));
    }
    return out;
}

std::vector<Ensemble> ensemble_history(const Ensemble &e0, const std::vector<StepPermutation> &tables) {
    std::vector<Ensemble> history{e0};
    for (const auto &f : tables) {
        history.push_back(evolve_multiplicities(history.back(), f));
    }
    return history;
}

std::string join(const std::vector<int> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s;
}

std::string selector_label(const AnalysisRequest &req, int n) {
    const int c = req.control == 0 ? n : req.control;
    switch (req.selector) {
        case SelectorFamily::AllZ:
            return "z";
        case SelectorFamily::ControlOn:
            return "z" + std::to_string(c);
        case SelectorFamily::ControlOff:
            return "off" + std::to_string(c);
        case SelectorFamily::ControlOnX:
            return "x" + std::to_string(c);
    }
    return "?";
}

AnalysisOutcome correspondence(const CircuitDocument &doc, const QuantumRun &run, double tol) {
    AnalysisOutcome out;
    out.name = "correspondence";
    const auto history = ensemble_history(initial_ensemble(doc), classical_tables(doc, true, "ensemble"));
    const auto report = check_correspondence(run, history, tol);
    out.passed = report.pass;
    out.metrics["max_deviation"] = report.max_deviation;
    out.detail = report.pass ? "quantum weights match ensemble proportions"
                             : "weights diverge from t=" + std::to_string(*report.first_failing_time);
    return out;
}

AnalysisOutcome classicality(const QuantumRun &run, double tol) {
    AnalysisOutcome out;
    out.name = "classicality";
    std::vector<int> failing;
    double worst = 0.0;
    for (std::size_t t = 0; t < run.steps.size(); ++t) {
        auto v = verify_classical_step(run, static_cast<int>(t), classical_candidate(run.steps[t], run.width()), tol);
        if (!v.classical) {
            failing.push_back(static_cast<int>(t));
            worst = std::max(worst, v.residual);
        }
    }
    out.passed = failing.empty();
    out.metrics["nonclassical_steps"] = static_cast<double>(failing.size());
    out.metrics["max_residual"] = worst;
    out.detail = failing.empty() ? "every step is b(t+1) = f(b(t))" : "non-classical steps: " + join(failing);
    return out;
}

AnalysisOutcome autonomy(const AnalysisRequest &req, const QuantumRun &run, double tol) {
    const int n = run.width();
    const int c = req.control == 0 ? n : req.control;
    const int steps = static_cast<int>(run.steps.size());
    const auto label = selector_label(req, n);
    if (req.selector != SelectorFamily::AllZ && (n < 2 || c < 1 || c > n)) {
        throw ValidationError("selector " + label + " needs a control qubit inside a network of at least 2 qubits");
    }
    AutonomyReport report;
    switch (req.selector) {
        case SelectorFamily::AllZ:
            report = check_autonomy(run, label, select_all_z(), classical_z_law(run.steps, n), 0, steps, tol);
            break;
        case SelectorFamily::ControlOn:
            report = check_autonomy(run, label, select_control_on_z(c), control_on_law(run.steps, n, c), 0, steps,
                                    tol);
            break;
        case SelectorFamily::ControlOff:
            report = check_autonomy(run, label, select_control_off(c), control_off_law(run.steps, n, c), 0, steps,
                                    tol);
            break;
        case SelectorFamily::ControlOnX:
            report = probe_autonomy(run, label, select_control_on_x(c), control_on_x_generators(c), 0, steps, tol);
            break;
    }
    AnalysisOutcome out;
    out.name = "autonomy selector=" + label;
    out.passed = report.autonomous;
    out.metrics["max_residual"] = report.max_residual;
    out.detail = report.method + ": " + report.reason;
    if (report.counterexample_time) {
        out.detail += " at step " + std::to_string(*report.counterexample_time);
    }
    return out;
}

AnalysisOutcome robustness(const CircuitDocument &doc, const AnalysisRequest &req, const RunOptions &options) {
    std::vector<int> monitor = req.monitor;
    if (monitor.empty()) {
        for (int q = 1; q <= doc.width; ++q) {
            monitor.push_back(q);
        }
    }
    const auto report = measurement_robustness_check(doc.width, doc.steps, initial_amplitudes(doc), monitor,
                                                     options.max_qubits, options.tolerance);
    AnalysisOutcome out;
    out.name = "robustness monitor=" + join(monitor);
    out.passed = report.weights.pass;
    out.metrics["max_deviation"] = report.weights.max_deviation;
    out.metrics["max_x_change"] = report.max_x_change;
    out.metrics["ancillas"] = report.ancillas;
    out.detail = report.weights.pass ? "monitoring leaves the weights unchanged"
                                     : "monitoring changes the weights from t=" +
                                           std::to_string(*report.weights.first_failing_time);
    return out;
}

}  // namespace

bool RunResult::expectations_met() const {
    return std::all_of(analyses.begin(), analyses.end(), [](const auto &a) { return a.meets_expectation(); });
}

RunResult orchestrate(const CircuitDocument &doc, const RunOptions &options) {
    if (doc.engines.empty()) {
        throw ValidationError("document requests no engine");
    }
    for (const auto &step : doc.steps) {
        validate_step(step, doc.width);
    }
    RunResult result;
    result.width = doc.width;
    result.options = options;
    result.warnings = doc.warnings;

    std::optional<QuantumRun> run;
    auto quantum = [&]() -> const QuantumRun & {
        if (!run) {
            run = run_quantum(init_network(doc.width, initial_amplitudes(doc), options.max_qubits), doc.steps);
        }
        return *run;
    };

    for (Engine e : doc.engines) {
        RunTrace trace;
        trace.engine = e;
        if (e == Engine::Quantum) {
            trace.trace = branch_history(quantum(), options.tolerance);
        } else {
            if (doc.init.kind == InitKind::State ||
                (e == Engine::Classical && doc.init.kind != InitKind::Basis)) {
                throw ValidationError(std::string("the ") + engine_name(e) + " engine cannot start from this init");
            }
            const auto tables = classical_tables(doc, false, engine_name(e));
            const auto history = ensemble_history(initial_ensemble(doc), tables);
            trace.trace = branch_history(history, std::span<const StepPermutation>(tables));
        }
        result.traces.push_back(std::move(trace));
    }

    auto requests = doc.analyses;
    const bool asked = std::any_of(requests.begin(), requests.end(),
                                   [](const auto &r) { return r.kind == AnalysisKind::Correspondence; });
    if (!asked && doc.runs(Engine::Quantum) && doc.runs(Engine::Ensemble)) {
        requests.push_back(AnalysisRequest{});
    }
    for (const auto &req : requests) {
        AnalysisOutcome outcome;
        switch (req.kind) {
            case AnalysisKind::Correspondence:
                outcome = correspondence(doc, quantum(), options.tolerance);
                break;
            case AnalysisKind::Classicality:
                outcome = classicality(quantum(), options.tolerance);
                break;
            case AnalysisKind::Autonomy:
                outcome = autonomy(req, quantum(), options.tolerance);
                break;
            case AnalysisKind::Robustness:
                outcome = robustness(doc, req, options);
                break;
        }
        outcome.expect_pass = req.expect_pass;
        result.analyses.push_back(std::move(outcome));
    }
    return result;
}

}  // namespace mvflow
