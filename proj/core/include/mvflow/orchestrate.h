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
#ifndef MVFLOW_ORCHESTRATE_H
#define MVFLOW_ORCHESTRATE_H

#include <map>
#include <string>
#include <vector>

#include "mvflow/circuit_document.h"
#include "mvflow/flow_analyzer.h"

namespace mvflow {

struct RunOptions {
    double tolerance = kDefaultTolerance;
    int max_qubits = HeisenbergNetwork::kDefaultMaxQubits;
};

struct RunTrace {
    Engine engine = Engine::Quantum;
    BranchTrace trace;
};

struct AnalysisOutcome {
    std::string name;  ///< e.g. "autonomy selector=z3"
    bool passed = false;
    bool expect_pass = true;
    std::string detail;
    std::map<std::string, double> metrics;

    bool meets_expectation() const {
        return passed == expect_pass;
    }
};

struct RunResult {
    int width = 1;
    RunOptions options;
    std::vector<RunTrace> traces;
    std::vector<AnalysisOutcome> analyses;
    std::vector<std::string> warnings;

    bool expectations_met() const;
};

/// Runs every engine the document asks for, then its analyses.  A
/// correspondence check is appended when both quantum and ensemble engines
/// run and none was requested.  Deterministic: weights are exact
/// expectations.
RunResult orchestrate(const CircuitDocument &doc, const RunOptions &options = {});

}  // namespace mvflow

#endif  // MVFLOW_ORCHESTRATE_H
