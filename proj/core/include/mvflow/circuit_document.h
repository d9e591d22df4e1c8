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
#ifndef MVFLOW_CIRCUIT_DOCUMENT_H
#define MVFLOW_CIRCUIT_DOCUMENT_H

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mvflow/ensemble.h"
#include "mvflow/heisenberg.h"

namespace mvflow {

enum class Engine { Classical, Ensemble, Quantum };

const char *engine_name(Engine e);

enum class InitKind { Basis, Ensemble, State };

struct InitialCondition {
    InitKind kind = InitKind::Basis;
    std::uint64_t basis = 0;
    std::vector<std::pair<std::uint64_t, Rational>> ensemble;
    std::vector<std::pair<std::uint64_t, Complex>> amplitudes;
};

enum class AnalysisKind { Correspondence, Classicality, Autonomy, Robustness };

const char *analysis_name(AnalysisKind k);

/// Families understood by `analyze autonomy`.
enum class SelectorFamily {
    AllZ,       ///< z: every z-component, gate-local classical law
    ControlOn,  ///< zK: b_Kz b_jz, conditional control-on law
    ControlOff, ///< offK: control-off sector, conjugation law
    ControlOnX, ///< xK: b_Kz b_jx, perturbation probe
};

struct AnalysisRequest {
    AnalysisKind kind = AnalysisKind::Correspondence;
    SelectorFamily selector = SelectorFamily::AllZ;
    int control = 0;           ///< 0 means the last qubit
    std::vector<int> monitor;  ///< robustness; empty means every qubit
    bool expect_pass = true;
};

struct CircuitDocument {
    int width = 1;
    std::vector<Engine> engines;  ///< resolved on parse, never empty afterwards
    InitialCondition init;
    std::vector<QuantumStep> steps;
    std::vector<AnalysisRequest> analyses;
    std::vector<std::string> warnings;  ///< parse diagnostics, not part of the document's value

    bool runs(Engine e) const;
};

/// Line-oriented circuit description; see README for the grammar.  Errors
/// are ParseError with line, column and offending token.
CircuitDocument parse_document(std::string_view text);

/// Canonical text: parse(print(d)) equals d.
std::string print_document(const CircuitDocument &doc);

/// Deep equality over everything except warnings; matrices compare exactly.
bool documents_equal(const CircuitDocument &a, const CircuitDocument &b);

/// Normalized initial amplitudes (basis and ensemble inits map to sqrt(mu/M)).
Vector initial_amplitudes(const CircuitDocument &doc);

/// Shortest text that reads back as the same double.
std::string format_double(double v);

}  // namespace mvflow

#endif  // MVFLOW_CIRCUIT_DOCUMENT_H
