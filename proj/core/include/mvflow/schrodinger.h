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
#ifndef MVFLOW_SCHRODINGER_H
#define MVFLOW_SCHRODINGER_H

#include <vector>

#include "mvflow/heisenberg.h"

namespace mvflow {

/// State-vector reference engine.  Gates act directly on amplitudes, sharing
/// no code with the Heisenberg engine's matrix paths.
struct OracleResult {
    std::vector<Vector> states;                      ///< psi(t), t = 0..T
    std::vector<std::vector<double>> distributions;  ///< |<b|psi(t)>|^2
};

Vector apply_gate_to_state(const QuantumGate &gate, int n, const Vector &psi);

OracleResult schrodinger_oracle(int n, const std::vector<QuantumStep> &steps, const Vector &psi0);

}  // namespace mvflow

#endif  // MVFLOW_SCHRODINGER_H
