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
#include "mvflow/schrodinger.h"

#include <cmath>

#include "mvflow/errors.h"

namespace mvflow {

namespace {

using Index = Eigen::Index;

int qubit_bit(std::uint64_t i, int q) {
    return static_cast<int>((i >> (q - 1)) & 1U);
}

// Amplitude-level application of a local matrix: for each assignment of the
// other qubits, gather the 2^k amplitudes, multiply, scatter.
Vector apply_local(const Matrix &m, const std::vector<int> &qubits, int n, const Vector &psi,
                   std::uint64_t skip_mask = 0, std::uint64_t skip_value = 0) {
    Vector out = psi;
    const std::uint64_t dim = std::uint64_t{1} << n;
    const std::uint64_t local_dim = std::uint64_t{1} << qubits.size();
    std::uint64_t mask = 0;
    for (int q : qubits) {
        mask |= std::uint64_t{1} << (q - 1);
    }
    for (std::uint64_t rest = 0; rest < dim; ++rest) {
        if (rest & mask) {
            continue;
        }
        if (skip_mask && (rest & skip_mask) != skip_value) {
            continue;
        }
        std::vector<std::uint64_t> idx(local_dim);
        for (std::uint64_t l = 0; l < local_dim; ++l) {
            std::uint64_t i = rest;
            for (std::size_t j = 0; j < qubits.size(); ++j) {
                if ((l >> j) & 1U) {
                    i |= std::uint64_t{1} << (qubits[j] - 1);
                }
            }
            idx[l] = i;
        }
        for (std::uint64_t r = 0; r < local_dim; ++r) {
            Complex acc = 0.0;
            for (std::uint64_t c = 0; c < local_dim; ++c) {
                acc += m(static_cast<Index>(r), static_cast<Index>(c)) * psi(static_cast<Index>(idx[c]));
            }
            out(static_cast<Index>(idx[r])) = acc;
        }
    }
    return out;
}

}  // namespace

Vector apply_gate_to_state(const QuantumGate &gate, int n, const Vector &psi) {
    const Index dim = Index{1} << n;
    if (psi.size() != dim) {
        throw ValidationError("state dimension does not match the qubit count");
    }
    if (const auto *g = std::get_if<ClassicalGate>(&gate)) {
        Vector out = Vector::Zero(dim);
        for (Index i = 0; i < dim; ++i) {
            out(static_cast<Index>(apply_gate(*g, BitWord(static_cast<std::uint64_t>(i), n)).value())) += psi(i);
        }
        return out;
    }
    if (const auto *p = std::get_if<PhaseGate>(&gate)) {
        Vector out = psi;
        const Complex phase = std::polar(1.0, p->theta);
        for (Index i = 0; i < dim; ++i) {
            if (qubit_bit(static_cast<std::uint64_t>(i), p->qubit)) {
                out(i) *= phase;
            }
        }
        return out;
    }
    if (const auto *u = std::get_if<UnitaryGate>(&gate)) {
        return apply_local(u->matrix, u->qubits, n, psi);
    }
    const auto &c = std::get<ConditionalGate>(gate);
    std::vector<int> others;
    for (int q = 1; q <= n; ++q) {
        if (q != c.control) {
            others.push_back(q);
        }
    }
    // Control off: U on the other qubits.
    const std::uint64_t cmask = std::uint64_t{1} << (c.control - 1);
    Vector out = apply_local(c.u, others, n, psi, cmask, 0);
    // Control on: amplitude of |1, b> moves to |1, f(b)>.
    for (Index i = 0; i < dim; ++i) {
        if (!qubit_bit(static_cast<std::uint64_t>(i), c.control)) {
            continue;
        }
        std::uint64_t packed = 0;
        for (std::size_t j = 0; j < others.size(); ++j) {
            packed |= static_cast<std::uint64_t>(qubit_bit(static_cast<std::uint64_t>(i), others[j])) << j;
        }
        std::uint64_t image = cmask;
        for (std::size_t j = 0; j < others.size(); ++j) {
            image |= ((c.f[packed] >> j) & 1U) << (others[j] - 1);
        }
        out(static_cast<Index>(image)) = psi(i);
    }
    return out;
}

OracleResult schrodinger_oracle(int n, const std::vector<QuantumStep> &steps, const Vector &psi0) {
    auto distribution = [](const Vector &psi) {
        std::vector<double> d(static_cast<std::size_t>(psi.size()));
        for (Index i = 0; i < psi.size(); ++i) {
            d[static_cast<std::size_t>(i)] = std::norm(psi(i));
        }
        return d;
    };
    OracleResult result;
    result.states.push_back(psi0);
    result.distributions.push_back(distribution(psi0));
    for (const auto &s : steps) {
        validate_step(s, n);
        Vector psi = result.states.back();
        for (const auto &gate : s) {
            psi = apply_gate_to_state(gate, n, psi);
        }
        result.distributions.push_back(distribution(psi));
        result.states.push_back(std::move(psi));
    }
    return result;
}

}  // namespace mvflow
