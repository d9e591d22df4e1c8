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
#include "test_util.h"

#include <algorithm>
#include <numeric>
#include <set>

namespace mvflow_test {

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix pauli(char which) {
    Matrix m(2, 2);
    switch (which) {
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, Complex(0, -1), Complex(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            m << 1, 0, 0, 1;
            break;
    }
    return m;
}

Matrix on_qubit(const Matrix &m, int k, int n) {
    Matrix out = Matrix::Identity(1, 1);
    for (int q = n; q >= 1; --q) {
        out = kron(out, q == k ? m : pauli('I'));
    }
    return out;
}

Matrix permutation_matrix(const std::function<std::uint64_t(std::uint64_t)> &f, int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    Matrix p = Matrix::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        p(static_cast<Eigen::Index>(f(static_cast<std::uint64_t>(b))), b) = 1.0;
    }
    return p;
}

std::uint64_t oracle_apply(const ClassicalGate &g, std::uint64_t b) {
    auto bit = [&](int k) { return (b >> (k - 1)) & 1U; };
    auto flip = [&](int k) { return b ^ (std::uint64_t{1} << (k - 1)); };
    const auto &i = g.idx;
    switch (g.kind) {
        case GateKind::Toffoli:
            return (bit(i[0]) && bit(i[1])) ? flip(i[2]) : b;
        case GateKind::CNot:
            return bit(i[0]) ? flip(i[1]) : b;
        case GateKind::Not:
            return flip(i[0]);
        case GateKind::Swap:
            return bit(i[0]) == bit(i[1]) ? b : flip(i[0]) ^ (std::uint64_t{1} << (i[1] - 1));
        case GateKind::Delay:
            return b;
    }
    return b;
}

std::uint64_t oracle_step(const std::vector<ClassicalGate> &gates, std::uint64_t b) {
    for (const auto &g : gates) {
        b = oracle_apply(g, b);
    }
    return b;
}

Matrix random_single_qubit(std::mt19937_64 &rng) {
    return random_unitary(2, rng);
}

namespace {

std::vector<int> distinct_qubits(int n, int count, std::mt19937_64 &rng) {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 1);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(count));
    return all;
}

}  // namespace

ClassicalGate random_classical_gate(int n, std::mt19937_64 &rng) {
    const int choices = n >= 3 ? 5 : (n == 2 ? 4 : 2);
    std::uniform_int_distribution<int> pick(0, choices - 1);
    switch (pick(rng)) {
        case 0:
            return ClassicalGate::delay(distinct_qubits(n, 1, rng)[0]);
        case 1:
            return ClassicalGate::not_gate(distinct_qubits(n, 1, rng)[0]);
        case 2: {
            auto q = distinct_qubits(n, 2, rng);
            return ClassicalGate::cnot(q[0], q[1]);
        }
        case 3: {
            auto q = distinct_qubits(n, 2, rng);
            return ClassicalGate::swap(q[0], q[1]);
        }
        default: {
            auto q = distinct_qubits(n, 3, rng);
            return ClassicalGate::toffoli(q[0], q[1], q[2]);
        }
    }
}

QuantumGate random_gate(int n, std::mt19937_64 &rng, bool allow_unitary) {
    std::uniform_int_distribution<int> pick(0, allow_unitary ? 4 : 3);
    std::uniform_real_distribution<double> angle(-3.2, 3.2);
    int kind = pick(rng);
    if (kind == 0 && n < 3) {
        kind = 1;
    }
    if (kind == 1 && n < 2) {
        kind = 2;
    }
    switch (kind) {
        case 0: {
            auto q = distinct_qubits(n, 3, rng);
            return ClassicalGate::toffoli(q[0], q[1], q[2]);
        }
        case 1: {
            auto q = distinct_qubits(n, 2, rng);
            return ClassicalGate::cnot(q[0], q[1]);
        }
        case 2:
            return ClassicalGate::delay(distinct_qubits(n, 1, rng)[0]);
        case 3:
            return PhaseGate{distinct_qubits(n, 1, rng)[0], angle(rng)};
        default:
            return UnitaryGate{{distinct_qubits(n, 1, rng)[0]}, random_single_qubit(rng)};
    }
}

std::vector<QuantumStep> pack_steps(const std::vector<QuantumGate> &gates, int n) {
    std::vector<QuantumStep> steps;
    std::set<int> used;
    for (const auto &g : gates) {
        const auto qs = gate_qubits(g, n);
        bool clash = steps.empty() ||
                     std::any_of(qs.begin(), qs.end(), [&](int q) { return used.count(q) > 0; });
        if (clash) {
            steps.emplace_back();
            used.clear();
        }
        steps.back().push_back(g);
        used.insert(qs.begin(), qs.end());
    }
    return steps;
}

std::vector<QuantumStep> random_circuit(int n, int gates, std::mt19937_64 &rng, bool allow_unitary) {
    std::vector<QuantumGate> flat;
    for (int i = 0; i < gates; ++i) {
        flat.push_back(random_gate(n, rng, allow_unitary));
    }
    return pack_steps(flat, n);
}

std::vector<Descriptor> random_descriptors(int n, std::mt19937_64 &rng) {
    const Matrix w = random_unitary(1 << n, rng);
    std::vector<Descriptor> out;
    for (int k = 1; k <= n; ++k) {
        auto d = initial_descriptor(k, n);
        out.push_back({w.adjoint() * d.x * w, w.adjoint() * d.y * w, w.adjoint() * d.z * w});
    }
    return out;
}

Matrix hadamard() {
    Matrix h(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    h << r, r, r, -r;
    return h;
}

Descriptor conjugated(const Matrix &w, const Matrix &gate, int k, int n) {
    const Matrix w2 = gate * w;
    auto d = initial_descriptor(k, n);
    return {w2.adjoint() * d.x * w2, w2.adjoint() * d.y * w2, w2.adjoint() * d.z * w2};
}

double descriptor_distance(const Descriptor &a, const Descriptor &b) {
    return std::max({max_abs_entry(a.x - b.x), max_abs_entry(a.y - b.y), max_abs_entry(a.z - b.z)});
}

Matrix toffoli_matrix(int k, int l, int m, int n) {
    return permutation_matrix([&](std::uint64_t b) { return oracle_apply(ClassicalGate::toffoli(k, l, m), b); }, n);
}

Matrix cnot_matrix(int m, int t, int n) {
    return permutation_matrix([&](std::uint64_t b) { return oracle_apply(ClassicalGate::cnot(m, t), b); }, n);
}

}  // namespace mvflow_test
