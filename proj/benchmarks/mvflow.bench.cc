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
#include <benchmark/benchmark.h>

#include <random>

#include "mvflow/circuit_document.h"
#include "mvflow/emit.h"
#include "mvflow/enumber.h"
#include "mvflow/flow_analyzer.h"
#include "mvflow/schrodinger.h"

using namespace mvflow;

namespace {

std::vector<QuantumStep> toffoli_ladder(int n, int steps) {
    std::vector<QuantumStep> out;
    for (int s = 0; s < steps; ++s) {
        const int k = 1 + s % (n - 2);
        out.push_back({ClassicalGate::toffoli(k, k + 1, k + 2)});
        out.push_back({PhaseGate{1 + s % n, 0.3}, ClassicalGate::cnot(1 + (s + 1) % n, 1 + (s + 2) % n)});
    }
    return out;
}

void heisenberg_step(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    auto net = init_network(n, random_state(1 << n, rng));
    const QuantumStep step{ClassicalGate::toffoli(1, 2, 3)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(net.step(step));
    }
}
BENCHMARK(heisenberg_step)->DenseRange(3, 8);

void descriptors(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(2);
    auto net = init_network(n, random_state(1 << n, rng)).step({ClassicalGate::cnot(1, 2)});
    for (auto _ : state) {
        benchmark::DoNotOptimize(net.descriptors());
    }
}
BENCHMARK(descriptors)->DenseRange(3, 8);

void oracle_run(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(3);
    const Vector psi = random_state(1 << n, rng);
    const auto steps = toffoli_ladder(n, 50);
    for (auto _ : state) {
        benchmark::DoNotOptimize(schrodinger_oracle(n, steps, psi));
    }
}
BENCHMARK(oracle_run)->DenseRange(3, 8);

void classical_verdict(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(4);
    const auto steps = toffoli_ladder(n, 1);
    const auto run = run_quantum(init_network(n, random_state(1 << n, rng)), steps);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_classical_step(run, 0));
    }
}
BENCHMARK(classical_verdict)->DenseRange(3, 6);

void ensemble_history(benchmark::State &state) {
    const int n = 10;
    NetworkProgram p{n, {}};
    for (int s = 0; s < 100; ++s) {
        p.steps.push_back({ClassicalGate::toffoli(1 + s % 8, 2 + s % 8, 3 + s % 8)});
    }
    std::map<std::uint64_t, Rational> mu;
    for (std::uint64_t b = 0; b < 64; ++b) {
        mu[b * 13 % 1024] = Rational(static_cast<std::int64_t>(b + 1), 7);
    }
    const Ensemble e(n, mu);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_history(e, p));
    }
}
BENCHMARK(ensemble_history);

void parse_run_emit(benchmark::State &state) {
    const std::string text =
        "qubits 3\n"
        "init ensemble 0b000:4 0b011:2 0b101:1 0b110:5\n"
        "step toffoli 1 2 3\n"
        "step cnot 1 2 ; not 3\n"
        "step swap 1 3\n";
    for (auto _ : state) {
        benchmark::DoNotOptimize(emit(orchestrate(parse_document(text)), EmitFormat::Json));
    }
}
BENCHMARK(parse_run_emit);

}  // namespace

BENCHMARK_MAIN();
