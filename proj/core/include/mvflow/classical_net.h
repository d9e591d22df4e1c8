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
#ifndef MVFLOW_CLASSICAL_NET_H
#define MVFLOW_CLASSICAL_NET_H

#include <array>
#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace mvflow {

/// Computational state of an N-bit network, encoded as an integer in [0, 2^N).
/// Bit k (1-based) is the k'th least significant bit, so the word reads
/// 2^(N-1) b_N + ... + 2 b_2 + b_1.
class BitWord {
   public:
    static constexpr int kMaxWidth = 30;

    BitWord() = default;
    BitWord(std::uint64_t value, int width);

    std::uint64_t value() const noexcept {
        return value_;
    }
    int width() const noexcept {
        return width_;
    }
    /// Value of bit k, 1-based.
    int bit(int k) const;
    BitWord with_bit(int k, int v) const;

    /// Binary literal with exactly width() digits, e.g. "0b011".
    std::string to_string() const;

    friend bool operator==(const BitWord &, const BitWord &) = default;
    friend auto operator<=>(const BitWord &, const BitWord &) = default;

   private:
    std::uint64_t value_ = 0;
    int width_ = 1;
};

enum class GateKind { Toffoli, CNot, Not, Swap, Delay };

/// A reversible classical gate on 1-based bit indices.
///   Toffoli: bits = {k, l, m}, flips m when k and l are both set.
///   CNot:    bits = {control, target}.
///   Not, Delay: bits = {k}.  Swap: bits = {k, l}.
struct ClassicalGate {
    GateKind kind = GateKind::Delay;
    std::array<int, 3> idx{1, 0, 0};

    static ClassicalGate toffoli(int k, int l, int m);
    static ClassicalGate cnot(int control, int target);
    static ClassicalGate not_gate(int k);
    static ClassicalGate swap(int k, int l);
    static ClassicalGate delay(int k);

    int arity() const noexcept;
    std::span<const int> bits() const noexcept {
        return {idx.data(), static_cast<std::size_t>(arity())};
    }
    /// Throws ValidationError if indices repeat or fall outside [1, width].
    void validate(int width) const;

    friend bool operator==(const ClassicalGate &, const ClassicalGate &) = default;
};

const char *gate_name(GateKind kind);

/// f_t for one synchronous layer: a bijection on Z_{2^N} plus the grouping of
/// bits by the gate they pass through (idle bits form singleton groups).
class StepPermutation {
   public:
    StepPermutation() = default;
    StepPermutation(int width, std::vector<std::uint64_t> table, std::vector<std::vector<int>> partition);

    static StepPermutation identity(int width);

    int width() const noexcept {
        return width_;
    }
    const std::vector<std::uint64_t> &table() const noexcept {
        return table_;
    }
    const std::vector<std::vector<int>> &touched_partition() const noexcept {
        return partition_;
    }
    std::uint64_t operator()(std::uint64_t b) const {
        return table_.at(b);
    }
    BitWord operator()(const BitWord &b) const;

    StepPermutation inverse() const;
    bool is_identity() const;

   private:
    int width_ = 0;
    std::vector<std::uint64_t> table_;
    std::vector<std::vector<int>> partition_;
};

using GateLayer = std::vector<ClassicalGate>;

/// A width plus an ordered list of synchronous layers.
struct NetworkProgram {
    int width = 1;
    std::vector<GateLayer> steps;

    /// Throws ValidationError on bad indices or a bit shared by two gates of one layer.
    void validate() const;
    std::vector<StepPermutation> step_permutations() const;
};

BitWord apply_gate(const ClassicalGate &gate, const BitWord &b);

/// Composes a layer of pairwise disjoint gates into its step permutation.
StepPermutation compose_step(std::span<const ClassicalGate> gates, int width);

/// Checks that the output bits of every partition block depend only on input
/// bits of the same block.
bool factorizes_over_partition(const StepPermutation &step);

/// Trajectory b(0), ..., b(T) with b(t+1) = f_t(b(t)).
std::vector<BitWord> run(const NetworkProgram &program, const BitWord &b0);

/// Inverse trajectory: applies inverted steps in reverse order, starting at b(T).
std::vector<BitWord> run_backwards(const NetworkProgram &program, const BitWord &final_word);

/// Bits that can carry information confined to `seed` at time t0, by time t1.
std::set<int> info_cone(const NetworkProgram &program, const std::set<int> &seed, int t0, int t1);

/// Canonical representative of `b` under permutations of identical disjoint
/// sub-network blocks: block contents (first listed bit least significant) are
/// sorted ascending in block order, giving the lexicographically least tuple.
BitWord canonicalize_under_subnetwork_permutation(const BitWord &b, const std::vector<std::vector<int>> &blocks);

}  // namespace mvflow

#endif  // MVFLOW_CLASSICAL_NET_H
