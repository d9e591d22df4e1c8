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
#include "mvflow/classical_net.h"

#include <algorithm>

#include "mvflow/errors.h"

namespace mvflow {

BitWord::BitWord(std::uint64_t value, int width) : value_(value), width_(width) {
    if (width < 1 || width > kMaxWidth) {
        throw ValidationError("bit word width " + std::to_string(width) + " outside [1, " +
                              std::to_string(kMaxWidth) + "]");
    }
    if (value >> width != 0) {
        throw ValidationError("bit word value " + std::to_string(value) + " does not fit in " +
                              std::to_string(width) + " bits");
    }
}

int BitWord::bit(int k) const {
    if (k < 1 || k > width_) {
        throw ValidationError("bit index " + std::to_string(k) + " outside [1, " + std::to_string(width_) + "]");
    }
    return static_cast<int>((value_ >> (k - 1)) & 1U);
}

BitWord BitWord::with_bit(int k, int v) const {
    (void)bit(k);
    std::uint64_t mask = std::uint64_t{1} << (k - 1);
    return BitWord(v ? (value_ | mask) : (value_ & ~mask), width_);
}

std::string BitWord::to_string() const {
    std::string s = "0b";
    for (int k = width_; k >= 1; --k) {
        s.push_back(bit(k) ? '1' : '0');
    }
    return s;
}

ClassicalGate ClassicalGate::toffoli(int k, int l, int m) {
    return {GateKind::Toffoli, {k, l, m}};
}
ClassicalGate ClassicalGate::cnot(int control, int target) {
    return {GateKind::CNot, {control, target, 0}};
}
ClassicalGate ClassicalGate::not_gate(int k) {
    return {GateKind::Not, {k, 0, 0}};
}
ClassicalGate ClassicalGate::swap(int k, int l) {
    return {GateKind::Swap, {k, l, 0}};
}
ClassicalGate ClassicalGate::delay(int k) {
    return {GateKind::Delay, {k, 0, 0}};
}

int ClassicalGate::arity() const noexcept {
    switch (kind) {
        case GateKind::Toffoli:
            return 3;
        case GateKind::CNot:
        case GateKind::Swap:
            return 2;
        case GateKind::Not:
        case GateKind::Delay:
            return 1;
    }
    return 0;
}

const char *gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::Toffoli:
            return "toffoli";
        case GateKind::CNot:
            return "cnot";
        case GateKind::Not:
            return "not";
        case GateKind::Swap:
            return "swap";
        case GateKind::Delay:
            return "delay";
    }
    return "?";
}

void ClassicalGate::validate(int width) const {
    auto b = bits();
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] < 1 || b[i] > width) {
            throw ValidationError(std::string(gate_name(kind)) + " index " + std::to_string(b[i]) +
                                  " outside [1, " + std::to_string(width) + "]");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (b[i] == b[j]) {
                throw ValidationError(std::string(gate_name(kind)) + " repeats index " + std::to_string(b[i]));
            }
        }
    }
}

BitWord apply_gate(const ClassicalGate &gate, const BitWord &b) {
    gate.validate(b.width());
    const auto &i = gate.idx;
    switch (gate.kind) {
        case GateKind::Toffoli: {
            int bk = b.bit(i[0]), bl = b.bit(i[1]), bm = b.bit(i[2]);
            return b.with_bit(i[2], bm + bk * bl - 2 * bk * bl * bm);
        }
        case GateKind::CNot: {
            int bm = b.bit(i[0]), bn = b.bit(i[1]);
            return b.with_bit(i[1], bn ^ bm);
        }
        case GateKind::Not:
            return b.with_bit(i[0], 1 - b.bit(i[0]));
        case GateKind::Swap: {
            int bk = b.bit(i[0]), bl = b.bit(i[1]);
            return b.with_bit(i[0], bl).with_bit(i[1], bk);
        }
        case GateKind::Delay:
            return b;
    }
    return b;
}

StepPermutation::StepPermutation(int width, std::vector<std::uint64_t> table, std::vector<std::vector<int>> partition)
    : width_(width), table_(std::move(table)), partition_(std::move(partition)) {
    if (width < 1 || width > BitWord::kMaxWidth) {
        throw ValidationError("step width " + std::to_string(width) + " out of range");
    }
    const std::uint64_t dim = std::uint64_t{1} << width;
    if (table_.size() != dim) {
        throw ValidationError("step table has " + std::to_string(table_.size()) + " entries, expected " +
                              std::to_string(dim));
    }
    std::vector<bool> hit(dim, false);
    for (std::uint64_t image : table_) {
        if (image >= dim || hit[image]) {
            throw ValidationError("step table is not a bijection");
        }
        hit[image] = true;
    }
}

StepPermutation StepPermutation::identity(int width) {
    std::vector<std::uint64_t> table(std::size_t{1} << width);
    for (std::size_t b = 0; b < table.size(); ++b) {
        table[b] = b;
    }
    std::vector<std::vector<int>> partition;
    for (int k = 1; k <= width; ++k) {
        partition.push_back({k});
    }
    return StepPermutation(width, std::move(table), std::move(partition));
}

BitWord StepPermutation::operator()(const BitWord &b) const {
    if (b.width() != width_) {
        throw ValidationError("word width " + std::to_string(b.width()) + " does not match step width " +
                              std::to_string(width_));
    }
    return BitWord(table_[b.value()], width_);
}

StepPermutation StepPermutation::inverse() const {
    std::vector<std::uint64_t> inv(table_.size());
    for (std::size_t b = 0; b < table_.size(); ++b) {
        inv[table_[b]] = b;
    }
    return StepPermutation(width_, std::move(inv), partition_);
}

bool StepPermutation::is_identity() const {
    for (std::size_t b = 0; b < table_.size(); ++b) {
        if (table_[b] != b) {
            return false;
        }
    }
    return true;
}

namespace {

void check_disjoint(std::span<const ClassicalGate> gates, int width) {
    std::vector<bool> used(static_cast<std::size_t>(width) + 1, false);
    for (const auto &g : gates) {
        g.validate(width);
        for (int k : g.bits()) {
            if (used[k]) {
                throw ValidationError("bit " + std::to_string(k) + " passes through two gates in one step");
            }
            used[k] = true;
        }
    }
}

}  // namespace

StepPermutation compose_step(std::span<const ClassicalGate> gates, int width) {
    check_disjoint(gates, width);
    std::vector<std::uint64_t> table(std::size_t{1} << width);
    for (std::uint64_t b = 0; b < table.size(); ++b) {
        BitWord w(b, width);
        for (const auto &g : gates) {
            w = apply_gate(g, w);
        }
        table[b] = w.value();
    }

    std::vector<std::vector<int>> partition;
    std::vector<bool> touched(static_cast<std::size_t>(width) + 1, false);
    for (const auto &g : gates) {
        std::vector<int> block(g.bits().begin(), g.bits().end());
        std::sort(block.begin(), block.end());
        for (int k : block) {
            touched[k] = true;
        }
        partition.push_back(std::move(block));
    }
    // Idle bits pass through an implicit delay.
    for (int k = 1; k <= width; ++k) {
        if (!touched[k]) {
            partition.push_back({k});
        }
    }
    std::sort(partition.begin(), partition.end());
    return StepPermutation(width, std::move(table), std::move(partition));
}

bool factorizes_over_partition(const StepPermutation &step) {
    const int n = step.width();
    const std::uint64_t dim = std::uint64_t{1} << n;
    for (const auto &block : step.touched_partition()) {
        std::uint64_t mask = 0;
        for (int k : block) {
            mask |= std::uint64_t{1} << (k - 1);
        }
        // Flipping any bit outside the block must leave the block's outputs fixed.
        for (int k = 1; k <= n; ++k) {
            std::uint64_t flip = std::uint64_t{1} << (k - 1);
            if (mask & flip) {
                continue;
            }
            for (std::uint64_t b = 0; b < dim; ++b) {
                if ((step(b) & mask) != (step(b ^ flip) & mask)) {
                    return false;
                }
            }
        }
    }
    return true;
}

void NetworkProgram::validate() const {
    if (width < 1 || width > BitWord::kMaxWidth) {
        throw ValidationError("program width " + std::to_string(width) + " out of range");
    }
    for (const auto &layer : steps) {
        check_disjoint(layer, width);
    }
}

std::vector<StepPermutation> NetworkProgram::step_permutations() const {
    validate();
    std::vector<StepPermutation> out;
    out.reserve(steps.size());
    for (const auto &layer : steps) {
        out.push_back(compose_step(layer, width));
    }
    return out;
}

std::vector<BitWord> run(const NetworkProgram &program, const BitWord &b0) {
    program.validate();
    if (b0.width() != program.width) {
        throw ValidationError("initial word width " + std::to_string(b0.width()) + " does not match program width " +
                              std::to_string(program.width));
    }
    std::vector<BitWord> trajectory{b0};
    for (const auto &layer : program.steps) {
        BitWord w = trajectory.back();
        for (const auto &g : layer) {
            w = apply_gate(g, w);
        }
        trajectory.push_back(w);
    }
    return trajectory;
}

std::vector<BitWord> run_backwards(const NetworkProgram &program, const BitWord &final_word) {
    auto steps = program.step_permutations();
    std::vector<BitWord> trajectory{final_word};
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        trajectory.push_back(it->inverse()(trajectory.back()));
    }
    return trajectory;
}

std::set<int> info_cone(const NetworkProgram &program, const std::set<int> &seed, int t0, int t1) {
    program.validate();
    const int steps = static_cast<int>(program.steps.size());
    if (t0 < 0 || t0 > t1 || t1 > steps) {
        throw ValidationError("info_cone interval [" + std::to_string(t0) + ", " + std::to_string(t1) +
                              "] outside [0, " + std::to_string(steps) + "]");
    }
    for (int k : seed) {
        if (k < 1 || k > program.width) {
            throw ValidationError("info_cone seed bit " + std::to_string(k) + " out of range");
        }
    }
    std::set<int> cone = seed;
    for (int t = t0; t < t1; ++t) {
        std::set<int> next = cone;
        for (const auto &g : program.steps[t]) {
            bool hit = std::any_of(g.bits().begin(), g.bits().end(), [&](int k) { return cone.count(k) > 0; });
            if (hit) {
                next.insert(g.bits().begin(), g.bits().end());
            }
        }
        cone = std::move(next);
    }
    return cone;
}

BitWord canonicalize_under_subnetwork_permutation(const BitWord &b, const std::vector<std::vector<int>> &blocks) {
    if (blocks.empty()) {
        return b;
    }
    const std::size_t block_size = blocks.front().size();
    std::vector<bool> seen(static_cast<std::size_t>(b.width()) + 1, false);
    for (const auto &block : blocks) {
        if (block.size() != block_size) {
            throw ValidationError("sub-network blocks have unequal sizes");
        }
        for (int k : block) {
            if (k < 1 || k > b.width()) {
                throw ValidationError("block bit " + std::to_string(k) + " out of range");
            }
            if (seen[k]) {
                throw ValidationError("sub-network blocks overlap at bit " + std::to_string(k));
            }
            seen[k] = true;
        }
    }

    std::vector<std::uint64_t> contents;
    contents.reserve(blocks.size());
    for (const auto &block : blocks) {
        std::uint64_t v = 0;
        for (std::size_t j = 0; j < block.size(); ++j) {
            v |= static_cast<std::uint64_t>(b.bit(block[j])) << j;
        }
        contents.push_back(v);
    }
    std::sort(contents.begin(), contents.end());

    BitWord out = b;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (std::size_t j = 0; j < block_size; ++j) {
            out = out.with_bit(blocks[i][j], static_cast<int>((contents[i] >> j) & 1U));
        }
    }
    return out;
}

}  // namespace mvflow
