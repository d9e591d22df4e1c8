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
#include "mvflow/ensemble.h"

#include "mvflow/errors.h"

namespace mvflow {

Ensemble::Ensemble(int width, std::map<std::uint64_t, Rational> multiplicities) : width_(width) {
    if (width < 1 || width > BitWord::kMaxWidth) {
        throw ValidationError("ensemble width " + std::to_string(width) + " out of range");
    }
    for (const auto &[b, mu] : multiplicities) {
        if (b >> width != 0) {
            throw ValidationError("ensemble state " + std::to_string(b) + " does not fit in " + std::to_string(width) +
                                  " bits");
        }
        if (mu < 0) {
            throw ValidationError("negative multiplicity for state " + std::to_string(b));
        }
        if (mu != Rational(0)) {
            mu_.emplace(b, mu);
        }
    }
    if (mu_.empty()) {
        throw ValidationError("ensemble total multiplicity must be positive");
    }
}

Ensemble Ensemble::homogeneous(const BitWord &b, Rational multiplicity) {
    std::map<std::uint64_t, Rational> mu;
    mu.emplace(b.value(), multiplicity);
    return Ensemble(b.width(), std::move(mu));
}

Rational Ensemble::multiplicity(std::uint64_t b) const {
    auto it = mu_.find(b);
    return it == mu_.end() ? Rational(0) : it->second;
}

Rational Ensemble::total() const {
    Rational m(0);
    for (const auto &[b, mu] : mu_) {
        m += mu;
    }
    return m;
}

Rational Ensemble::proportion(std::uint64_t b) const {
    return multiplicity(b) / total();
}

Ensemble evolve_multiplicities(const Ensemble &e, const StepPermutation &f) {
    if (e.width() != f.width()) {
        throw ValidationError("ensemble width " + std::to_string(e.width()) + " does not match step width " +
                              std::to_string(f.width()));
    }
    // mu'_{f(b)} = mu_b is the same statement as mu'_b = mu_{f^-1(b)}.
    std::map<std::uint64_t, Rational> next;
    for (const auto &[b, mu] : e.multiplicities()) {
        next.emplace(f(b), mu);
    }
    return Ensemble(e.width(), std::move(next));
}

std::vector<Ensemble> evolve_history(const Ensemble &e, const NetworkProgram &program) {
    std::vector<Ensemble> history{e};
    for (const auto &f : program.step_permutations()) {
        history.push_back(evolve_multiplicities(history.back(), f));
    }
    return history;
}

std::vector<Branch> branches(const Ensemble &e, const NetworkProgram &program) {
    std::vector<Branch> out;
    out.reserve(e.branch_count());
    for (const auto &[b, mu] : e.multiplicities()) {
        out.push_back(Branch{run(program, BitWord(b, e.width())), mu});
    }
    return out;
}

}  // namespace mvflow
