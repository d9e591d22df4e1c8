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
#ifndef MVFLOW_ENSEMBLE_H
#define MVFLOW_ENSEMBLE_H

#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <vector>

#include "mvflow/classical_net.h"

namespace mvflow {

/// Exact multiplicities; integers give multisets, fractions give proportions.
// Compare against Rational(0), never a bare 0: mixed rational == int recurses
// forever under C++20 rewritten comparisons in Boost 1.74.
using Rational = boost::rational<std::int64_t>;

/// An ensemble of identical N-bit networks: multiplicity per computational
/// state.  Zero entries are dropped and the total is strictly positive.
class Ensemble {
   public:
    Ensemble(int width, std::map<std::uint64_t, Rational> multiplicities);

    static Ensemble homogeneous(const BitWord &b, Rational multiplicity = Rational(1));

    int width() const noexcept {
        return width_;
    }
    const std::map<std::uint64_t, Rational> &multiplicities() const noexcept {
        return mu_;
    }
    Rational multiplicity(std::uint64_t b) const;
    Rational total() const;
    std::size_t branch_count() const noexcept {
        return mu_.size();
    }
    /// mu_b / M.
    Rational proportion(std::uint64_t b) const;

    friend bool operator==(const Ensemble &, const Ensemble &) = default;

   private:
    int width_;
    std::map<std::uint64_t, Rational> mu_;
};

/// A branch: a constant multiplicity riding along one trajectory.
struct Branch {
    std::vector<BitWord> trajectory;
    Rational multiplicity;
};

/// mu'_b = mu_{f^-1(b)}.
Ensemble evolve_multiplicities(const Ensemble &e, const StepPermutation &f);

/// Ensemble at every integer time of the program, starting with `e`.
std::vector<Ensemble> evolve_history(const Ensemble &e, const NetworkProgram &program);

/// One branch per occupied initial state, in increasing order of that state.
std::vector<Branch> branches(const Ensemble &e, const NetworkProgram &program);

}  // namespace mvflow

#endif  // MVFLOW_ENSEMBLE_H
