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
#ifndef MVFLOW_ENUMBER_H
#define MVFLOW_ENUMBER_H

#include <functional>
#include <map>
#include <set>
#include <vector>

#include "mvflow/classical_net.h"
#include "mvflow/ensemble.h"

namespace mvflow {

/// Element of the 2^N-dimensional e-number algebra.  The coefficients are
/// taken in the projector basis {P_b(t)} named by the time tag; e-numbers with
/// different tags are in different bases and never mix implicitly.
class ENumber {
   public:
    ENumber(int width, int time, std::vector<Rational> coeffs);

    static ENumber zero(int width, int time);
    static ENumber unit(int width, int time);
    /// b(t) = sum_b b P_b(t) in its own basis.
    static ENumber state(int width, int time);
    /// The constant multiplicity e-number sum_b mu_b(t) P_b(t), tagged t.
    static ENumber multiplicities(const Ensemble &e, int time);

    int width() const noexcept {
        return width_;
    }
    int time() const noexcept {
        return time_;
    }
    std::size_t dimension() const noexcept {
        return coeffs_.size();
    }
    const std::vector<Rational> &coeffs() const noexcept {
        return coeffs_;
    }
    const Rational &operator[](std::size_t b) const {
        return coeffs_.at(b);
    }

    ENumber operator+(const ENumber &other) const;
    ENumber operator-(const ENumber &other) const;
    ENumber operator*(const Rational &c) const;

    friend bool operator==(const ENumber &, const ENumber &) = default;

   private:
    int width_;
    int time_;
    std::vector<Rational> coeffs_;
};

/// P_b(t): unit coordinate vector at index b.
ENumber enumber_basis_projector(const BitWord &b, int time);

/// Componentwise lift of a scalar function.
ENumber lift_function(const std::function<Rational(const Rational &)> &g, const ENumber &x);

/// 1 at zero, 0 elsewhere.
Rational kronecker_delta(const Rational &v);

/// Orthonormal-basis dot product.  Throws on basis (time tag) mismatch.
Rational scalar_product(const ENumber &x, const ENumber &y);

/// Componentwise product, so P_a P_b = delta_ab P_a.
ENumber enumber_product(const ENumber &x, const ENumber &y);

/// P_a (x) P_b = P_{a 2^N' + b} of the combined algebra, extended bilinearly.
ENumber tensor(const ENumber &x, const ENumber &y);

/// Re-expresses an e-number given in basis P(t) in basis P(t+1), using
/// P_b(t+1) = P_{f^-1(b)}(t).
ENumber retime_forward(const ENumber &x, const StepPermutation &f);
/// Inverse of retime_forward: basis P(t+1) to basis P(t).
ENumber retime_backward(const ENumber &x, const StepPermutation &f);

/// b(t+1) = f(b(t)).  The result stays in the input's basis; componentwise
/// lifting commutes with retiming, so either order gives the same element.
ENumber evolve_enumber(const ENumber &b_of_t, const StepPermutation &f);

/// P_b(t) = delta(b(t) - b 1) for each present state b.
std::map<BitWord, ENumber> reconstruct_projectors_from_algebra(const ENumber &b_of_t, const std::set<BitWord> &present);

}  // namespace mvflow

#endif  // MVFLOW_ENUMBER_H
