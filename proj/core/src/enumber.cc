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
#include "mvflow/enumber.h"

#include <string>

#include "mvflow/errors.h"

namespace mvflow {

namespace {

void require_same_basis(const ENumber &x, const ENumber &y, const char *op) {
    if (x.width() != y.width()) {
        throw ValidationError(std::string(op) + ": width mismatch (" + std::to_string(x.width()) + " vs " +
                              std::to_string(y.width()) + ")");
    }
    if (x.time() != y.time()) {
        throw ValidationError(std::string(op) + ": time tags " + std::to_string(x.time()) + " and " +
                              std::to_string(y.time()) + " differ; retime one operand first");
    }
}

void require_width(const ENumber &x, const StepPermutation &f) {
    if (x.width() != f.width()) {
        throw ValidationError("e-number width " + std::to_string(x.width()) + " does not match step width " +
                              std::to_string(f.width()));
    }
}

}  // namespace

ENumber::ENumber(int width, int time, std::vector<Rational> coeffs)
    : width_(width), time_(time), coeffs_(std::move(coeffs)) {
    if (width < 1 || width > BitWord::kMaxWidth) {
        throw ValidationError("e-number width " + std::to_string(width) + " out of range");
    }
    if (coeffs_.size() != (std::size_t{1} << width)) {
        throw ValidationError("e-number needs " + std::to_string(std::size_t{1} << width) + " coefficients, got " +
                              std::to_string(coeffs_.size()));
    }
}

ENumber ENumber::zero(int width, int time) {
    return ENumber(width, time, std::vector<Rational>(std::size_t{1} << width, Rational(0)));
}

ENumber ENumber::unit(int width, int time) {
    return ENumber(width, time, std::vector<Rational>(std::size_t{1} << width, Rational(1)));
}

ENumber ENumber::state(int width, int time) {
    std::vector<Rational> c(std::size_t{1} << width);
    for (std::size_t b = 0; b < c.size(); ++b) {
        c[b] = Rational(static_cast<std::int64_t>(b));
    }
    return ENumber(width, time, std::move(c));
}

ENumber ENumber::multiplicities(const Ensemble &e, int time) {
    auto x = zero(e.width(), time);
    for (const auto &[b, mu] : e.multiplicities()) {
        x.coeffs_[b] = mu;
    }
    return x;
}

ENumber ENumber::operator+(const ENumber &other) const {
    require_same_basis(*this, other, "e-number sum");
    auto out = *this;
    for (std::size_t b = 0; b < coeffs_.size(); ++b) {
        out.coeffs_[b] += other.coeffs_[b];
    }
    return out;
}

ENumber ENumber::operator-(const ENumber &other) const {
    return *this + other * Rational(-1);
}

ENumber ENumber::operator*(const Rational &c) const {
    auto out = *this;
    for (auto &v : out.coeffs_) {
        v *= c;
    }
    return out;
}

ENumber enumber_basis_projector(const BitWord &b, int time) {
    auto x = ENumber::zero(b.width(), time);
    std::vector<Rational> c = x.coeffs();
    c[b.value()] = Rational(1);
    return ENumber(b.width(), time, std::move(c));
}

ENumber lift_function(const std::function<Rational(const Rational &)> &g, const ENumber &x) {
    std::vector<Rational> c;
    c.reserve(x.dimension());
    for (const auto &v : x.coeffs()) {
        c.push_back(g(v));
    }
    return ENumber(x.width(), x.time(), std::move(c));
}

Rational kronecker_delta(const Rational &v) {
    return v == Rational(0) ? Rational(1) : Rational(0);
}

Rational scalar_product(const ENumber &x, const ENumber &y) {
    require_same_basis(x, y, "scalar product");
    Rational s(0);
    for (std::size_t b = 0; b < x.dimension(); ++b) {
        s += x[b] * y[b];
    }
    return s;
}

ENumber enumber_product(const ENumber &x, const ENumber &y) {
    require_same_basis(x, y, "e-number product");
    std::vector<Rational> c(x.dimension());
    for (std::size_t b = 0; b < c.size(); ++b) {
        c[b] = x[b] * y[b];
    }
    return ENumber(x.width(), x.time(), std::move(c));
}

ENumber tensor(const ENumber &x, const ENumber &y) {
    if (x.time() != y.time()) {
        throw ValidationError("tensor: time tags " + std::to_string(x.time()) + " and " + std::to_string(y.time()) +
                              " differ");
    }
    const int width = x.width() + y.width();
    if (width > BitWord::kMaxWidth) {
        throw ValidationError("tensor: combined width " + std::to_string(width) + " too large");
    }
    std::vector<Rational> c(std::size_t{1} << width);
    const std::size_t shift = y.dimension();
    for (std::size_t a = 0; a < x.dimension(); ++a) {
        for (std::size_t b = 0; b < y.dimension(); ++b) {
            c[a * shift + b] = x[a] * y[b];
        }
    }
    return ENumber(width, x.time(), std::move(c));
}

ENumber retime_forward(const ENumber &x, const StepPermutation &f) {
    require_width(x, f);
    // x = sum_a x_a P_a(t) = sum_a x_a P_{f(a)}(t+1).
    std::vector<Rational> c(x.dimension());
    for (std::size_t a = 0; a < c.size(); ++a) {
        c[f(a)] = x[a];
    }
    return ENumber(x.width(), x.time() + 1, std::move(c));
}

ENumber retime_backward(const ENumber &x, const StepPermutation &f) {
    require_width(x, f);
    std::vector<Rational> c(x.dimension());
    for (std::size_t a = 0; a < c.size(); ++a) {
        c[a] = x[f(a)];
    }
    return ENumber(x.width(), x.time() - 1, std::move(c));
}

ENumber evolve_enumber(const ENumber &b_of_t, const StepPermutation &f) {
    require_width(b_of_t, f);
    std::vector<bool> seen(b_of_t.dimension(), false);
    for (const auto &v : b_of_t.coeffs()) {
        if (v.denominator() != 1 || v < 0 || static_cast<std::size_t>(v.numerator()) >= seen.size() ||
            seen[static_cast<std::size_t>(v.numerator())]) {
            throw ValidationError("evolve_enumber expects a state e-number whose coefficients permute 0..2^N-1");
        }
        seen[static_cast<std::size_t>(v.numerator())] = true;
    }
    return lift_function([&](const Rational &v) { return Rational(static_cast<std::int64_t>(f(v.numerator()))); },
                         b_of_t);
}

std::map<BitWord, ENumber> reconstruct_projectors_from_algebra(const ENumber &b_of_t, const std::set<BitWord> &present) {
    std::map<BitWord, ENumber> out;
    const auto one = ENumber::unit(b_of_t.width(), b_of_t.time());
    for (const auto &b : present) {
        if (b.width() != b_of_t.width()) {
            throw ValidationError("present state " + b.to_string() + " has the wrong width");
        }
        auto shifted = b_of_t - one * Rational(static_cast<std::int64_t>(b.value()));
        out.emplace(b, lift_function(kronecker_delta, shifted));
    }
    return out;
}

}  // namespace mvflow
