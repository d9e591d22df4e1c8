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

#include <gtest/gtest.h>

#include "mvflow/errors.h"
#include "test_util.h"

using namespace mvflow;
using namespace mvflow_test;

namespace {

std::vector<Rational> ints(std::initializer_list<int> v) {
    std::vector<Rational> out;
    for (int x : v) {
        out.emplace_back(x);
    }
    return out;
}

}  // namespace

TEST(ENumber, basis_projector_examples) {
    auto p = enumber_basis_projector(BitWord(0, 1), 0);
    ASSERT_EQ(p.coeffs(), ints({1, 0}));

    for (int n = 1; n <= 3; ++n) {
        auto sum = ENumber::zero(n, 4);
        for (std::uint64_t b = 0; b < (1u << n); ++b) {
            sum = sum + enumber_basis_projector(BitWord(b, n), 4);
        }
        ASSERT_EQ(sum, ENumber::unit(n, 4));
    }
}

TEST(ENumber, retiming_moves_projectors_along_f) {
    std::vector<ClassicalGate> g{ClassicalGate::toffoli(1, 2, 3)};
    auto f = compose_step(g, 3);
    auto inv = f.inverse();
    for (std::uint64_t b = 0; b < 8; ++b) {
        // P_b(t+1) has the coordinates of P_{f^-1(b)}(t).
        auto back = retime_backward(enumber_basis_projector(BitWord(b, 3), 1), f);
        ASSERT_EQ(back, enumber_basis_projector(BitWord(inv(b), 3), 0));
        ASSERT_EQ(retime_forward(back, f), enumber_basis_projector(BitWord(b, 3), 1));
    }
}

TEST(ENumber, lift_function_examples) {
    auto x = ENumber::state(2, 0);
    ASSERT_EQ(lift_function([](const Rational &v) { return v; }, x), x);
    auto sq = lift_function([](const Rational &v) { return v * v; }, ENumber::state(1, 0));
    ASSERT_EQ(sq.coeffs(), ints({0, 1}));
    for (std::uint64_t b = 0; b < 4; ++b) {
        auto shifted = x - ENumber::unit(2, 0) * Rational(static_cast<std::int64_t>(b));
        ASSERT_EQ(lift_function(kronecker_delta, shifted), enumber_basis_projector(BitWord(b, 2), 0));
    }
}

TEST(ENumber, scalar_product_examples) {
    Ensemble e(2, {{0, Rational(3)}, {2, Rational(1, 2)}});
    auto mu = ENumber::multiplicities(e, 0);
    for (std::uint64_t a = 0; a < 4; ++a) {
        for (std::uint64_t b = 0; b < 4; ++b) {
            ASSERT_EQ(scalar_product(enumber_basis_projector(BitWord(a, 2), 0),
                                     enumber_basis_projector(BitWord(b, 2), 0)),
                      Rational(a == b ? 1 : 0));
        }
        ASSERT_EQ(scalar_product(mu, enumber_basis_projector(BitWord(a, 2), 0)), e.multiplicity(a));
    }
    ASSERT_EQ(scalar_product(mu, ENumber::unit(2, 0)), e.total());
    ASSERT_THROW(scalar_product(mu, ENumber::unit(2, 1)), ValidationError);
    ASSERT_THROW(scalar_product(mu, ENumber::unit(3, 0)), ValidationError);
}

TEST(ENumber, product_examples) {
    auto x = ENumber::state(2, 0);
    ASSERT_EQ(enumber_product(x, ENumber::unit(2, 0)), x);
    ASSERT_EQ(enumber_product(enumber_basis_projector(BitWord(1, 2), 0), enumber_basis_projector(BitWord(2, 2), 0)),
              ENumber::zero(2, 0));
    ASSERT_EQ(enumber_product(x, x), lift_function([](const Rational &v) { return v * v; }, x));
    ASSERT_THROW(enumber_product(x, ENumber::state(2, 1)), ValidationError);
}

TEST(ENumber, algebra_laws_on_random_elements) {
    auto rng = test_rng(21);
    auto random_enumber = [&](int n) {
        std::vector<Rational> c;
        for (std::size_t b = 0; b < (std::size_t{1} << n); ++b) {
            c.emplace_back(static_cast<std::int64_t>(rng() % 11) - 5, 1 + static_cast<std::int64_t>(rng() % 4));
        }
        return ENumber(n, 0, std::move(c));
    };
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        auto x = random_enumber(n), y = random_enumber(n), z = random_enumber(n);
        ASSERT_EQ(enumber_product(x, y), enumber_product(y, x));
        ASSERT_EQ(enumber_product(enumber_product(x, y), z), enumber_product(x, enumber_product(y, z)));
        ASSERT_EQ(enumber_product(x, y + z), enumber_product(x, y) + enumber_product(x, z));
        ASSERT_EQ(x + ENumber::zero(n, 0), x);
        ASSERT_EQ(enumber_product(x, ENumber::zero(n, 0)), ENumber::zero(n, 0));
        ASSERT_EQ(scalar_product(x, y), scalar_product(y, x));
    }
}

TEST(ENumber, tensor_examples) {
    ASSERT_EQ(tensor(ENumber::unit(1, 0), ENumber::unit(2, 0)), ENumber::unit(3, 0));
    ASSERT_EQ(tensor(enumber_basis_projector(BitWord(1, 1), 0), enumber_basis_projector(BitWord(0, 1), 0)),
              enumber_basis_projector(BitWord(2, 2), 0));
    for (std::uint64_t a = 0; a < 4; ++a) {
        for (std::uint64_t b = 0; b < 2; ++b) {
            for (std::uint64_t c = 0; c < 4; ++c) {
                for (std::uint64_t d = 0; d < 2; ++d) {
                    auto lhs = tensor(enumber_basis_projector(BitWord(a, 2), 0), enumber_basis_projector(BitWord(b, 1), 0));
                    auto rhs = tensor(enumber_basis_projector(BitWord(c, 2), 0), enumber_basis_projector(BitWord(d, 1), 0));
                    ASSERT_EQ(scalar_product(lhs, rhs), Rational(a == c && b == d ? 1 : 0));
                }
            }
        }
    }
    ASSERT_THROW(tensor(ENumber::unit(1, 0), ENumber::unit(1, 1)), ValidationError);
}

TEST(evolve_enumber, examples) {
    auto x = ENumber::state(3, 0);
    ASSERT_EQ(evolve_enumber(x, StepPermutation::identity(3)), x);

    std::vector<ClassicalGate> g{ClassicalGate::toffoli(1, 2, 3)};
    auto f = compose_step(g, 3);
    auto next = evolve_enumber(x, f);
    ASSERT_EQ(next[3], Rational(7));
    ASSERT_EQ(next[7], Rational(3));
    ASSERT_EQ(next[5], Rational(5));
    // Expressed in the next basis, b(t+1) is again sum_b b P_b(t+1).
    ASSERT_EQ(retime_forward(next, f), ENumber::state(3, 1));
    ASSERT_THROW(evolve_enumber(ENumber::unit(3, 0), f), ValidationError);
}

TEST(evolve_enumber, picture_equivalence_on_random_programs) {
    auto rng = test_rng(22);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3;
        NetworkProgram p{n, {}};
        for (int s = 0; s < 5; ++s) {
            p.steps.push_back({random_classical_gate(n, rng)});
        }
        Ensemble e(n, {{rng() % 8, Rational(3)}, {rng() % 8, Rational(2, 3)}});
        auto history = evolve_history(e, p);
        auto perms = p.step_permutations();
        const auto mu = ENumber::multiplicities(e, 0);
        auto b_of_t = ENumber::state(n, 0);
        for (std::size_t t = 0; t <= perms.size(); ++t) {
            std::set<BitWord> all;
            for (std::uint64_t b = 0; b < 8; ++b) {
                all.insert(BitWord(b, n));
            }
            auto projectors = reconstruct_projectors_from_algebra(b_of_t, all);
            for (std::uint64_t b = 0; b < 8; ++b) {
                auto p_b = enumber_basis_projector(BitWord(b, n), static_cast<int>(t));
                for (std::size_t s = t; s > 0; --s) {
                    p_b = retime_backward(p_b, perms[s - 1]);
                }
                ASSERT_EQ(scalar_product(mu, p_b), history[t].multiplicity(b));
                ASSERT_EQ(projectors.at(BitWord(b, n)), p_b);
            }
            if (t < perms.size()) {
                b_of_t = evolve_enumber(b_of_t, perms[t]);
            }
        }
    }
}

TEST(reconstruct_projectors, examples) {
    auto b1 = ENumber(1, 0, ints({0, 1}));
    auto p = reconstruct_projectors_from_algebra(b1, {BitWord(1, 1)});
    ASSERT_EQ(p.at(BitWord(1, 1)).coeffs(), ints({0, 1}));

    auto x = ENumber::state(3, 0);
    std::set<BitWord> present{BitWord(1, 3), BitWord(4, 3), BitWord(6, 3)};
    auto ps = reconstruct_projectors_from_algebra(x, present);
    for (const auto &[a, pa] : ps) {
        ASSERT_EQ(enumber_product(pa, pa), pa);
        ASSERT_EQ(pa, enumber_basis_projector(a, 0));
        for (const auto &[b, pb] : ps) {
            if (a != b) {
                ASSERT_EQ(enumber_product(pa, pb), ENumber::zero(3, 0));
            }
        }
    }
    Ensemble e(3, {{1, Rational(2)}, {4, Rational(5)}, {6, Rational(1, 3)}});
    auto mu = ENumber::multiplicities(e, 0);
    for (const auto &[a, pa] : ps) {
        ASSERT_EQ(scalar_product(mu, pa), e.multiplicity(a.value()));
    }
}
