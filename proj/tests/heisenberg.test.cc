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
#include "mvflow/heisenberg.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "mvflow/errors.h"
#include "mvflow/schrodinger.h"
#include "test_util.h"

using namespace mvflow;
using namespace mvflow_test;

namespace {

Matrix identity(int n) {
    return Matrix::Identity(1 << n, 1 << n);
}

}  // namespace

TEST(init_network, single_qubit) {
    auto net = init_network(1, BitWord(1, 1));
    Matrix z(2, 2);
    z << 0, 0, 0, 1;
    ASSERT_EQ(net.component(1, Axis::Z), z);
    ASSERT_EQ(expectation(net, net.component(1, Axis::Z)), 1.0);
    auto d = net.descriptor(1);
    Matrix one = identity(1);
    Matrix lhs = (one - 2.0 * d.x) * (one - 2.0 * d.y);
    ASSERT_EQ(lhs, Complex(0, 1) * (one - 2.0 * d.z));
}

TEST(init_network, matches_kronecker_assembly) {
    for (int n = 1; n <= 4; ++n) {
        for (int k = 1; k <= n; ++k) {
            auto d = initial_descriptor(k, n);
            ASSERT_EQ(d.x, (identity(n) - on_qubit(pauli('X'), k, n)) / 2.0);
            ASSERT_EQ(d.y, (identity(n) - on_qubit(pauli('Y'), k, n)) / 2.0);
            ASSERT_EQ(d.z, (identity(n) - on_qubit(pauli('Z'), k, n)) / 2.0);
        }
    }
}

TEST(init_network, distinct_qubits_commute_exactly) {
    auto net = init_network(2, BitWord(0, 2));
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
        for (Axis b : {Axis::X, Axis::Y, Axis::Z}) {
            ASSERT_EQ(commutator(net.component(1, a), net.component(2, b)), Matrix::Zero(4, 4));
        }
    }
    auto ds = net.descriptors();
    ASSERT_EQ(relation_residuals(ds).max(), 0.0);
}

TEST(init_network, size_cap) {
    ASSERT_THROW(init_network(11, BitWord(0, 11)), ResourceError);
    ASSERT_THROW(init_network(4, BitWord(0, 4), 3), ResourceError);
    ASSERT_THROW(init_network(2, BitWord(0, 3)), ValidationError);
    Vector bad = Vector::Zero(4);
    bad(0) = 2.0;
    ASSERT_THROW(init_network(2, bad), ValidationError);
}

TEST(step, empty_step_changes_nothing) {
    auto net = init_network(3, BitWord(5, 3));
    auto next = net.step({});
    ASSERT_EQ(next.cumulative_unitary(), net.cumulative_unitary());
    ASSERT_EQ(next.time(), 1);
    ASSERT_EQ(next.heis_state(), net.heis_state());
}

TEST(step, rejects_bad_gates) {
    auto net = init_network(3, BitWord(0, 3));
    Matrix not_unitary = Matrix::Identity(2, 2);
    not_unitary(0, 1) = 0.5;
    ASSERT_THROW(net.step({UnitaryGate{{1}, not_unitary}}), ValidationError);
    ASSERT_THROW(net.step({ClassicalGate::cnot(1, 2), ClassicalGate::not_gate(2)}), ValidationError);
    ASSERT_THROW(net.step({ClassicalGate::toffoli(1, 2, 4)}), ValidationError);
    ASSERT_THROW(net.step({UnitaryGate{{1, 2}, Matrix::Identity(2, 2)}}), ValidationError);
}

TEST(step, every_gate_matches_conjugation_by_its_unitary) {
    auto rng = test_rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        auto net = init_network(n, random_state(1 << n, rng));
        Matrix w = Matrix::Identity(1 << n, 1 << n);
        for (const auto &s : random_circuit(n, 12, rng, true)) {
            Matrix u = Matrix::Identity(1 << n, 1 << n);
            for (const auto &g : s) {
                if (const auto *c = std::get_if<ClassicalGate>(&g)) {
                    u = permutation_matrix([&](std::uint64_t b) { return oracle_apply(*c, b); }, n) * u;
                } else if (const auto *p = std::get_if<PhaseGate>(&g)) {
                    Matrix ph = Matrix::Identity(2, 2);
                    ph(1, 1) = std::exp(Complex(0, p->theta));
                    u = on_qubit(ph, p->qubit, n) * u;
                } else {
                    const auto &ug = std::get<UnitaryGate>(g);
                    u = on_qubit(ug.matrix, ug.qubits[0], n) * u;
                }
            }
            for (int k = 1; k <= n; ++k) {
                ASSERT_LT(descriptor_distance(net.step(s).descriptor(k), conjugated(w, u, k, n)), 1e-12);
            }
            w = u * w;
            net = net.step(s);
        }
    }
}

TEST(toffoli_closed_form, fresh_network_matches_conjugation) {
    auto net = init_network(3, BitWord(0, 3));
    auto [k, l, m] = toffoli_closed_form(net.descriptor(1), net.descriptor(2), net.descriptor(3));
    const Matrix u = toffoli_matrix(1, 2, 3, 3);
    ASSERT_LT(descriptor_distance(k, conjugated(identity(3), u, 1, 3)), 1e-12);
    ASSERT_LT(descriptor_distance(l, conjugated(identity(3), u, 2, 3)), 1e-12);
    ASSERT_LT(descriptor_distance(m, conjugated(identity(3), u, 3, 3)), 1e-12);
}

TEST(toffoli_closed_form, z_column_and_self_inverse) {
    auto rng = test_rng(32);
    auto d = random_descriptors(3, rng);
    auto [k, l, m] = toffoli_closed_form(d[0], d[1], d[2]);
    ASSERT_EQ(k.z, d[0].z);
    ASSERT_EQ(l.z, d[1].z);
    ASSERT_LT(max_abs_entry(m.z - (d[2].z + d[0].z * d[1].z - 2.0 * d[0].z * d[1].z * d[2].z)), 1e-12);
    auto [k2, l2, m2] = toffoli_closed_form(k, l, m);
    ASSERT_LT(descriptor_distance(k2, d[0]), 1e-12);
    ASSERT_LT(descriptor_distance(l2, d[1]), 1e-12);
    ASSERT_LT(descriptor_distance(m2, d[2]), 1e-12);
    std::vector<Descriptor> out{k, l, m};
    ASSERT_LT(relation_residuals(out).max(), 1e-12);
}

TEST(cnot_closed_form, fresh_network_matches_conjugation) {
    auto net = init_network(2, BitWord(0, 2));
    auto [m, t] = cnot_closed_form(net.descriptor(1), net.descriptor(2));
    const Matrix u = cnot_matrix(1, 2, 2);
    ASSERT_LT(descriptor_distance(m, conjugated(identity(2), u, 1, 2)), 1e-12);
    ASSERT_LT(descriptor_distance(t, conjugated(identity(2), u, 2, 2)), 1e-12);
    ASSERT_EQ(m.z, net.descriptor(1).z);
}

TEST(cnot_closed_form, target_z_is_xor_of_eigenvalues) {
    auto net = init_network(2, BitWord(0, 2));
    auto [m, t] = cnot_closed_form(net.descriptor(1), net.descriptor(2));
    for (Eigen::Index b = 0; b < 4; ++b) {
        const double b1 = static_cast<double>(b & 1), b2 = static_cast<double>((b >> 1) & 1);
        ASSERT_EQ(t.z(b, b).real(), static_cast<double>(static_cast<int>(b1) ^ static_cast<int>(b2)));
    }
}

TEST(closed_forms, agree_with_conjugation_on_random_descriptors) {
    auto rng = test_rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + trial % 2;
        const Matrix w = random_unitary(1 << n, rng);
        auto net = init_network(n, BitWord(0, n)).conjugated_by(w);
        auto [k, l, m] = toffoli_closed_form(net.descriptor(2), net.descriptor(n), net.descriptor(1));
        const Matrix ut = toffoli_matrix(2, n, 1, n);
        ASSERT_LT(descriptor_distance(k, conjugated(w, ut, 2, n)), 1e-12);
        ASSERT_LT(descriptor_distance(l, conjugated(w, ut, n, n)), 1e-12);
        ASSERT_LT(descriptor_distance(m, conjugated(w, ut, 1, n)), 1e-12);

        auto [c, t] = cnot_closed_form(net.descriptor(n), net.descriptor(2));
        const Matrix uc = cnot_matrix(n, 2, n);
        ASSERT_LT(descriptor_distance(c, conjugated(w, uc, n, n)), 1e-12);
        ASSERT_LT(descriptor_distance(t, conjugated(w, uc, 2, n)), 1e-12);
    }
}

TEST(conditional_gate_unitary, examples) {
    std::vector<std::uint64_t> id2{0, 1, 2, 3};
    ASSERT_EQ(conditional_gate_unitary(id2, Matrix::Identity(4, 4), 3), identity(3));

    std::vector<std::uint64_t> flip{1, 0};
    ASSERT_EQ(conditional_gate_unitary(flip, Matrix::Identity(2, 2), 2), cnot_matrix(2, 1, 2));

    auto rng = test_rng(34);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::uint64_t> f{0, 1, 2, 3, 4, 5, 6, 7};
        std::shuffle(f.begin(), f.end(), rng);
        Matrix v = conditional_gate_unitary(f, random_unitary(8, rng), 4);
        ASSERT_TRUE(is_unitary(v, 1e-12));
    }
    std::vector<std::uint64_t> bad{0, 0};
    ASSERT_THROW(conditional_gate_unitary(bad, Matrix::Identity(2, 2), 2), ValidationError);
}

TEST(b_hat, fresh_and_after_classical_steps) {
    auto net = init_network(2, BitWord(0, 2));
    Matrix expected = Matrix::Zero(4, 4);
    expected.diagonal() << 0, 1, 2, 3;
    ASSERT_EQ(b_hat(net), expected);

    auto net3 = init_network(3, BitWord(0, 3));
    QuantumStep s{ClassicalGate::toffoli(1, 2, 3)};
    auto next = net3.step(s);
    auto f = *classical_candidate(s, 3);
    // f applied to b_hat(t) as a matrix function, spectral form.
    Matrix lifted = Matrix::Zero(8, 8);
    for (std::uint64_t b = 0; b < 8; ++b) {
        lifted += static_cast<double>(f(b)) * projector_b(net3, BitWord(b, 3));
    }
    ASSERT_LT(max_abs_entry(b_hat(next) - lifted), 1e-12);
}

TEST(projector_b, partition_of_unity) {
    auto rng = test_rng(35);
    auto net = init_network(3, random_state(8, rng));
    for (const auto &s : random_circuit(3, 10, rng, true)) {
        net = net.step(s);
    }
    Matrix sum = Matrix::Zero(8, 8);
    for (std::uint64_t a = 0; a < 8; ++a) {
        Matrix pa = projector_b(net, BitWord(a, 3));
        sum += pa;
        ASSERT_LT(max_abs_entry(pa * pa - pa), 1e-12);
        for (std::uint64_t b = a + 1; b < 8; ++b) {
            ASSERT_LT(max_abs_entry(pa * projector_b(net, BitWord(b, 3))), 1e-12);
        }
    }
    ASSERT_LT(max_abs_entry(sum - identity(3)), 1e-12);
    auto fresh = init_network(3, BitWord(6, 3));
    ASSERT_EQ(expectation(fresh, projector_b(fresh, BitWord(6, 3))), 1.0);
}

TEST(expectation, examples) {
    auto rng = test_rng(36);
    auto net = init_network(3, random_state(8, rng));
    for (const auto &s : random_circuit(3, 8, rng, true)) {
        net = net.step(s);
    }
    ASSERT_NEAR(expectation(net, identity(3)), 1.0, 1e-12);
    double spectral = 0.0;
    for (std::uint64_t b = 0; b < 8; ++b) {
        spectral += static_cast<double>(b) * expectation(net, projector_b(net, BitWord(b, 3)));
    }
    ASSERT_NEAR(expectation(net, b_hat(net)), spectral, 1e-12);
    Matrix skew = Matrix::Zero(8, 8);
    skew(0, 1) = 1.0;
    ASSERT_THROW(expectation(net, skew), ValidationError);
}

TEST(branch_observable, weights_sum_to_control_expectation) {
    auto rng = test_rng(37);
    const int n = 3;
    std::vector<std::uint64_t> f{2, 0, 3, 1};
    const Matrix u = random_unitary(4, rng);
    auto net = init_network(n, random_state(8, rng));
    for (int t = 0; t < 3; ++t) {
        net = net.step({ConditionalGate{n, f, u}});
    }
    double total = 0.0;
    for (std::uint64_t k = 0; k < 4; ++k) {
        Matrix obs = branch_observable(net, BitWord(k, n - 1), identity(n));
        ASSERT_TRUE(is_hermitian(obs, 1e-12));
        total += expectation(net, obs);
    }
    ASSERT_NEAR(total, expectation(net, net.component(n, Axis::Z)), 1e-10);

    // Control off: no control-on branch at all.
    auto off = init_network(n, BitWord(0b010, n)).step({ConditionalGate{n, f, u}});
    for (std::uint64_t k = 0; k < 4; ++k) {
        ASSERT_NEAR(expectation(off, branch_observable(off, BitWord(k, n - 1), identity(n))), 0.0, 1e-12);
    }
}

TEST(schrodinger_oracle, examples) {
    auto rng = test_rng(38);
    Vector psi = random_state(8, rng);
    auto empty = schrodinger_oracle(3, {}, psi);
    ASSERT_EQ(empty.states.size(), 1u);
    ASSERT_EQ(empty.states[0], psi);

    Vector basis = Vector::Zero(8);
    basis(3) = 1.0;
    auto tof = schrodinger_oracle(3, {{ClassicalGate::toffoli(1, 2, 3)}}, basis);
    ASSERT_EQ(tof.distributions[1][7], 1.0);
}

TEST(schrodinger_oracle, agrees_with_heisenberg_weights) {
    auto rng = test_rng(39);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        Vector psi = random_state(1 << n, rng);
        auto steps = random_circuit(n, 20, rng, true);
        auto oracle = schrodinger_oracle(n, steps, psi);
        auto qrun = run_quantum(init_network(n, psi), steps);
        for (std::size_t t = 0; t < qrun.history.size(); ++t) {
            auto w = outcome_weights(qrun.history[t]);
            double sum = 0.0;
            for (std::size_t b = 0; b < w.size(); ++b) {
                ASSERT_NEAR(w[b], oracle.distributions[t][b], 1e-10);
                ASSERT_NEAR(expectation(qrun.history[t], projector_b(qrun.history[t], BitWord(b, n))), w[b], 1e-10);
                ASSERT_GE(w[b], -1e-12);
                sum += w[b];
            }
            ASSERT_NEAR(sum, 1.0, 1e-10);
        }
    }
}

TEST(relations, preserved_along_random_circuits) {
    auto rng = test_rng(40);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + trial % 4;
        auto net = init_network(n, BitWord(0, n));
        for (const auto &s : random_circuit(n, 60, rng, true)) {
            net = net.step(s);
            auto ds = net.descriptors();
            ASSERT_LT(relation_residuals(ds).max(), 1e-10);
        }
    }
}

TEST(delay_class, leaves_z_unchanged) {
    auto rng = test_rng(41);
    auto net = init_network(3, BitWord(0, 3));
    for (const auto &s : random_circuit(3, 15, rng, true)) {
        net = net.step(s);
    }
    auto delayed = net.step({ClassicalGate::delay(2)});
    auto phased = net.step({PhaseGate{2, 0.37}});
    ASSERT_EQ(delayed.component(2, Axis::Z), net.component(2, Axis::Z));
    ASSERT_LT(max_abs_entry(phased.component(2, Axis::Z) - net.component(2, Axis::Z)), 1e-12);
}

TEST(classical_candidate, recognizes_monomial_steps) {
    ASSERT_TRUE(classical_candidate({ClassicalGate::toffoli(1, 2, 3)}, 3).has_value());
    ASSERT_TRUE(classical_candidate({PhaseGate{1, 0.5}}, 2)->is_identity());
    ASSERT_FALSE(classical_candidate({UnitaryGate{{1}, hadamard()}}, 2).has_value());
    Matrix x_phase(2, 2);
    x_phase << 0, Complex(0, 1), 1, 0;
    auto f = classical_candidate({UnitaryGate{{2}, x_phase}}, 2);
    ASSERT_TRUE(f.has_value());
    ASSERT_EQ((*f)(0), 2u);
}
