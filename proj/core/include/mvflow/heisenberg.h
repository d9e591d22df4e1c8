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
#ifndef MVFLOW_HEISENBERG_H
#define MVFLOW_HEISENBERG_H

#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "mvflow/classical_net.h"
#include "mvflow/linalg.h"

namespace mvflow {

enum class Axis { X, Y, Z };

/// Boolean observables (1 - sigma_x)/2, (1 - sigma_y)/2, (1 - sigma_z)/2 of one
/// qubit at one time, as 2^N x 2^N matrices.
struct Descriptor {
    Matrix x;
    Matrix y;
    Matrix z;

    const Matrix &operator[](Axis a) const;
};

/// Delay-class one-qubit gate diag(1, e^{i theta}): leaves the z-component fixed.
struct PhaseGate {
    int qubit = 1;
    double theta = 0.0;
};

/// Arbitrary unitary on the listed qubits (first listed = least significant local bit).
struct UnitaryGate {
    std::vector<int> qubits;
    Matrix matrix;
};

/// "If the control is 1 apply the permutation f to the other qubits, otherwise
/// apply u to them."  The other qubits are packed in ascending order.
struct ConditionalGate {
    int control = 1;
    std::vector<std::uint64_t> f;
    Matrix u;
};

using QuantumGate = std::variant<ClassicalGate, PhaseGate, UnitaryGate, ConditionalGate>;
using QuantumStep = std::vector<QuantumGate>;

bool same_gate(const QuantumGate &a, const QuantumGate &b);

std::vector<int> gate_qubits(const QuantumGate &gate, int n);
/// Qubits other than `control`, ascending.
std::vector<int> other_qubits(int control, int n);

/// Throws ValidationError for bad indices, overlapping gates, non-unitary
/// matrices, or non-bijective conditional tables.
void validate_step(const QuantumStep &step, int n, double tol = kInputTolerance);

Matrix gate_unitary(const QuantumGate &gate, int n);
Matrix step_unitary(const QuantumStep &step, int n);

/// Whole-network permutation realised by the step when every gate is a
/// classical analogue (classical gates, phases, monomial unitaries, and
/// conditionals with monomial u); nullopt otherwise.
std::optional<StepPermutation> classical_candidate(const QuantumStep &step, int n, double tol = kGateTolerance);

/// Standard representation at t = 0, embedded on qubit k of n.
Descriptor initial_descriptor(int k, int n);

/// A quantum network in the Heisenberg picture.  The state never changes;
/// the cumulative unitary W(t) = U_t ... U_1 carries the dynamics and every
/// descriptor component is W(t)^dagger b(0) W(t).
class HeisenbergNetwork {
   public:
    static constexpr int kDefaultMaxQubits = 10;

    HeisenbergNetwork(int n, Vector heis_state, int max_qubits = kDefaultMaxQubits);

    int width() const noexcept {
        return n_;
    }
    int time() const noexcept {
        return t_;
    }
    int max_qubits() const noexcept {
        return max_qubits_;
    }
    const Vector &heis_state() const noexcept {
        return psi_;
    }
    const Matrix &cumulative_unitary() const noexcept {
        return w_;
    }

    Descriptor descriptor(int k) const;
    Matrix component(int k, Axis a) const;
    std::vector<Descriptor> descriptors() const;
    /// Current-time image of an initial-time operator: W^dagger op W.
    Matrix evolve_operator(const Matrix &initial_op) const;
    /// W |psi>, the equivalent Schrodinger-picture state.
    Vector evolved_state() const;

    HeisenbergNetwork step(const QuantumStep &gates) const;

    /// Same network with W replaced by W R: every descriptor becomes
    /// R^dagger b(t) R.  Used to perturb a network inside a time slice.
    HeisenbergNetwork conjugated_by(const Matrix &r) const;

   private:
    int n_;
    int t_ = 0;
    int max_qubits_;
    Vector psi_;
    Matrix w_;
};

HeisenbergNetwork init_network(int n, const BitWord &initial_basis_word,
                               int max_qubits = HeisenbergNetwork::kDefaultMaxQubits);
HeisenbergNetwork init_network(int n, const Vector &heis_state, int max_qubits = HeisenbergNetwork::kDefaultMaxQubits);

HeisenbergNetwork step(const HeisenbergNetwork &net, const QuantumStep &gates);

/// Toffoli with controls k, l and target m, as polynomials in the entering descriptors.
std::tuple<Descriptor, Descriptor, Descriptor> toffoli_closed_form(const Descriptor &dk, const Descriptor &dl,
                                                                   const Descriptor &dm);

/// Controlled-not (measurement gate) with control m and target n.
std::pair<Descriptor, Descriptor> cnot_closed_form(const Descriptor &dm, const Descriptor &dn);

/// V = b_cz(0) sum_b |f(b)><b| + (1 - b_cz(0)) U on n qubits, with f and U on
/// the qubits other than `control` (default: qubit n).
Matrix conditional_gate_unitary(std::span<const std::uint64_t> f, const Matrix &u, int n, int control = 0);

/// sum_k 2^(k-1) b_kz(t).
Matrix b_hat(const HeisenbergNetwork &net);

/// prod_j [b_j z_j + (1 - b_j)(1 - z_j)] over the listed commuting z-components.
Matrix projector_from_z(std::span<const Matrix> z, std::uint64_t b);

Matrix projector_b(const HeisenbergNetwork &net, const BitWord &b);

/// <psi|X|psi>; throws ValidationError when X is not Hermitian.
double expectation(const HeisenbergNetwork &net, const Matrix &x, double tol = kInputTolerance);

/// <P_b(t)> for every b over the listed qubits (all qubits when empty), indexed
/// by the packed word of those qubits in the listed order.
std::vector<double> outcome_weights(const HeisenbergNetwork &net, std::span<const int> qubits = {});

/// b_cz P_k X P_k b_cz with P_k the projector for the other qubits to hold k.
Matrix branch_observable(const HeisenbergNetwork &net, const BitWord &k, const Matrix &x, int control = 0);

/// Largest residual norms (Frobenius) of the descriptor relations.
struct RelationResiduals {
    double commutation = 0.0;    ///< [b_k, b_k'] for distinct qubits
    double pauli_product = 0.0;  ///< (1-2x)(1-2y) - i(1-2z) and cyclic
    double idempotence = 0.0;    ///< b^2 - b
    double hermiticity = 0.0;

    double max() const;
};

RelationResiduals relation_residuals(std::span<const Descriptor> descriptors);

/// A quantum run: the gate list and the network at every integer time.
struct QuantumRun {
    std::vector<QuantumStep> steps;
    std::vector<HeisenbergNetwork> history;

    int width() const {
        return history.front().width();
    }
};

QuantumRun run_quantum(const HeisenbergNetwork &initial, const std::vector<QuantumStep> &steps);

}  // namespace mvflow

#endif  // MVFLOW_HEISENBERG_H
