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
#ifndef MVFLOW_FLOW_ANALYZER_H
#define MVFLOW_FLOW_ANALYZER_H

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mvflow/classical_net.h"
#include "mvflow/ensemble.h"
#include "mvflow/heisenberg.h"

namespace mvflow {

// ---------------------------------------------------------------------------
// Classicality
// ---------------------------------------------------------------------------

/// Region of the algebra a classicality check is restricted to: the sector
/// projector (identity for the whole network, b_cz or 1 - b_cz for the two
/// halves of a conditional network) and the qubits whose z-components form
/// the sector's word.
enum class SectorKind { Whole, ControlOn, ControlOff };

struct ClassicalityVerdict {
    int step = 0;  ///< the step taking t to t + 1
    bool classical = false;
    std::optional<StepPermutation> f;          ///< verified table when classical
    std::optional<std::uint64_t> failing_b;    ///< eigenspace with the largest mismatch
    std::optional<int> noncommuting_qubit;     ///< z_k(t) that b(t+1) fails to commute with
    double residual = 0.0;
    std::string reason;
};

/// Decides whether b(t+1) = f(b(t)) on the chosen sector.  Without a
/// candidate, sectors of at most three qubits are searched exhaustively over
/// permutations and larger ones use the spectral read-off
/// f(b) = Tr(S P_b b(t+1)) / Tr(S P_b), which is then verified the same way.
ClassicalityVerdict verify_classical_step(const QuantumRun &run, int t,
                                          const std::optional<StepPermutation> &candidate = std::nullopt,
                                          double tol = kDefaultTolerance, SectorKind sector = SectorKind::Whole,
                                          int control = 0);

// ---------------------------------------------------------------------------
// Correspondence with a classical ensemble
// ---------------------------------------------------------------------------

struct CorrespondenceReport {
    std::vector<std::vector<double>> deviation;  ///< [t][b]
    double max_deviation = 0.0;
    bool pass = true;
    std::optional<int> first_failing_time;
};

/// |<P_b(t)> - mu_b(t)/M| for every t and b.
CorrespondenceReport check_correspondence(const QuantumRun &run, const std::vector<Ensemble> &ensemble_history,
                                          double tol = kDefaultTolerance);

// ---------------------------------------------------------------------------
// Causal autonomy
// ---------------------------------------------------------------------------

/// Picks a family of observables out of a network at one time.
using FamilySelector = std::function<std::vector<Matrix>(const HeisenbergNetwork &)>;
/// Declared per-step dynamics: the family at t + 1 predicted from the family
/// at t alone.  nullopt means no law is declared for that step.
using StepLaw = std::function<std::optional<std::vector<Matrix>>(int step, const std::vector<Matrix> &family)>;
/// Hermitian generators of perturbations that fix the family at one time.
using PerturbationGenerators = std::function<std::vector<Matrix>(const HeisenbergNetwork &)>;

struct AutonomyReport {
    std::string selector;
    int t0 = 0;
    int t1 = 0;
    bool autonomous = true;
    std::optional<int> counterexample_time;
    double counterexample_residual = 0.0;
    double max_residual = 0.0;
    std::string method;  ///< "law" or "probe"
    std::string reason;
};

/// Autonomous iff every selected matrix at t + 1 equals the declared law
/// applied to the selection at t, for all t in [t0, t1).
AutonomyReport check_autonomy(const QuantumRun &run, const std::string &selector_name, const FamilySelector &selector,
                              const StepLaw &law, int t0, int t1, double tol = kDefaultTolerance);

/// Law-free dependence probe: perturbs each time slice by exp(-i theta G) for
/// generators G that leave the family unchanged, re-runs the step, and
/// reports non-autonomy when the family at t + 1 moves.  Finding no movement
/// is evidence, not proof, of autonomy.
AutonomyReport probe_autonomy(const QuantumRun &run, const std::string &selector_name, const FamilySelector &selector,
                              const PerturbationGenerators &generators, int t0, int t1,
                              double tol = kDefaultTolerance);

FamilySelector select_all_z();
/// {b_cz b_kz} for every k (k = c gives b_cz itself).
FamilySelector select_control_on_z(int control);
/// {1 - b_cz} u {(1 - b_cz) b_kz} u {(1 - b_cz) b_kx} over the non-control qubits.
FamilySelector select_control_off(int control);
/// {b_cz b_kx} over the non-control qubits.
FamilySelector select_control_on_x(int control);

/// x-components of the non-control qubits: they commute with
/// select_control_on_x but not with the z-components outside it.
PerturbationGenerators control_on_x_generators(int control);

/// Gate-local z-column polynomials (Toffoli, controlled-not, not, swap,
/// delay-class), with a spectral law for monomial unitaries and conditionals.
StepLaw classical_z_law(const std::vector<QuantumStep> &steps, int n);
/// Control-on sector of conditional steps: A_k(t+1) = sum_b f(b)_k b_cz P_b(t).
StepLaw control_on_law(const std::vector<QuantumStep> &steps, int n, int control);
/// Control-off sector of conditional steps: conjugation by (1 - b_cz) U(t),
/// with U(t) rebuilt from the family through U's Pauli expansion.
StepLaw control_off_law(const std::vector<QuantumStep> &steps, int n, int control);

// ---------------------------------------------------------------------------
// Information presence
// ---------------------------------------------------------------------------

enum class InformationVerdict { ContainsInfo, ContainsNone, Inconclusive };

const char *verdict_name(InformationVerdict v);

struct PresenceReport {
    InformationVerdict verdict = InformationVerdict::Inconclusive;
    double probability_spread = 0.0;  ///< max over measurements of the spread of <M> across variants
    double descriptor_spread = 0.0;   ///< max over subsystem matrices of the spread across variants
};

/// One network per parameter value, sharing one Heisenberg state.  Contains
/// info if some measurement probability varies; contains none if the
/// subsystem's descriptors do not vary; inconclusive otherwise.
PresenceReport information_presence_test(std::span<const HeisenbergNetwork> variants,
                                         const FamilySelector &subsystem, const FamilySelector &measurements,
                                         double tol = kDefaultTolerance);

// ---------------------------------------------------------------------------
// Measurement robustness
// ---------------------------------------------------------------------------

struct RobustnessReport {
    CorrespondenceReport weights;  ///< monitored vs isolated <P_b(t)> on the original qubits
    double max_x_change = 0.0;     ///< largest ||x_k(monitored) - x_k(isolated)|| over t and original k
    int ancillas = 0;
    int total_qubits = 0;
};

/// Runs `steps` on n qubits twice inside a widened network: once isolated,
/// once with a controlled-not from every monitored qubit onto a fresh
/// ancilla between consecutive steps.
RobustnessReport measurement_robustness_check(int n, const std::vector<QuantumStep> &steps, const Vector &psi0,
                                              const std::vector<int> &monitored,
                                              int max_qubits = HeisenbergNetwork::kDefaultMaxQubits,
                                              double tol = kDefaultTolerance);

// ---------------------------------------------------------------------------
// Branch history
// ---------------------------------------------------------------------------

struct BranchNode {
    std::uint64_t b = 0;
    double weight = 0.0;
    std::optional<std::uint64_t> link;  ///< f_t(b) when the following step is classical

    friend bool operator==(const BranchNode &, const BranchNode &) = default;
};

struct BranchTrace {
    int width = 1;
    std::vector<std::vector<BranchNode>> columns;  ///< one per integer time, present states only
    std::vector<bool> linked_steps;                ///< one per step
};

/// Weights <P_b(t)>; links only across steps with a classical verdict.
BranchTrace branch_history(const QuantumRun &run, double tol = kDefaultTolerance);
/// Weights mu_b(t)/M; every step is linked.
BranchTrace branch_history(const std::vector<Ensemble> &history, const NetworkProgram &program);
BranchTrace branch_history(const std::vector<Ensemble> &history, std::span<const StepPermutation> steps);

}  // namespace mvflow

#endif  // MVFLOW_FLOW_ANALYZER_H
