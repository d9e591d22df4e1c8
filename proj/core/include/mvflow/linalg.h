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
#ifndef MVFLOW_LINALG_H
#define MVFLOW_LINALG_H

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <span>

namespace mvflow {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Assertions over products of up to a few hundred gates.
inline constexpr double kDefaultTolerance = 1e-10;
/// Single-gate identities.
inline constexpr double kGateTolerance = 1e-12;
/// Unitarity / normalization of user-supplied numbers (printed to finite precision).
inline constexpr double kInputTolerance = 1e-9;

double max_abs_entry(const Matrix &m);
bool is_unitary(const Matrix &m, double tol);
bool is_hermitian(const Matrix &m, double tol);
Matrix commutator(const Matrix &a, const Matrix &b);

/// True when every row and column holds exactly one nonzero entry of unit modulus.
bool is_monomial(const Matrix &m, double tol);

/// Full 2^n operator for `local` acting on `qubits` (1-based, the first
/// listed qubit being the least significant local bit), identity elsewhere.
Matrix embed_local(const Matrix &local, std::span<const int> qubits, int n);

/// Haar-distributed unitary (QR of a complex Ginibre matrix, phases fixed).
Matrix random_unitary(int dim, std::mt19937_64 &rng);

/// Uniformly random unit vector.
Vector random_state(int dim, std::mt19937_64 &rng);

}  // namespace mvflow

#endif  // MVFLOW_LINALG_H
