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
#include "mvflow/linalg.h"

#include "mvflow/errors.h"

namespace mvflow {

double max_abs_entry(const Matrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_unitary(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return max_abs_entry(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())) <= tol;
}

bool is_hermitian(const Matrix &m, double tol) {
    return m.rows() == m.cols() && max_abs_entry(m - m.adjoint()) <= tol;
}

Matrix commutator(const Matrix &a, const Matrix &b) {
    return a * b - b * a;
}

bool is_monomial(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        int nonzero = 0;
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            double a = std::abs(m(r, c));
            if (a > tol) {
                if (std::abs(a - 1.0) > tol) {
                    return false;
                }
                ++nonzero;
            }
        }
        if (nonzero != 1) {
            return false;
        }
    }
    return is_unitary(m, tol);
}

Matrix embed_local(const Matrix &local, std::span<const int> qubits, int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    const Eigen::Index local_dim = Eigen::Index{1} << qubits.size();
    if (local.rows() != local_dim || local.cols() != local_dim) {
        throw ValidationError("local operator dimension " + std::to_string(local.rows()) + " does not match " +
                              std::to_string(qubits.size()) + " qubits");
    }
    std::uint64_t mask = 0;
    for (int q : qubits) {
        if (q < 1 || q > n) {
            throw ValidationError("qubit index " + std::to_string(q) + " outside [1, " + std::to_string(n) + "]");
        }
        mask |= std::uint64_t{1} << (q - 1);
    }
    auto local_index = [&](std::uint64_t i) {
        std::uint64_t li = 0;
        for (std::size_t j = 0; j < qubits.size(); ++j) {
            li |= ((i >> (qubits[j] - 1)) & 1U) << j;
        }
        return li;
    };
    Matrix out = Matrix::Zero(dim, dim);
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(dim); ++i) {
        for (std::uint64_t j = 0; j < static_cast<std::uint64_t>(dim); ++j) {
            if ((i & ~mask) == (j & ~mask)) {
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = local(
                    static_cast<Eigen::Index>(local_index(i)), static_cast<Eigen::Index>(local_index(j)));
            }
        }
    }
    return out;
}

Matrix random_unitary(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            g(r, c) = Complex(normal(rng), normal(rng));
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    for (int i = 0; i < dim; ++i) {
        Complex d = qr.matrixQR()(i, i);
        q.col(i) *= d / std::abs(d);
    }
    return q;
}

Vector random_state(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; ++i) {
        v(i) = Complex(normal(rng), normal(rng));
    }
    return v / v.norm();
}

}  // namespace mvflow
