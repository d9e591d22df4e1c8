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

#include <algorithm>
#include <cmath>
#include <string>

#include "mvflow/errors.h"

namespace mvflow {

namespace {

using Index = Eigen::Index;

constexpr Complex kI{0.0, 1.0};

Matrix identity(Index dim) {
    return Matrix::Identity(dim, dim);
}

bool same_matrix(const Matrix &a, const Matrix &b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || (a.array() == b.array()).all());
}

void check_qubit(int q, int n) {
    if (q < 1 || q > n) {
        throw ValidationError("qubit index " + std::to_string(q) + " outside [1, " + std::to_string(n) + "]");
    }
}

std::uint64_t pack_bits(std::uint64_t i, std::span<const int> qubits) {
    std::uint64_t li = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
        li |= ((i >> (qubits[j] - 1)) & 1U) << j;
    }
    return li;
}

std::uint64_t spread_bits(std::uint64_t li, std::span<const int> qubits) {
    std::uint64_t i = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
        i |= ((li >> j) & 1U) << (qubits[j] - 1);
    }
    return i;
}

// Monomial matrix -> permutation of column index to row index.
std::vector<std::uint64_t> monomial_permutation(const Matrix &m, double tol) {
    std::vector<std::uint64_t> perm(static_cast<std::size_t>(m.cols()));
    for (Index c = 0; c < m.cols(); ++c) {
        Index r = 0;
        m.col(c).cwiseAbs().maxCoeff(&r);
        (void)tol;
        perm[static_cast<std::size_t>(c)] = static_cast<std::uint64_t>(r);
    }
    return perm;
}

// Rows of w for which `qubits` take every local value, mixed by `local`:
// rows(base | spread(i)) <- sum_j local(i, j) rows(base | spread(j)).
void mix_rows(Matrix &w, const Matrix &local, std::span<const int> qubits, std::uint64_t fixed_mask,
              std::uint64_t fixed_value) {
    std::uint64_t mask = fixed_mask;
    for (int q : qubits) {
        mask |= std::uint64_t{1} << (q - 1);
    }
    const Index local_dim = local.rows();
    Matrix block(local_dim, w.cols());
    for (std::uint64_t base = 0; base < static_cast<std::uint64_t>(w.rows()); ++base) {
        if ((base & mask) != fixed_value) {
            continue;
        }
        for (Index j = 0; j < local_dim; ++j) {
            block.row(j) = w.row(static_cast<Index>(base | spread_bits(static_cast<std::uint64_t>(j), qubits)));
        }
        Matrix mixed = local * block;
        for (Index i = 0; i < local_dim; ++i) {
            w.row(static_cast<Index>(base | spread_bits(static_cast<std::uint64_t>(i), qubits))) = mixed.row(i);
        }
    }
}

// w <- G w, exploiting the gate's structure.
void apply_left(Matrix &w, const QuantumGate &gate, int n) {
    const Index dim = w.rows();
    if (const auto *g = std::get_if<ClassicalGate>(&gate)) {
        if (g->kind == GateKind::Delay) {
            return;
        }
        Matrix out(dim, w.cols());
        for (Index i = 0; i < dim; ++i) {
            auto image = apply_gate(*g, BitWord(static_cast<std::uint64_t>(i), n)).value();
            out.row(static_cast<Index>(image)) = w.row(i);
        }
        w = std::move(out);
    } else if (const auto *p = std::get_if<PhaseGate>(&gate)) {
        const Complex phase = std::exp(kI * p->theta);
        const std::uint64_t bit = std::uint64_t{1} << (p->qubit - 1);
        for (Index i = 0; i < dim; ++i) {
            if (static_cast<std::uint64_t>(i) & bit) {
                w.row(i) *= phase;
            }
        }
    } else if (const auto *u = std::get_if<UnitaryGate>(&gate)) {
        mix_rows(w, u->matrix, u->qubits, 0, 0);
    } else if (const auto *c = std::get_if<ConditionalGate>(&gate)) {
        const auto others = other_qubits(c->control, n);
        const std::uint64_t cbit = std::uint64_t{1} << (c->control - 1);
        Matrix out = w;
        for (std::uint64_t b = 0; b < c->f.size(); ++b) {
            out.row(static_cast<Index>(cbit | spread_bits(c->f[b], others))) =
                w.row(static_cast<Index>(cbit | spread_bits(b, others)));
        }
        mix_rows(out, c->u, others, cbit, 0);
        w = std::move(out);
    }
}

// W^dagger (1 - sigma_a) W / 2 with sigma_a applied to W as a signed row
// permutation, so only one dense product is needed.
Matrix evolved_component(const Matrix &w, int k, Axis a) {
    const Index dim = w.rows();
    const Index mask = Index{1} << (k - 1);
    Matrix sw(dim, w.cols());
    for (Index r = 0; r < dim; ++r) {
        const bool one = (r & mask) != 0;
        switch (a) {
            case Axis::X:
                sw.row(r) = w.row(r ^ mask);
                break;
            case Axis::Y:
                sw.row(r) = w.row(r ^ mask) * (one ? Complex(0.0, 1.0) : Complex(0.0, -1.0));
                break;
            case Axis::Z:
                sw.row(r) = w.row(r);
                if (one) {
                    sw.row(r) *= -1.0;
                }
                break;
        }
    }
    Matrix out = Matrix::Identity(dim, dim);
    out.noalias() -= w.adjoint() * sw;
    return out * 0.5;
}

}  // namespace

const Matrix &Descriptor::operator[](Axis a) const {
    switch (a) {
        case Axis::X:
            return x;
        case Axis::Y:
            return y;
        case Axis::Z:
            return z;
    }
    return z;
}

bool same_gate(const QuantumGate &a, const QuantumGate &b) {
    if (a.index() != b.index()) {
        return false;
    }
    if (const auto *g = std::get_if<ClassicalGate>(&a)) {
        return *g == std::get<ClassicalGate>(b);
    }
    if (const auto *p = std::get_if<PhaseGate>(&a)) {
        const auto &q = std::get<PhaseGate>(b);
        return p->qubit == q.qubit && p->theta == q.theta;
    }
    if (const auto *u = std::get_if<UnitaryGate>(&a)) {
        const auto &v = std::get<UnitaryGate>(b);
        return u->qubits == v.qubits && same_matrix(u->matrix, v.matrix);
    }
    const auto &c = std::get<ConditionalGate>(a);
    const auto &d = std::get<ConditionalGate>(b);
    return c.control == d.control && c.f == d.f && same_matrix(c.u, d.u);
}

std::vector<int> other_qubits(int control, int n) {
    std::vector<int> out;
    for (int q = 1; q <= n; ++q) {
        if (q != control) {
            out.push_back(q);
        }
    }
    return out;
}

std::vector<int> gate_qubits(const QuantumGate &gate, int n) {
    if (const auto *g = std::get_if<ClassicalGate>(&gate)) {
        return {g->bits().begin(), g->bits().end()};
    }
    if (const auto *p = std::get_if<PhaseGate>(&gate)) {
        return {p->qubit};
    }
    if (const auto *u = std::get_if<UnitaryGate>(&gate)) {
        return u->qubits;
    }
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int q = 1; q <= n; ++q) {
        all[static_cast<std::size_t>(q - 1)] = q;
    }
    return all;
}

void validate_step(const QuantumStep &step, int n, double tol) {
    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    for (const auto &gate : step) {
        if (const auto *g = std::get_if<ClassicalGate>(&gate)) {
            g->validate(n);
        } else if (const auto *p = std::get_if<PhaseGate>(&gate)) {
            check_qubit(p->qubit, n);
            if (!std::isfinite(p->theta)) {
                throw ValidationError("phase angle must be finite");
            }
        } else if (const auto *u = std::get_if<UnitaryGate>(&gate)) {
            if (u->qubits.empty()) {
                throw ValidationError("unitary gate needs at least one qubit");
            }
            for (std::size_t i = 0; i < u->qubits.size(); ++i) {
                check_qubit(u->qubits[i], n);
                for (std::size_t j = 0; j < i; ++j) {
                    if (u->qubits[i] == u->qubits[j]) {
                        throw ValidationError("unitary gate repeats qubit " + std::to_string(u->qubits[i]));
                    }
                }
            }
            const Index local_dim = Index{1} << u->qubits.size();
            if (u->matrix.rows() != local_dim || u->matrix.cols() != local_dim) {
                throw ValidationError("unitary on " + std::to_string(u->qubits.size()) + " qubits must be " +
                                      std::to_string(local_dim) + "x" + std::to_string(local_dim));
            }
            if (!is_unitary(u->matrix, tol)) {
                throw ValidationError("gate matrix is not unitary");
            }
        } else if (const auto *c = std::get_if<ConditionalGate>(&gate)) {
            check_qubit(c->control, n);
            if (n < 2) {
                throw ValidationError("conditional gate needs at least two qubits");
            }
            const std::size_t half = std::size_t{1} << (n - 1);
            if (c->f.size() != half) {
                throw ValidationError("conditional permutation needs " + std::to_string(half) + " entries, got " +
                                      std::to_string(c->f.size()));
            }
            std::vector<bool> hit(half, false);
            for (auto v : c->f) {
                if (v >= half || hit[v]) {
                    throw ValidationError("conditional table is not a bijection");
                }
                hit[v] = true;
            }
            if (c->u.rows() != static_cast<Index>(half) || c->u.cols() != static_cast<Index>(half)) {
                throw ValidationError("conditional U must be " + std::to_string(half) + "x" + std::to_string(half));
            }
            if (!is_unitary(c->u, tol)) {
                throw ValidationError("conditional U is not unitary");
            }
        }
        for (int q : gate_qubits(gate, n)) {
            if (used[static_cast<std::size_t>(q)]) {
                throw ValidationError("qubit " + std::to_string(q) + " passes through two gates in one step");
            }
            used[static_cast<std::size_t>(q)] = true;
        }
    }
}

Matrix gate_unitary(const QuantumGate &gate, int n) {
    const Index dim = Index{1} << n;
    if (const auto *g = std::get_if<ClassicalGate>(&gate)) {
        Matrix m = Matrix::Zero(dim, dim);
        for (Index i = 0; i < dim; ++i) {
            m(static_cast<Index>(apply_gate(*g, BitWord(static_cast<std::uint64_t>(i), n)).value()), i) = 1.0;
        }
        return m;
    }
    if (const auto *p = std::get_if<PhaseGate>(&gate)) {
        Matrix local = Matrix::Identity(2, 2);
        local(1, 1) = std::exp(kI * p->theta);
        const int q[] = {p->qubit};
        return embed_local(local, q, n);
    }
    if (const auto *u = std::get_if<UnitaryGate>(&gate)) {
        return embed_local(u->matrix, u->qubits, n);
    }
    const auto &c = std::get<ConditionalGate>(gate);
    return conditional_gate_unitary(c.f, c.u, n, c.control);
}

Matrix step_unitary(const QuantumStep &step, int n) {
    Matrix u = identity(Index{1} << n);
    for (const auto &gate : step) {
        u = gate_unitary(gate, n) * u;
    }
    return u;
}

std::optional<StepPermutation> classical_candidate(const QuantumStep &step, int n, double tol) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::vector<std::uint64_t> table(dim);
    for (std::uint64_t b = 0; b < dim; ++b) {
        table[b] = b;
    }
    std::vector<std::vector<int>> partition;
    std::vector<bool> touched(static_cast<std::size_t>(n) + 1, false);

    for (const auto &gate : step) {
        std::vector<std::uint64_t> local_perm;
        std::vector<int> qubits = gate_qubits(gate, n);
        if (const auto *g = std::get_if<ClassicalGate>(&gate)) {
            for (auto &v : table) {
                v = apply_gate(*g, BitWord(v, n)).value();
            }
        } else if (std::holds_alternative<PhaseGate>(gate)) {
            // diagonal: identity on values
        } else if (const auto *u = std::get_if<UnitaryGate>(&gate)) {
            if (!is_monomial(u->matrix, tol)) {
                return std::nullopt;
            }
            auto perm = monomial_permutation(u->matrix, tol);
            std::uint64_t mask = 0;
            for (int q : u->qubits) {
                mask |= std::uint64_t{1} << (q - 1);
            }
            for (auto &v : table) {
                v = (v & ~mask) | spread_bits(perm[pack_bits(v, u->qubits)], u->qubits);
            }
        } else if (const auto *c = std::get_if<ConditionalGate>(&gate)) {
            if (!is_monomial(c->u, tol)) {
                return std::nullopt;
            }
            auto perm = monomial_permutation(c->u, tol);
            auto others = other_qubits(c->control, n);
            const std::uint64_t cbit = std::uint64_t{1} << (c->control - 1);
            for (auto &v : table) {
                std::uint64_t packed = pack_bits(v, others);
                std::uint64_t image = (v & cbit) ? c->f[packed] : perm[packed];
                v = (v & cbit) | spread_bits(image, others);
            }
        }
        std::sort(qubits.begin(), qubits.end());
        for (int q : qubits) {
            touched[static_cast<std::size_t>(q)] = true;
        }
        partition.push_back(std::move(qubits));
    }
    for (int q = 1; q <= n; ++q) {
        if (!touched[static_cast<std::size_t>(q)]) {
            partition.push_back({q});
        }
    }
    std::sort(partition.begin(), partition.end());
    return StepPermutation(n, std::move(table), std::move(partition));
}

Descriptor initial_descriptor(int k, int n) {
    Matrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    sy << Complex(0.0, 0.0), Complex(0.0, -1.0), Complex(0.0, 1.0), Complex(0.0, 0.0);
    sz << 1.0, 0.0, 0.0, -1.0;
    const Matrix one = Matrix::Identity(2, 2);
    const int q[] = {k};
    return Descriptor{embed_local((one - sx) / 2.0, q, n), embed_local((one - sy) / 2.0, q, n),
                      embed_local((one - sz) / 2.0, q, n)};
}

HeisenbergNetwork::HeisenbergNetwork(int n, Vector heis_state, int max_qubits)
    : n_(n), max_qubits_(max_qubits), psi_(std::move(heis_state)) {
    if (n < 1) {
        throw ValidationError("a network needs at least one qubit");
    }
    if (n > max_qubits) {
        throw ResourceError(std::to_string(n) + " qubits exceeds the cap of " + std::to_string(max_qubits));
    }
    const Index dim = Index{1} << n;
    if (psi_.size() != dim) {
        throw ValidationError("Heisenberg state has dimension " + std::to_string(psi_.size()) + ", expected " +
                              std::to_string(dim));
    }
    if (std::abs(psi_.norm() - 1.0) > kInputTolerance) {
        throw ValidationError("Heisenberg state is not normalized");
    }
    w_ = identity(dim);
}

Descriptor HeisenbergNetwork::descriptor(int k) const {
    check_qubit(k, n_);
    return Descriptor{evolved_component(w_, k, Axis::X), evolved_component(w_, k, Axis::Y),
                      evolved_component(w_, k, Axis::Z)};
}

Matrix HeisenbergNetwork::component(int k, Axis a) const {
    check_qubit(k, n_);
    return evolved_component(w_, k, a);
}

std::vector<Descriptor> HeisenbergNetwork::descriptors() const {
    std::vector<Descriptor> out;
    out.reserve(static_cast<std::size_t>(n_));
    for (int k = 1; k <= n_; ++k) {
        out.push_back(descriptor(k));
    }
    return out;
}

Matrix HeisenbergNetwork::evolve_operator(const Matrix &initial_op) const {
    return w_.adjoint() * initial_op * w_;
}

Vector HeisenbergNetwork::evolved_state() const {
    return w_ * psi_;
}

HeisenbergNetwork HeisenbergNetwork::step(const QuantumStep &gates) const {
    validate_step(gates, n_);
    HeisenbergNetwork next = *this;
    for (const auto &gate : gates) {
        apply_left(next.w_, gate, n_);
    }
    next.t_ = t_ + 1;
    return next;
}

HeisenbergNetwork HeisenbergNetwork::conjugated_by(const Matrix &r) const {
    if (r.rows() != w_.rows() || !is_unitary(r, kInputTolerance)) {
        throw ValidationError("conjugating matrix must be a unitary of the network dimension");
    }
    HeisenbergNetwork out = *this;
    out.w_ = w_ * r;
    return out;
}

HeisenbergNetwork init_network(int n, const BitWord &initial_basis_word, int max_qubits) {
    if (n < 1) {
        throw ValidationError("a network needs at least one qubit");
    }
    if (n > max_qubits) {
        throw ResourceError(std::to_string(n) + " qubits exceeds the cap of " + std::to_string(max_qubits));
    }
    if (initial_basis_word.width() != n) {
        throw ValidationError("initial word width " + std::to_string(initial_basis_word.width()) +
                              " does not match " + std::to_string(n) + " qubits");
    }
    Vector psi = Vector::Zero(Index{1} << n);
    psi(static_cast<Index>(initial_basis_word.value())) = 1.0;
    return HeisenbergNetwork(n, std::move(psi), max_qubits);
}

HeisenbergNetwork init_network(int n, const Vector &heis_state, int max_qubits) {
    return HeisenbergNetwork(n, heis_state, max_qubits);
}

HeisenbergNetwork step(const HeisenbergNetwork &net, const QuantumStep &gates) {
    return net.step(gates);
}

std::tuple<Descriptor, Descriptor, Descriptor> toffoli_closed_form(const Descriptor &dk, const Descriptor &dl,
                                                                   const Descriptor &dm) {
    const Matrix lz_mx = dl.z * dm.x;
    const Matrix kz_mx = dk.z * dm.x;
    const Matrix kz_lz = dk.z * dl.z;
    Descriptor k{dk.x + lz_mx - 2.0 * dk.x * lz_mx, dk.y + lz_mx - 2.0 * dk.y * lz_mx, dk.z};
    Descriptor l{dl.x + kz_mx - 2.0 * dk.z * dl.x * dm.x, dl.y + kz_mx - 2.0 * dk.z * dl.y * dm.x, dl.z};
    Descriptor m{dm.x, dm.y + kz_lz - 2.0 * kz_lz * dm.y, dm.z + kz_lz - 2.0 * kz_lz * dm.z};
    return {std::move(k), std::move(l), std::move(m)};
}

std::pair<Descriptor, Descriptor> cnot_closed_form(const Descriptor &dm, const Descriptor &dn) {
    Descriptor m{dn.x + dm.x - 2.0 * dn.x * dm.x, dn.x + dm.y - 2.0 * dn.x * dm.y, dm.z};
    Descriptor n{dn.x, dn.y + dm.z - 2.0 * dn.y * dm.z, dn.z + dm.z - 2.0 * dn.z * dm.z};
    return {std::move(m), std::move(n)};
}

Matrix conditional_gate_unitary(std::span<const std::uint64_t> f, const Matrix &u, int n, int control) {
    if (control == 0) {
        control = n;
    }
    ConditionalGate gate{control, std::vector<std::uint64_t>(f.begin(), f.end()), u};
    validate_step({gate}, n);
    const auto others = other_qubits(control, n);
    const Index dim = Index{1} << n;
    const Index half = dim / 2;
    // V = b_cz(0) Pi + (1 - b_cz(0)) U with Pi and U embedded on the other qubits.
    Matrix pi = Matrix::Zero(half, half);
    for (std::size_t b = 0; b < f.size(); ++b) {
        pi(static_cast<Index>(f[b]), static_cast<Index>(b)) = 1.0;
    }
    std::vector<int> order = others;
    order.push_back(control);
    Matrix on = Matrix::Zero(2, 2), off = Matrix::Zero(2, 2);
    on(1, 1) = 1.0;
    off(0, 0) = 1.0;
    Matrix kron_on(dim, dim), kron_off(dim, dim);
    for (Index r = 0; r < dim; ++r) {
        for (Index c = 0; c < dim; ++c) {
            kron_on(r, c) = on(r / half, c / half) * pi(r % half, c % half);
            kron_off(r, c) = off(r / half, c / half) * u(r % half, c % half);
        }
    }
    return embed_local(kron_on + kron_off, order, n);
}

Matrix b_hat(const HeisenbergNetwork &net) {
    const Index dim = Index{1} << net.width();
    Matrix out = Matrix::Zero(dim, dim);
    double weight = 1.0;
    for (int k = 1; k <= net.width(); ++k) {
        out += weight * net.component(k, Axis::Z);
        weight *= 2.0;
    }
    return out;
}

Matrix projector_from_z(std::span<const Matrix> z, std::uint64_t b) {
    if (z.empty()) {
        throw ValidationError("projector needs at least one z-component");
    }
    const Index dim = z.front().rows();
    Matrix p = identity(dim);
    for (std::size_t j = 0; j < z.size(); ++j) {
        p = p * (((b >> j) & 1U) ? z[j] : Matrix(identity(dim) - z[j]));
    }
    return p;
}

Matrix projector_b(const HeisenbergNetwork &net, const BitWord &b) {
    if (b.width() != net.width()) {
        throw ValidationError("projector word width " + std::to_string(b.width()) + " does not match " +
                              std::to_string(net.width()) + " qubits");
    }
    std::vector<Matrix> z;
    for (int k = 1; k <= net.width(); ++k) {
        z.push_back(net.component(k, Axis::Z));
    }
    return projector_from_z(z, b.value());
}

double expectation(const HeisenbergNetwork &net, const Matrix &x, double tol) {
    const Index dim = Index{1} << net.width();
    if (x.rows() != dim || x.cols() != dim) {
        throw ValidationError("observable dimension does not match the network");
    }
    if (!is_hermitian(x, tol)) {
        throw ValidationError("observable is not Hermitian");
    }
    const auto &psi = net.heis_state();
    return (psi.adjoint() * x * psi)(0, 0).real();
}

std::vector<double> outcome_weights(const HeisenbergNetwork &net, std::span<const int> qubits) {
    std::vector<int> all;
    if (qubits.empty()) {
        for (int q = 1; q <= net.width(); ++q) {
            all.push_back(q);
        }
        qubits = all;
    }
    for (int q : qubits) {
        check_qubit(q, net.width());
    }
    // <psi| W^dagger P_b(0) W |psi> = || P_b(0) W psi ||^2.
    const Vector phi = net.evolved_state();
    std::vector<double> w(std::size_t{1} << qubits.size(), 0.0);
    for (Index i = 0; i < phi.size(); ++i) {
        w[pack_bits(static_cast<std::uint64_t>(i), qubits)] += std::norm(phi(i));
    }
    return w;
}

Matrix branch_observable(const HeisenbergNetwork &net, const BitWord &k, const Matrix &x, int control) {
    const int n = net.width();
    if (control == 0) {
        control = n;
    }
    check_qubit(control, n);
    if (n < 2 || k.width() != n - 1) {
        throw ValidationError("branch word must cover the " + std::to_string(n - 1) + " non-control qubits");
    }
    std::vector<Matrix> z;
    for (int q : other_qubits(control, n)) {
        z.push_back(net.component(q, Axis::Z));
    }
    const Matrix pk = projector_from_z(z, k.value());
    const Matrix zc = net.component(control, Axis::Z);
    return zc * pk * x * pk * zc;
}

double RelationResiduals::max() const {
    return std::max({commutation, pauli_product, idempotence, hermiticity});
}

RelationResiduals relation_residuals(std::span<const Descriptor> descriptors) {
    RelationResiduals r;
    if (descriptors.empty()) {
        return r;
    }
    const Index dim = descriptors.front().z.rows();
    const Matrix one = identity(dim);
    constexpr Axis axes[] = {Axis::X, Axis::Y, Axis::Z};
    for (const auto &d : descriptors) {
        for (Axis a : axes) {
            const Matrix &m = d[a];
            r.hermiticity = std::max(r.hermiticity, (m - m.adjoint()).norm());
            r.idempotence = std::max(r.idempotence, (m * m - m).norm());
        }
        const Matrix sx = one - 2.0 * d.x, sy = one - 2.0 * d.y, sz = one - 2.0 * d.z;
        r.pauli_product = std::max(r.pauli_product, (sx * sy - kI * sz).norm());
        r.pauli_product = std::max(r.pauli_product, (sy * sz - kI * sx).norm());
        r.pauli_product = std::max(r.pauli_product, (sz * sx - kI * sy).norm());
    }
    for (std::size_t k = 0; k < descriptors.size(); ++k) {
        for (std::size_t j = k + 1; j < descriptors.size(); ++j) {
            for (Axis a : axes) {
                for (Axis b : axes) {
                    // For Hermitian A, B: BA = (AB)^dagger.
                    const Matrix ab = descriptors[k][a] * descriptors[j][b];
                    r.commutation = std::max(r.commutation, (ab - ab.adjoint()).norm());
                }
            }
        }
    }
    return r;
}

QuantumRun run_quantum(const HeisenbergNetwork &initial, const std::vector<QuantumStep> &steps) {
    QuantumRun run{steps, {initial}};
    run.history.reserve(steps.size() + 1);
    for (const auto &s : steps) {
        run.history.push_back(run.history.back().step(s));
    }
    return run;
}

}  // namespace mvflow
