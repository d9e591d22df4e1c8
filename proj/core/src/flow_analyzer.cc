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
#include "mvflow/flow_analyzer.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mvflow/errors.h"

namespace mvflow {

namespace {

using Index = Eigen::Index;

constexpr Complex kI{0.0, 1.0};
constexpr double kProbeAngle = 0.9;

Matrix identity_like(const Matrix &m) {
    return Matrix::Identity(m.rows(), m.cols());
}

int bit_of(std::uint64_t v, std::size_t j) {
    return static_cast<int>((v >> j) & 1U);
}

std::vector<int> sector_qubits(SectorKind sector, int n, int control) {
    if (sector == SectorKind::Whole) {
        std::vector<int> all;
        for (int q = 1; q <= n; ++q) {
            all.push_back(q);
        }
        return all;
    }
    return other_qubits(control, n);
}

Matrix sector_projector(const HeisenbergNetwork &net, SectorKind sector, int control) {
    const Index dim = Index{1} << net.width();
    switch (sector) {
        case SectorKind::Whole:
            return Matrix::Identity(dim, dim);
        case SectorKind::ControlOn:
            return net.component(control, Axis::Z);
        case SectorKind::ControlOff:
            return Matrix::Identity(dim, dim) - net.component(control, Axis::Z);
    }
    return Matrix::Identity(dim, dim);
}

// Depth-first search over bijections, each b restricted to values whose
// eigenspace block already matches.
bool search_permutation(const std::vector<std::vector<std::uint64_t>> &allowed, std::size_t b,
                        std::vector<bool> &used, std::vector<std::uint64_t> &table) {
    if (b == allowed.size()) {
        return true;
    }
    for (auto v : allowed[b]) {
        if (used[v]) {
            continue;
        }
        used[v] = true;
        table[b] = v;
        if (search_permutation(allowed, b + 1, used, table)) {
            return true;
        }
        used[v] = false;
    }
    return false;
}

double family_distance(const std::vector<Matrix> &a, const std::vector<Matrix> &b) {
    if (a.size() != b.size()) {
        throw ValidationError("families of different sizes cannot be compared");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, (a[i] - b[i]).norm());
    }
    return d;
}

Matrix unitary_exponential(const Matrix &hermitian, double theta) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
    const auto &lambda = es.eigenvalues();
    Vector phases(lambda.size());
    for (Index i = 0; i < lambda.size(); ++i) {
        phases(i) = std::exp(-kI * theta * lambda(i));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

const ConditionalGate *single_conditional(const std::vector<QuantumStep> &steps, int s, int control) {
    if (s < 0 || s >= static_cast<int>(steps.size()) || steps[static_cast<std::size_t>(s)].size() != 1) {
        return nullptr;
    }
    const auto *c = std::get_if<ConditionalGate>(&steps[static_cast<std::size_t>(s)].front());
    return (c && c->control == control) ? c : nullptr;
}

// Local 2^m Pauli string; base-4 digit j of `code` acts on local bit j
// (0 = I, 1 = X, 2 = Y, 3 = Z).
Matrix pauli_string(std::uint64_t code, int m) {
    static const Complex paulis[4][2][2] = {
        {{1.0, 0.0}, {0.0, 1.0}},
        {{0.0, 1.0}, {1.0, 0.0}},
        {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}},
        {{1.0, 0.0}, {0.0, -1.0}},
    };
    const Index dim = Index{1} << m;
    Matrix out(dim, dim);
    for (Index r = 0; r < dim; ++r) {
        for (Index c = 0; c < dim; ++c) {
            Complex v = 1.0;
            for (int j = 0; j < m; ++j) {
                const auto digit = (code >> (2 * j)) & 3U;
                v *= paulis[digit][bit_of(static_cast<std::uint64_t>(r), static_cast<std::size_t>(j))]
                           [bit_of(static_cast<std::uint64_t>(c), static_cast<std::size_t>(j))];
            }
            out(r, c) = v;
        }
    }
    return out;
}

}  // namespace

ClassicalityVerdict verify_classical_step(const QuantumRun &run, int t, const std::optional<StepPermutation> &candidate,
                                          double tol, SectorKind sector, int control) {
    const int steps = static_cast<int>(run.steps.size());
    if (t < 0 || t >= steps) {
        throw ValidationError("step " + std::to_string(t) + " outside [0, " + std::to_string(steps) + ")");
    }
    const auto &before = run.history[static_cast<std::size_t>(t)];
    const auto &after = run.history[static_cast<std::size_t>(t) + 1];
    const int n = before.width();
    if (control == 0) {
        control = n;
    }
    if (sector != SectorKind::Whole && (control < 1 || control > n || n < 2)) {
        throw ValidationError("sector control qubit " + std::to_string(control) + " is not usable");
    }

    ClassicalityVerdict v;
    v.step = t;
    const auto qubits = sector_qubits(sector, n, control);
    const Matrix s_before = sector_projector(before, sector, control);
    if (sector != SectorKind::Whole) {
        double drift = (sector_projector(after, sector, control) - s_before).norm();
        if (drift > tol) {
            v.residual = drift;
            v.reason = "sector projector changes across the step";
            return v;
        }
    }

    std::vector<Matrix> z_before, z_after;
    for (int q : qubits) {
        z_before.push_back(before.component(q, Axis::Z));
        z_after.push_back(after.component(q, Axis::Z));
    }
    for (std::size_t i = 0; i < z_before.size(); ++i) {
        for (std::size_t j = i + 1; j < z_before.size(); ++j) {
            double c = commutator(z_before[i], z_before[j]).norm();
            if (c > tol) {
                v.residual = c;
                v.noncommuting_qubit = qubits[i];
                v.reason = "z-components at t do not commute";
                return v;
            }
        }
    }

    Matrix target = Matrix::Zero(s_before.rows(), s_before.cols());
    double weight = 1.0;
    for (const auto &z : z_after) {
        target += weight * z;
        weight *= 2.0;
    }
    target = s_before * target;

    for (std::size_t j = 0; j < z_before.size(); ++j) {
        double c = commutator(target, s_before * z_before[j]).norm();
        if (c > tol) {
            v.residual = c;
            v.noncommuting_qubit = qubits[j];
            v.reason = "b(t+1) does not commute with the z-components at t";
            return v;
        }
    }

    const std::uint64_t words = std::uint64_t{1} << qubits.size();
    std::vector<int> word_bits;
    for (std::size_t j = 1; j <= qubits.size(); ++j) {
        word_bits.push_back(static_cast<int>(j));
    }
    std::vector<Matrix> proj(words);
    for (std::uint64_t b = 0; b < words; ++b) {
        proj[b] = s_before * projector_from_z(z_before, b);
    }
    // Blocks are orthogonal, so the residual splits into per-eigenspace parts.
    auto block_residual = [&](std::uint64_t b, double value) { return (proj[b] * target - value * proj[b]).norm(); };

    std::optional<StepPermutation> f = candidate;
    if (f && f->width() != static_cast<int>(qubits.size())) {
        throw ValidationError("candidate width " + std::to_string(f->width()) + " does not match the " +
                              std::to_string(qubits.size()) + "-qubit sector");
    }
    if (!f && qubits.size() <= 3) {
        std::vector<std::vector<std::uint64_t>> allowed(words);
        for (std::uint64_t b = 0; b < words; ++b) {
            for (std::uint64_t val = 0; val < words; ++val) {
                if (block_residual(b, static_cast<double>(val)) <= tol) {
                    allowed[b].push_back(val);
                }
            }
        }
        std::vector<bool> used(words, false);
        std::vector<std::uint64_t> table(words);
        if (search_permutation(allowed, 0, used, table)) {
            f = StepPermutation(static_cast<int>(qubits.size()), table, {word_bits});
        } else {
            v.reason = "no permutation of the sector word reproduces b(t+1)";
        }
    } else if (!f) {
        std::vector<std::uint64_t> table(words);
        std::vector<bool> hit(words, false);
        bool ok = true;
        for (std::uint64_t b = 0; b < words && ok; ++b) {
            double trace_p = proj[b].trace().real();
            double value = trace_p > tol ? (proj[b] * target).trace().real() / trace_p : static_cast<double>(b);
            double rounded = std::round(value);
            ok = std::abs(value - rounded) <= 1e-6 && rounded >= 0 && rounded < static_cast<double>(words) &&
                 !hit[static_cast<std::uint64_t>(rounded)];
            if (ok) {
                table[b] = static_cast<std::uint64_t>(rounded);
                hit[table[b]] = true;
            } else {
                v.failing_b = b;
            }
        }
        if (ok) {
            f = StepPermutation(static_cast<int>(qubits.size()), table, {word_bits});
        } else {
            v.reason = "spectral read-off of b(t+1) is not a permutation";
        }
    }

    if (!f) {
        double worst = 0.0;
        for (std::uint64_t b = 0; b < words; ++b) {
            double r = block_residual(b, std::round((proj[b] * target).trace().real() /
                                                    std::max(proj[b].trace().real(), 1e-300)));
            if (r >= worst) {
                worst = r;
                if (!v.failing_b) {
                    v.failing_b = b;
                }
            }
        }
        v.residual = worst;
        return v;
    }

    double worst = 0.0;
    double total = 0.0;
    for (std::uint64_t b = 0; b < words; ++b) {
        double r = block_residual(b, static_cast<double>((*f)(b)));
        total += r * r;
        if (r > worst) {
            worst = r;
            v.failing_b = b;
        }
    }
    v.residual = std::sqrt(total);
    if (v.residual <= tol) {
        v.classical = true;
        v.failing_b.reset();
        v.f = std::move(f);
        v.reason = "b(t+1) = f(b(t))";
    } else {
        v.reason = "b(t+1) differs from f(b(t))";
    }
    return v;
}

CorrespondenceReport check_correspondence(const QuantumRun &run, const std::vector<Ensemble> &ensemble_history,
                                          double tol) {
    if (run.history.size() != ensemble_history.size()) {
        throw ValidationError("quantum run has " + std::to_string(run.history.size()) +
                              " times but the ensemble run has " + std::to_string(ensemble_history.size()));
    }
    CorrespondenceReport report;
    for (std::size_t t = 0; t < run.history.size(); ++t) {
        const auto &net = run.history[t];
        const auto &e = ensemble_history[t];
        if (net.width() != e.width()) {
            throw ValidationError("quantum width " + std::to_string(net.width()) + " does not match ensemble width " +
                                  std::to_string(e.width()));
        }
        const auto weights = outcome_weights(net);
        const Rational m = e.total();
        std::vector<double> dev(weights.size());
        for (std::uint64_t b = 0; b < weights.size(); ++b) {
            Rational p = e.multiplicity(b) / m;
            dev[b] = std::abs(weights[b] - boost::rational_cast<double>(p));
        }
        double worst = dev.empty() ? 0.0 : *std::max_element(dev.begin(), dev.end());
        report.max_deviation = std::max(report.max_deviation, worst);
        if (worst > tol && !report.first_failing_time) {
            report.first_failing_time = static_cast<int>(t);
        }
        report.deviation.push_back(std::move(dev));
    }
    report.pass = !report.first_failing_time.has_value();
    return report;
}

AutonomyReport check_autonomy(const QuantumRun &run, const std::string &selector_name, const FamilySelector &selector,
                              const StepLaw &law, int t0, int t1, double tol) {
    const int steps = static_cast<int>(run.steps.size());
    if (t0 < 0 || t0 > t1 || t1 > steps) {
        throw ValidationError("autonomy interval outside the run");
    }
    AutonomyReport report;
    report.selector = selector_name;
    report.t0 = t0;
    report.t1 = t1;
    report.method = "law";
    for (int t = t0; t < t1; ++t) {
        const auto family = selector(run.history[static_cast<std::size_t>(t)]);
        const auto predicted = law(t, family);
        if (!predicted) {
            report.autonomous = false;
            report.counterexample_time = t;
            report.reason = "no update law declared";
            return report;
        }
        const auto actual = selector(run.history[static_cast<std::size_t>(t) + 1]);
        const double r = family_distance(*predicted, actual);
        report.max_residual = std::max(report.max_residual, r);
        if (r > tol && report.autonomous) {
            report.autonomous = false;
            report.counterexample_time = t;
            report.counterexample_residual = r;
            report.reason = "family at t+1 departs from the declared law";
        }
    }
    if (report.autonomous) {
        report.reason = "family closed under the declared law";
    }
    return report;
}

AutonomyReport probe_autonomy(const QuantumRun &run, const std::string &selector_name, const FamilySelector &selector,
                              const PerturbationGenerators &generators, int t0, int t1, double tol) {
    const int steps = static_cast<int>(run.steps.size());
    if (t0 < 0 || t0 > t1 || t1 > steps) {
        throw ValidationError("autonomy interval outside the run");
    }
    AutonomyReport report;
    report.selector = selector_name;
    report.t0 = t0;
    report.t1 = t1;
    report.method = "probe";
    for (int t = t0; t < t1; ++t) {
        const auto &net = run.history[static_cast<std::size_t>(t)];
        const auto family = selector(net);
        const auto next_family = selector(run.history[static_cast<std::size_t>(t) + 1]);
        for (const auto &g : generators(net)) {
            const auto perturbed = net.conjugated_by(unitary_exponential(g, kProbeAngle));
            if (family_distance(selector(perturbed), family) > tol) {
                throw ValidationError("perturbation generator does not fix the selected family");
            }
            const double r = family_distance(selector(perturbed.step(run.steps[static_cast<std::size_t>(t)])),
                                             next_family);
            report.max_residual = std::max(report.max_residual, r);
            if (r > tol && report.autonomous) {
                report.autonomous = false;
                report.counterexample_time = t;
                report.counterexample_residual = r;
                report.reason = "family at t+1 depends on observables outside it";
            }
        }
    }
    if (report.autonomous) {
        report.reason = "no outside dependence found";
    }
    return report;
}

FamilySelector select_all_z() {
    return [](const HeisenbergNetwork &net) {
        std::vector<Matrix> out;
        for (int k = 1; k <= net.width(); ++k) {
            out.push_back(net.component(k, Axis::Z));
        }
        return out;
    };
}

FamilySelector select_control_on_z(int control) {
    return [control](const HeisenbergNetwork &net) {
        const Matrix zc = net.component(control, Axis::Z);
        std::vector<Matrix> out;
        for (int k = 1; k <= net.width(); ++k) {
            out.push_back(k == control ? zc : Matrix(zc * net.component(k, Axis::Z)));
        }
        return out;
    };
}

FamilySelector select_control_off(int control) {
    return [control](const HeisenbergNetwork &net) {
        const Matrix zc = net.component(control, Axis::Z);
        const Matrix off = identity_like(zc) - zc;
        const auto others = other_qubits(control, net.width());
        std::vector<Matrix> out{off};
        for (int q : others) {
            out.push_back(off * net.component(q, Axis::Z));
        }
        for (int q : others) {
            out.push_back(off * net.component(q, Axis::X));
        }
        return out;
    };
}

FamilySelector select_control_on_x(int control) {
    return [control](const HeisenbergNetwork &net) {
        const Matrix zc = net.component(control, Axis::Z);
        std::vector<Matrix> out;
        for (int q : other_qubits(control, net.width())) {
            out.push_back(zc * net.component(q, Axis::X));
        }
        return out;
    };
}

PerturbationGenerators control_on_x_generators(int control) {
    return [control](const HeisenbergNetwork &net) {
        std::vector<Matrix> out;
        for (int q : other_qubits(control, net.width())) {
            out.push_back(net.component(q, Axis::X));
        }
        return out;
    };
}

StepLaw classical_z_law(const std::vector<QuantumStep> &steps, int n) {
    return [steps, n](int s, const std::vector<Matrix> &z) -> std::optional<std::vector<Matrix>> {
        if (s < 0 || s >= static_cast<int>(steps.size()) || static_cast<int>(z.size()) != n) {
            return std::nullopt;
        }
        const Matrix one = identity_like(z.front());
        std::vector<Matrix> out = z;
        std::vector<Matrix> projectors;
        for (const auto &gate : steps[static_cast<std::size_t>(s)]) {
            if (const auto *g = std::get_if<ClassicalGate>(&gate)) {
                const auto &i = g->idx;
                switch (g->kind) {
                    case GateKind::Toffoli: {
                        const Matrix &zk = z[i[0] - 1], &zl = z[i[1] - 1], &zm = z[i[2] - 1];
                        out[i[2] - 1] = zm + zk * zl - 2.0 * zk * zl * zm;
                        break;
                    }
                    case GateKind::CNot: {
                        const Matrix &zm = z[i[0] - 1], &zn = z[i[1] - 1];
                        out[i[1] - 1] = zn + zm - 2.0 * zn * zm;
                        break;
                    }
                    case GateKind::Not:
                        out[i[0] - 1] = one - z[i[0] - 1];
                        break;
                    case GateKind::Swap:
                        out[i[0] - 1] = z[i[1] - 1];
                        out[i[1] - 1] = z[i[0] - 1];
                        break;
                    case GateKind::Delay:
                        break;
                }
            } else if (std::holds_alternative<PhaseGate>(gate)) {
                continue;
            } else {
                auto f = classical_candidate({gate}, n);
                if (!f) {
                    return std::nullopt;
                }
                if (projectors.empty()) {
                    for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
                        projectors.push_back(projector_from_z(z, b));
                    }
                }
                for (int q : gate_qubits(gate, n)) {
                    Matrix zq = Matrix::Zero(one.rows(), one.cols());
                    for (std::uint64_t b = 0; b < projectors.size(); ++b) {
                        if (bit_of((*f)(b), static_cast<std::size_t>(q - 1))) {
                            zq += projectors[b];
                        }
                    }
                    out[q - 1] = std::move(zq);
                }
            }
        }
        return out;
    };
}

StepLaw control_on_law(const std::vector<QuantumStep> &steps, int n, int control) {
    return [steps, n, control](int s, const std::vector<Matrix> &a) -> std::optional<std::vector<Matrix>> {
        const auto *gate = single_conditional(steps, s, control);
        if (!gate || static_cast<int>(a.size()) != n) {
            return std::nullopt;
        }
        const auto others = other_qubits(control, n);
        const Matrix &ac = a[control - 1];
        std::vector<Matrix> out(a.size(), Matrix::Zero(ac.rows(), ac.cols()));
        out[control - 1] = ac;
        for (std::uint64_t b = 0; b < gate->f.size(); ++b) {
            // b_cz P_b(t) from the family alone.
            Matrix q = ac;
            for (std::size_t j = 0; j < others.size(); ++j) {
                const Matrix &aj = a[others[j] - 1];
                q = q * (bit_of(b, j) ? aj : Matrix(ac - aj));
            }
            for (std::size_t j = 0; j < others.size(); ++j) {
                if (bit_of(gate->f[b], j)) {
                    out[others[j] - 1] += q;
                }
            }
        }
        return out;
    };
}

StepLaw control_off_law(const std::vector<QuantumStep> &steps, int n, int control) {
    return [steps, n, control](int s, const std::vector<Matrix> &fam) -> std::optional<std::vector<Matrix>> {
        const auto *gate = single_conditional(steps, s, control);
        const int m = n - 1;
        if (!gate || static_cast<int>(fam.size()) != 1 + 2 * m) {
            return std::nullopt;
        }
        const Matrix &off = fam[0];
        const double scale = 1.0 / static_cast<double>(std::uint64_t{1} << m);
        std::vector<Matrix> sx, sz;
        for (int j = 0; j < m; ++j) {
            sz.push_back(off - 2.0 * fam[static_cast<std::size_t>(1 + j)]);
            sx.push_back(off - 2.0 * fam[static_cast<std::size_t>(1 + m + j)]);
        }
        // (1 - b_cz) U(t) = sum_P c_P prod_j (1 - b_cz) sigma_{P_j}(t).
        Matrix sector_u = Matrix::Zero(off.rows(), off.cols());
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * m)); ++code) {
            const Complex c = (pauli_string(code, m) * gate->u).trace() * scale;
            if (std::abs(c) < 1e-15) {
                continue;
            }
            Matrix term = off;
            for (int j = 0; j < m; ++j) {
                switch ((code >> (2 * j)) & 3U) {
                    case 1:
                        term = term * sx[static_cast<std::size_t>(j)];
                        break;
                    case 2:
                        term = term * (kI * sx[static_cast<std::size_t>(j)] * sz[static_cast<std::size_t>(j)]);
                        break;
                    case 3:
                        term = term * sz[static_cast<std::size_t>(j)];
                        break;
                    default:
                        break;
                }
            }
            sector_u += c * term;
        }
        std::vector<Matrix> out;
        out.reserve(fam.size());
        for (const auto &member : fam) {
            out.push_back(sector_u.adjoint() * member * sector_u);
        }
        return out;
    };
}

const char *verdict_name(InformationVerdict v) {
    switch (v) {
        case InformationVerdict::ContainsInfo:
            return "contains-info";
        case InformationVerdict::ContainsNone:
            return "contains-none";
        case InformationVerdict::Inconclusive:
            return "inconclusive";
    }
    return "?";
}

PresenceReport information_presence_test(std::span<const HeisenbergNetwork> variants,
                                         const FamilySelector &subsystem, const FamilySelector &measurements,
                                         double tol) {
    if (variants.size() < 2) {
        throw ValidationError("information presence needs at least two parameter values");
    }
    const auto &ref = variants.front();
    for (const auto &v : variants) {
        if (v.width() != ref.width() || (v.heis_state() - ref.heis_state()).norm() > tol) {
            throw ValidationError("parameter variants must share width and Heisenberg state");
        }
    }
    PresenceReport report;
    const auto ref_family = subsystem(ref);
    std::vector<double> lo, hi;
    for (const auto &v : variants) {
        report.descriptor_spread = std::max(report.descriptor_spread, family_distance(subsystem(v), ref_family));
        const auto ms = measurements(v);
        if (lo.empty()) {
            lo.assign(ms.size(), INFINITY);
            hi.assign(ms.size(), -INFINITY);
        }
        for (std::size_t i = 0; i < ms.size(); ++i) {
            double p = expectation(v, ms[i]);
            lo[i] = std::min(lo[i], p);
            hi[i] = std::max(hi[i], p);
        }
    }
    for (std::size_t i = 0; i < lo.size(); ++i) {
        report.probability_spread = std::max(report.probability_spread, hi[i] - lo[i]);
    }
    if (report.probability_spread > tol) {
        report.verdict = InformationVerdict::ContainsInfo;
    } else if (report.descriptor_spread <= tol) {
        report.verdict = InformationVerdict::ContainsNone;
    }
    return report;
}

RobustnessReport measurement_robustness_check(int n, const std::vector<QuantumStep> &steps, const Vector &psi0,
                                              const std::vector<int> &monitored, int max_qubits, double tol) {
    if (n < 1 || psi0.size() != (Index{1} << n)) {
        throw ValidationError("initial state does not match " + std::to_string(n) + " qubits");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int q : monitored) {
        if (q < 1 || q > n || seen[static_cast<std::size_t>(q)]) {
            throw ValidationError("monitored qubit " + std::to_string(q) + " is out of range or repeated");
        }
        seen[static_cast<std::size_t>(q)] = true;
    }
    for (const auto &s : steps) {
        validate_step(s, n);
        if (!classical_candidate(s, n)) {
            throw ValidationError("robustness check needs a program of classical-analogue gates");
        }
    }

    RobustnessReport report;
    const int rounds = steps.empty() ? 0 : static_cast<int>(steps.size()) - 1;
    report.ancillas = static_cast<int>(monitored.size()) * rounds;
    report.total_qubits = n + report.ancillas;
    if (report.total_qubits > max_qubits) {
        throw ResourceError("monitoring needs " + std::to_string(report.total_qubits) + " qubits, cap is " +
                            std::to_string(max_qubits));
    }

    const int total = report.total_qubits;
    Vector wide = Vector::Zero(Index{1} << total);
    wide.head(psi0.size()) = psi0;

    std::vector<QuantumStep> isolated = steps;
    std::vector<QuantumStep> watched;
    int next_ancilla = n + 1;
    for (std::size_t s = 0; s < steps.size(); ++s) {
        watched.push_back(steps[s]);
        if (static_cast<int>(s) < rounds) {
            QuantumStep measure;
            for (int q : monitored) {
                measure.push_back(ClassicalGate::cnot(q, next_ancilla++));
            }
            watched.push_back(std::move(measure));
        }
    }

    const auto base = run_quantum(init_network(total, wide, max_qubits), isolated);
    const auto mon = run_quantum(init_network(total, wide, max_qubits), watched);

    std::vector<int> original;
    for (int q = 1; q <= n; ++q) {
        original.push_back(q);
    }
    for (std::size_t t = 0; t < base.history.size(); ++t) {
        const auto &b_net = base.history[t];
        const auto &m_net = mon.history[t == 0 ? 0 : 2 * t - 1];
        const auto wb = outcome_weights(b_net, original);
        const auto wm = outcome_weights(m_net, original);
        std::vector<double> dev(wb.size());
        for (std::size_t b = 0; b < wb.size(); ++b) {
            dev[b] = std::abs(wb[b] - wm[b]);
        }
        double worst = *std::max_element(dev.begin(), dev.end());
        report.weights.max_deviation = std::max(report.weights.max_deviation, worst);
        if (worst > tol && !report.weights.first_failing_time) {
            report.weights.first_failing_time = static_cast<int>(t);
        }
        report.weights.deviation.push_back(std::move(dev));

        // ||W1^+ x W1 - W2^+ x W2|| = ||x D - D x|| with D = W1 W2^+, and for
        // x = (1 - sigma_x)/2 that is ||D sigma_x - sigma_x D|| / 2.
        const Matrix d = m_net.cumulative_unitary() * b_net.cumulative_unitary().adjoint();
        for (int k = 1; k <= n; ++k) {
            const Index flip = Index{1} << (k - 1);
            double acc = 0.0;
            for (Index r = 0; r < d.rows(); ++r) {
                for (Index c = 0; c < d.cols(); ++c) {
                    acc += std::norm(d(r, c ^ flip) - d(r ^ flip, c));
                }
            }
            report.max_x_change = std::max(report.max_x_change, std::sqrt(acc) / 2.0);
        }
    }
    report.weights.pass = !report.weights.first_failing_time.has_value();
    return report;
}

BranchTrace branch_history(const QuantumRun &run, double tol) {
    BranchTrace trace;
    const int n = run.width();
    trace.width = n;
    std::vector<std::optional<StepPermutation>> maps;
    for (std::size_t t = 0; t < run.steps.size(); ++t) {
        auto verdict = verify_classical_step(run, static_cast<int>(t), classical_candidate(run.steps[t], n), tol);
        trace.linked_steps.push_back(verdict.classical);
        maps.push_back(verdict.classical ? verdict.f : std::nullopt);
    }
    for (std::size_t t = 0; t < run.history.size(); ++t) {
        const auto w = outcome_weights(run.history[t]);
        std::vector<BranchNode> column;
        for (std::uint64_t b = 0; b < w.size(); ++b) {
            if (w[b] > tol) {
                BranchNode node{b, w[b], std::nullopt};
                if (t < maps.size() && maps[t]) {
                    node.link = (*maps[t])(b);
                }
                column.push_back(node);
            }
        }
        trace.columns.push_back(std::move(column));
    }
    return trace;
}

BranchTrace branch_history(const std::vector<Ensemble> &history, const NetworkProgram &program) {
    const auto perms = program.step_permutations();
    return branch_history(history, std::span<const StepPermutation>(perms));
}

BranchTrace branch_history(const std::vector<Ensemble> &history, std::span<const StepPermutation> steps) {
    if (history.size() != steps.size() + 1) {
        throw ValidationError("ensemble history length does not match the program");
    }
    BranchTrace trace;
    trace.width = history.front().width();
    trace.linked_steps.assign(steps.size(), true);
    for (std::size_t t = 0; t < history.size(); ++t) {
        const Rational m = history[t].total();
        std::vector<BranchNode> column;
        for (const auto &[b, mu] : history[t].multiplicities()) {
            BranchNode node{b, boost::rational_cast<double>(mu / m), std::nullopt};
            if (t < steps.size()) {
                node.link = steps[t](b);
            }
            column.push_back(node);
        }
        trace.columns.push_back(std::move(column));
    }
    return trace;
}

}  // namespace mvflow
