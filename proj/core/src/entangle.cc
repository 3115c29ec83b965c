// Copyright 2026 The pqcm Authors
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

#include "pqcm/entangle.h"

#include <cmath>
#include <numbers>
#include <string>

namespace pqcm {

namespace {

Eigen::Index idx(size_t k) {
    return static_cast<Eigen::Index>(k);
}

void require_basis_matches(const SharedState &shared, const AliceBasis &basis) {
    if (basis.dim() != shared.alice_dim()) {
        throw BasisError(
            "Alice basis has dimension " + std::to_string(basis.dim()) + " but the shared state has N = " +
            std::to_string(shared.alice_dim()));
    }
}

}  // namespace

AliceBasis AliceBasis::computational(size_t n) {
    std::vector<Ket> vectors;
    vectors.reserve(n);
    for (size_t k = 0; k < n; k++) {
        vectors.push_back(Ket::basis(n, k));
    }
    return AliceBasis(std::move(vectors), BasisLabel::A1);
}

AliceBasis AliceBasis::fourier(size_t n) {
    if (n == 0) {
        throw BasisError("fourier basis needs N >= 1");
    }
    std::vector<Ket> vectors;
    vectors.reserve(n);
    double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (size_t m = 0; m < n; m++) {
        Vector v(idx(n));
        for (size_t k = 0; k < n; k++) {
            // Reduce m*k mod n first so large N keeps the phase exact.
            double phase = 2 * std::numbers::pi * static_cast<double>((m * k) % n) / static_cast<double>(n);
            v[idx(k)] = scale * Complex(std::cos(phase), std::sin(phase));
        }
        vectors.push_back(Ket::normalized(std::move(v)));
    }
    return AliceBasis(std::move(vectors), BasisLabel::A2);
}

AliceBasis AliceBasis::alternate(std::vector<Ket> vectors) {
    if (vectors.empty()) {
        throw BasisError("alternate basis is empty");
    }
    require_orthonormal_basis(vectors, vectors.front().dim());
    return AliceBasis(std::move(vectors), BasisLabel::A2);
}

SharedState build_shared_state(std::vector<Ket> bob_states) {
    size_t n = bob_states.size();
    if (n < 2) {
        throw DimensionError("build_shared_state: need at least 2 Bob states, got " + std::to_string(n));
    }
    for (size_t k = 0; k < n; k++) {
        if (bob_states[k].dim() != n) {
            throw DimensionError(
                "build_shared_state: Bob state " + std::to_string(k) + " has dim " +
                std::to_string(bob_states[k].dim()) + ", expected N = " + std::to_string(n));
        }
    }
    Vector joint(idx(n * n));
    double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (size_t k = 0; k < n; k++) {
        joint.segment(idx(k * n), idx(n)) = scale * bob_states[k].amplitudes();
    }
    return SharedState(Ket::normalized(std::move(joint)), std::move(bob_states));
}

Ensemble induced_ensemble(const SharedState &shared, const AliceBasis &basis) {
    require_basis_matches(shared, basis);
    size_t n = shared.alice_dim();
    std::vector<EnsembleMember> members;
    members.reserve(n);
    if (basis.label() == BasisLabel::A1) {
        for (const auto &b : shared.bob_states()) {
            members.push_back({b, 1.0 / static_cast<double>(n)});
        }
        return Ensemble(std::move(members));
    }
    for (const auto &a : basis.vectors()) {
        Vector v = Vector::Zero(idx(shared.bob_dim()));
        for (size_t k = 0; k < n; k++) {
            v += std::conj(a[k]) * shared.bob_states()[k].amplitudes();
        }
        double weight = v.squaredNorm() / static_cast<double>(n);
        if (weight == 0) {
            members.push_back({Ket::basis(shared.bob_dim(), 0), 0.0});
        } else {
            members.push_back({Ket::normalized(std::move(v)), weight});
        }
    }
    // Renormalize away rounding so the Ensemble invariant holds exactly.
    double total = 0;
    for (const auto &m : members) {
        total += m.prob;
    }
    for (auto &m : members) {
        m.prob /= total;
    }
    return Ensemble(std::move(members));
}

Measurement alice_measure(const SharedState &shared, const AliceBasis &basis, SeededRng &rng) {
    require_basis_matches(shared, basis);
    return measure_subsystem(shared.joint(), shared.alice_dim(), shared.bob_dim(), basis.vectors(), rng);
}

AliceBasis target_to_basis(const Ket &target, std::span<const Ket> bob_states) {
    size_t n = bob_states.size();
    if (n == 0) {
        throw EmptyInputError("target_to_basis: no Bob states");
    }
    for (const auto &b : bob_states) {
        if (b.dim() != target.dim()) {
            throw DimensionError("target_to_basis: target and Bob states differ in dimension");
        }
    }
    if (rank_with_tolerance(bob_states) != n) {
        throw RankError("target_to_basis: Bob states are linearly dependent");
    }
    Matrix columns(idx(target.dim()), idx(n));
    for (size_t k = 0; k < n; k++) {
        columns.col(idx(k)) = bob_states[k].amplitudes();
    }
    Vector coords = columns.colPivHouseholderQr().solve(target.amplitudes());
    double residual = (columns * coords - target.amplitudes()).norm();
    if (residual > 1e-9) {
        throw SpanError("target_to_basis: target lies outside span of Bob states (residual " +
                        std::to_string(residual) + ")");
    }

    std::vector<Vector> accepted;
    accepted.reserve(n);
    accepted.push_back(coords.conjugate() / coords.norm());
    for (size_t k = 0; k < n && accepted.size() < n; k++) {
        Vector v = Vector::Zero(idx(n));
        v[idx(k)] = 1.0;
        // Two passes of modified Gram-Schmidt.
        for (int pass = 0; pass < 2; pass++) {
            for (const auto &q : accepted) {
                v -= q.dot(v) * q;
            }
        }
        double norm = v.norm();
        if (norm > 1e-8) {
            accepted.push_back(v / norm);
        }
    }
    std::vector<Ket> vectors;
    vectors.reserve(n);
    for (auto &v : accepted) {
        vectors.push_back(Ket::normalized(std::move(v)));
    }
    return AliceBasis::alternate(std::move(vectors));
}

}  // namespace pqcm
