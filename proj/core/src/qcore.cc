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

#include "pqcm/qcore.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace pqcm {

namespace {

Eigen::Index idx(size_t k) {
    return static_cast<Eigen::Index>(k);
}

}  // namespace

Ket Ket::normalized(Vector amplitudes) {
    if (amplitudes.size() == 0) {
        throw DimensionError("Ket: empty amplitude vector");
    }
    double norm = amplitudes.norm();
    if (!(norm > 0) || !std::isfinite(norm)) {
        throw DimensionError("Ket: cannot normalize a zero or non-finite vector");
    }
    amplitudes /= norm;
    return Ket(std::move(amplitudes));
}

Ket Ket::normalized(std::initializer_list<Complex> amplitudes) {
    Vector v(static_cast<Eigen::Index>(amplitudes.size()));
    Eigen::Index k = 0;
    for (const auto &a : amplitudes) {
        v[k++] = a;
    }
    return normalized(std::move(v));
}

Ket Ket::basis(size_t dim, size_t k) {
    if (dim == 0 || k >= dim) {
        throw DimensionError("Ket::basis: index " + std::to_string(k) + " out of range for dim " + std::to_string(dim));
    }
    Vector v = Vector::Zero(idx(dim));
    v[idx(k)] = 1.0;
    return Ket(std::move(v));
}

HermitianOperator HermitianOperator::from_matrix(const Matrix &m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionError("HermitianOperator: matrix must be square and nonempty");
    }
    double deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (deviation > tol) {
        throw HermiticityError("HermitianOperator: max |m_ij - conj(m_ji)| = " + std::to_string(deviation));
    }
    return HermitianOperator(Matrix((m + m.adjoint()) * 0.5));
}

HermitianOperator HermitianOperator::identity(size_t dim) {
    return HermitianOperator(Matrix::Identity(idx(dim), idx(dim)));
}

HermitianOperator HermitianOperator::projector(const Ket &ket) {
    return HermitianOperator(ket.amplitudes() * ket.amplitudes().adjoint());
}

Ensemble::Ensemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
    if (members_.empty()) {
        throw EmptyInputError("Ensemble: no members");
    }
    double total = 0;
    for (const auto &m : members_) {
        if (m.state.dim() != members_.front().state.dim()) {
            throw DimensionError("Ensemble: member states differ in dimension");
        }
        if (m.prob < 0 || m.prob > 1 + NORM_TOL) {
            throw Error("Ensemble: probability outside [0, 1]");
        }
        total += m.prob;
    }
    if (std::abs(total - 1) > NORM_TOL) {
        throw Error("Ensemble: probabilities sum to " + std::to_string(total));
    }
}

HermitianOperator Ensemble::density_matrix() const {
    Matrix rho = Matrix::Zero(idx(dim()), idx(dim()));
    for (const auto &m : members_) {
        rho += m.prob * (m.state.amplitudes() * m.state.amplitudes().adjoint());
    }
    return HermitianOperator::from_matrix(rho);
}

Complex inner_product(const Ket &a, const Ket &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("inner_product: dim " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
    return a.amplitudes().dot(b.amplitudes());
}

size_t checked_power(size_t dim, size_t copies, size_t max_dim) {
    size_t total = 1;
    for (size_t k = 0; k < copies; k++) {
        if (dim != 0 && total > max_dim / dim) {
            throw CapacityError(
                "dimension " + std::to_string(dim) + "^" + std::to_string(copies) + " exceeds MAX_DIM " +
                std::to_string(max_dim));
        }
        total *= dim;
    }
    if (total > max_dim) {
        throw CapacityError("dimension exceeds MAX_DIM");
    }
    return total;
}

Ket tensor(const Ket &a, const Ket &b, size_t max_dim) {
    if (b.dim() != 0 && a.dim() > max_dim / b.dim()) {
        throw CapacityError(
            "tensor: " + std::to_string(a.dim()) + " x " + std::to_string(b.dim()) + " exceeds MAX_DIM");
    }
    Vector out(idx(a.dim() * b.dim()));
    for (size_t i = 0; i < a.dim(); i++) {
        out.segment(idx(i * b.dim()), idx(b.dim())) = a[i] * b.amplitudes();
    }
    return Ket::normalized(std::move(out));
}

Ket tensor_power(const Ket &ket, size_t copies, size_t max_dim) {
    checked_power(ket.dim(), copies, max_dim);
    Ket out = Ket::basis(1, 0);
    for (size_t k = 0; k < copies; k++) {
        out = tensor(out, ket, max_dim);
    }
    return out;
}

HermitianOperator gram_matrix(std::span<const Ket> states) {
    if (states.empty()) {
        throw EmptyInputError("gram_matrix: empty state list");
    }
    size_t n = states.size();
    Matrix g(idx(n), idx(n));
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i; j < n; j++) {
            Complex v = inner_product(states[i], states[j]);
            g(idx(i), idx(j)) = v;
            g(idx(j), idx(i)) = std::conj(v);
        }
    }
    return HermitianOperator::from_matrix(g);
}

Eigensystem hermitian_eigensystem(const HermitianOperator &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix(), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw HermiticityError("hermitian_eigensystem: eigensolver did not converge");
    }
    Eigensystem out;
    out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    out.vectors = solver.eigenvectors();
    return out;
}

std::vector<double> hermitian_eigenvalues(const HermitianOperator &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw HermiticityError("hermitian_eigenvalues: eigensolver did not converge");
    }
    return {solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size()};
}

double min_eigenvalue(const HermitianOperator &m) {
    return hermitian_eigenvalues(m).front();
}

size_t rank_with_tolerance(std::span<const Ket> states, double tol) {
    if (!(tol > 0)) {
        throw ConfigError("rank_with_tolerance: tol must be positive");
    }
    auto values = hermitian_eigenvalues(gram_matrix(states));
    double threshold = tol * values.back();
    return static_cast<size_t>(std::count_if(values.begin(), values.end(), [&](double v) {
        return v > threshold;
    }));
}

bool is_psd(const HermitianOperator &m, double tol) {
    return min_eigenvalue(m) >= -tol;
}

Matrix psd_sqrt(const HermitianOperator &m, double tol) {
    auto sys = hermitian_eigensystem(m);
    Eigen::VectorXd roots(idx(sys.values.size()));
    for (size_t k = 0; k < sys.values.size(); k++) {
        double v = sys.values[k];
        if (v < -tol) {
            throw HermiticityError("psd_sqrt: eigenvalue " + std::to_string(v) + " is negative");
        }
        roots[idx(k)] = std::sqrt(std::max(v, 0.0));
    }
    return sys.vectors * roots.asDiagonal() * sys.vectors.adjoint();
}

HermitianOperator partial_trace(const HermitianOperator &rho, size_t dim_a, size_t dim_b, Subsystem keep) {
    if (dim_a == 0 || dim_b == 0 || rho.dim() != dim_a * dim_b) {
        throw DimensionError(
            "partial_trace: operator dim " + std::to_string(rho.dim()) + " != " + std::to_string(dim_a) + " * " +
            std::to_string(dim_b));
    }
    const Matrix &m = rho.matrix();
    if (keep == Subsystem::B) {
        Matrix out = Matrix::Zero(idx(dim_b), idx(dim_b));
        for (size_t i = 0; i < dim_a; i++) {
            out += m.block(idx(i * dim_b), idx(i * dim_b), idx(dim_b), idx(dim_b));
        }
        return HermitianOperator::from_matrix(out);
    }
    Matrix out(idx(dim_a), idx(dim_a));
    for (size_t i = 0; i < dim_a; i++) {
        for (size_t k = 0; k < dim_a; k++) {
            out(idx(i), idx(k)) = m.block(idx(i * dim_b), idx(k * dim_b), idx(dim_b), idx(dim_b)).trace();
        }
    }
    return HermitianOperator::from_matrix(out);
}

double trace_distance(const HermitianOperator &rho, const HermitianOperator &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("trace_distance: operators differ in dimension");
    }
    double total = 0;
    for (double v : hermitian_eigenvalues(HermitianOperator::from_matrix(rho.matrix() - sigma.matrix()))) {
        total += std::abs(v);
    }
    return 0.5 * total;
}

void require_orthonormal_basis(std::span<const Ket> basis, size_t dim, double tol) {
    if (basis.size() != dim) {
        throw BasisError(
            "basis has " + std::to_string(basis.size()) + " vectors, expected " + std::to_string(dim));
    }
    for (size_t i = 0; i < basis.size(); i++) {
        if (basis[i].dim() != dim) {
            throw BasisError("basis vector " + std::to_string(i) + " has wrong dimension");
        }
        for (size_t j = i; j < basis.size(); j++) {
            double expected = i == j ? 1.0 : 0.0;
            if (std::abs(inner_product(basis[i], basis[j]) - expected) > tol) {
                throw BasisError(
                    "basis vectors " + std::to_string(i) + " and " + std::to_string(j) + " are not orthonormal");
            }
        }
    }
}

std::vector<double> born_probabilities(const Ket &state, std::span<const Ket> basis) {
    std::vector<double> probs;
    probs.reserve(basis.size());
    for (const auto &b : basis) {
        probs.push_back(std::norm(inner_product(b, state)));
    }
    return probs;
}

Measurement born_measure(const Ket &state, std::span<const Ket> basis, SeededRng &rng) {
    require_orthonormal_basis(basis, state.dim());
    auto probs = born_probabilities(state, basis);
    size_t k = rng.categorical(probs);
    return {k, basis[k]};
}

Vector conditional_vector(const Ket &joint, size_t dim_a, size_t dim_b, const Ket &a) {
    if (joint.dim() != dim_a * dim_b || a.dim() != dim_a) {
        throw DimensionError("conditional_vector: dimensions do not factor as dim_a * dim_b");
    }
    Vector out = Vector::Zero(idx(dim_b));
    for (size_t i = 0; i < dim_a; i++) {
        out += std::conj(a[i]) * joint.amplitudes().segment(idx(i * dim_b), idx(dim_b));
    }
    return out;
}

Measurement measure_subsystem(
    const Ket &joint, size_t dim_a, size_t dim_b, std::span<const Ket> basis_a, SeededRng &rng) {
    if (joint.dim() != dim_a * dim_b) {
        throw DimensionError("measure_subsystem: joint dim does not factor as dim_a * dim_b");
    }
    require_orthonormal_basis(basis_a, dim_a);
    std::vector<Vector> conditionals;
    std::vector<double> probs;
    conditionals.reserve(dim_a);
    probs.reserve(dim_a);
    for (const auto &a : basis_a) {
        conditionals.push_back(conditional_vector(joint, dim_a, dim_b, a));
        probs.push_back(conditionals.back().squaredNorm());
    }
    size_t k = rng.categorical(probs);
    return {k, Ket::normalized(std::move(conditionals[k]))};
}

}  // namespace pqcm
