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

#include "pqcm/cloning.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace pqcm {

namespace {

Eigen::Index idx(size_t k) {
    return static_cast<Eigen::Index>(k);
}

Complex int_pow(Complex z, size_t power) {
    Complex out = 1.0;
    for (size_t k = 0; k < power; k++) {
        out *= z;
    }
    return out;
}

void validate_clone_request(std::span<const Ket> states, size_t copies, std::span<const double> gammas) {
    if (states.empty()) {
        throw EmptyInputError("no clonable states given");
    }
    for (const auto &s : states) {
        if (s.dim() != states.front().dim()) {
            throw DimensionError("clonable states differ in dimension");
        }
    }
    if (copies < 2) {
        throw ConfigError("copy count M must be at least 2, got " + std::to_string(copies));
    }
    if (gammas.size() != states.size()) {
        throw ConfigError(
            "expected " + std::to_string(states.size()) + " efficiencies, got " + std::to_string(gammas.size()));
    }
    for (double g : gammas) {
        if (!(g >= 0 && g <= 1)) {
            throw ConfigError("efficiency " + std::to_string(g) + " outside [0, 1]");
        }
    }
    if (rank_with_tolerance(states) != states.size()) {
        throw RankError(
            "the " + std::to_string(states.size()) +
            " states are linearly dependent; no probabilistic cloner copies them all exactly");
    }
}

/// sum_ij conj(a_i) a_j G_ij^power
double superposed_norm2(const Vector &a, const Matrix &gram, size_t power) {
    Complex total = 0;
    for (Eigen::Index i = 0; i < a.size(); i++) {
        for (Eigen::Index j = 0; j < a.size(); j++) {
            total += std::conj(a[i]) * a[j] * int_pow(gram(i, j), power);
        }
    }
    return std::max(total.real(), 0.0);
}

}  // namespace

Ket ExactCopies::materialize(size_t max_dim) const {
    return tensor_power(state, multiplicity, max_dim);
}

Ket SuperposedCopies::materialize(size_t max_dim) const {
    if (states.empty() || static_cast<size_t>(coefficients.size()) != states.size()) {
        throw DimensionError("SuperposedCopies: coefficient count does not match state count");
    }
    Vector out = Vector::Zero(idx(checked_power(states.front().dim(), multiplicity, max_dim)));
    for (size_t i = 0; i < states.size(); i++) {
        out += coefficients[idx(i)] * tensor_power(states[i], multiplicity, max_dim).amplitudes();
    }
    return Ket::normalized(std::move(out));
}

PqcmMachine::PqcmMachine(
    std::vector<Ket> clonable,
    size_t copies,
    std::vector<double> gammas,
    HermitianOperator gram,
    Matrix coordinate_map,
    Matrix kraus_success,
    Matrix kraus_fail)
    : clonable_(std::move(clonable)),
      copies_(copies),
      gammas_(std::move(gammas)),
      gram_(std::move(gram)),
      coordinate_map_(std::move(coordinate_map)),
      kraus_success_(std::move(kraus_success)),
      kraus_fail_(std::move(kraus_fail)) {
}

Vector PqcmMachine::span_coordinates(const Ket &input) const {
    if (input.dim() != input_dim()) {
        throw DimensionError(
            "input has dim " + std::to_string(input.dim()) + ", machine expects " + std::to_string(input_dim()));
    }
    return coordinate_map_ * input.amplitudes();
}

std::optional<size_t> PqcmMachine::match_clonable(const Ket &input, double tol) const {
    if (input.dim() != input_dim()) {
        throw DimensionError("match_clonable: dimension mismatch");
    }
    for (size_t i = 0; i < clonable_.size(); i++) {
        if (std::abs(inner_product(clonable_[i], input)) >= 1 - tol) {
            return i;
        }
    }
    return std::nullopt;
}

HermitianOperator feasibility_matrix(std::span<const Ket> states, size_t copies, std::span<const double> gammas) {
    validate_clone_request(states, copies, gammas);
    auto gram = gram_matrix(states);
    size_t k = states.size();
    Matrix out(idx(k), idx(k));
    for (size_t i = 0; i < k; i++) {
        for (size_t j = 0; j < k; j++) {
            Complex x = gram(i, j);
            out(idx(i), idx(j)) = x - std::sqrt(gammas[i] * gammas[j]) * int_pow(x, copies);
        }
    }
    return HermitianOperator::from_matrix(out);
}

double max_uniform_gamma(std::span<const Ket> states, size_t copies, double tol) {
    if (!(tol > 0)) {
        throw ConfigError("max_uniform_gamma: tolerance must be positive");
    }
    std::vector<double> gammas(states.size(), 1.0);
    auto min_eig_at = [&](double g) {
        std::fill(gammas.begin(), gammas.end(), g);
        return min_eigenvalue(feasibility_matrix(states, copies, gammas));
    };
    // Orthogonal sets give an exactly zero matrix at gamma = 1; allow only
    // rounding-level slack there.
    if (min_eig_at(1.0) >= -1e-14) {
        return 1.0;
    }
    double lo = 0;
    double hi = 1;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (min_eig_at(mid) >= 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

PqcmMachine construct_machine(std::span<const Ket> states, size_t copies, std::span<const double> gammas) {
    auto feas = feasibility_matrix(states, copies, gammas);
    double feas_min = min_eigenvalue(feas);

    size_t n = states.front().dim();
    size_t k = states.size();
    Matrix columns(idx(n), idx(k));
    for (size_t i = 0; i < k; i++) {
        columns.col(idx(i)) = states[i].amplitudes();
    }
    Eigen::JacobiSVD<Matrix> svd(columns);
    const auto &sv = svd.singularValues();
    double condition = sv.maxCoeff() / sv.minCoeff();
    if (!(condition <= MAX_CONDITION)) {
        throw ConditioningError("clonable states are ill-conditioned (condition number " + std::to_string(condition) + ")");
    }

    size_t out_dim = checked_power(n, copies);
    Matrix copies_matrix(idx(out_dim), idx(k));
    for (size_t i = 0; i < k; i++) {
        copies_matrix.col(idx(i)) = tensor_power(states[i], copies).amplitudes();
    }
    Eigen::VectorXcd root_gamma(idx(k));
    for (size_t i = 0; i < k; i++) {
        root_gamma[idx(i)] = std::sqrt(gammas[i]);
    }

    auto gram = gram_matrix(states);
    // (B^dag B)^{-1} B^dag; for K == N this is B^{-1}.
    Matrix coordinate_map = gram.matrix().partialPivLu().solve(columns.adjoint());
    Matrix success = copies_matrix * root_gamma.asDiagonal() * coordinate_map;

    Matrix complement = Matrix::Identity(idx(n), idx(n)) - success.adjoint() * success;
    auto complement_op = HermitianOperator::from_matrix(complement, 1e-9);
    double complement_min = min_eigenvalue(complement_op);
    if (complement_min < -PSD_TOL) {
        throw FeasibilityError(
            "efficiencies are infeasible: I - S^dag S has eigenvalue " + std::to_string(complement_min) +
                ", feasibility matrix min eigenvalue " + std::to_string(feas_min),
            feas_min);
    }
    Matrix fail = psd_sqrt(complement_op, PSD_TOL);

    PqcmMachine machine(
        std::vector<Ket>(states.begin(), states.end()),
        copies,
        std::vector<double>(gammas.begin(), gammas.end()),
        gram,
        std::move(coordinate_map),
        std::move(success),
        std::move(fail));

    double clone_residual = 0;
    for (size_t i = 0; i < k; i++) {
        Vector diff = machine.kraus_success_ * states[i].amplitudes() - root_gamma[idx(i)] * copies_matrix.col(idx(i));
        clone_residual = std::max(clone_residual, diff.norm());
    }
    Matrix total = machine.kraus_success_.adjoint() * machine.kraus_success_ +
                   machine.kraus_fail_.adjoint() * machine.kraus_fail_ - Matrix::Identity(idx(n), idx(n));
    double trace_residual = total.cwiseAbs().maxCoeff();
    machine.clone_residual_ = clone_residual;
    machine.trace_residual_ = trace_residual;
    if (clone_residual > MACHINE_TOL || trace_residual > MACHINE_TOL) {
        throw ConditioningError(
            "constructed machine misses its invariants: clone residual " + std::to_string(clone_residual) +
            ", trace residual " + std::to_string(trace_residual));
    }
    return machine;
}

CloneAttempt apply_machine(const PqcmMachine &machine, const Ket &input, SeededRng &rng) {
    if (input.dim() != machine.input_dim()) {
        throw DimensionError(
            "apply_machine: input dim " + std::to_string(input.dim()) + ", machine expects " +
            std::to_string(machine.input_dim()));
    }
    Vector cloned = machine.kraus_success() * input.amplitudes();
    double p = std::min(cloned.squaredNorm(), 1.0);
    if (rng.bernoulli(p)) {
        return {true, Ket::normalized(std::move(cloned)), p};
    }
    return {false, Ket::normalized(machine.kraus_fail() * input.amplitudes()), p};
}

AmplifyResult amplify(const PqcmMachine &machine, const Ket &input, size_t target_copies, SeededRng &rng) {
    if (machine.copies() != 2) {
        throw ConfigError("amplify needs a 1 -> 2 machine, got 1 -> " + std::to_string(machine.copies()));
    }
    if (target_copies == 0) {
        throw ConfigError("amplify: target copy count must be at least 1");
    }
    auto index = machine.match_clonable(input);
    if (!index) {
        throw UnsupportedInputError("amplify: input is not one of the machine's clonable states");
    }
    const Ket &state = machine.clonable()[*index];
    double p = std::min((machine.kraus_success() * state.amplitudes()).squaredNorm(), 1.0);
    size_t applications = 0;
    for (size_t have = 1; have < target_copies; have++) {
        applications++;
        if (!rng.bernoulli(p)) {
            return {false, applications, std::nullopt};
        }
    }
    return {true, applications, ExactCopies{*index + 1, state, target_copies}};
}

CloneOutput amplify_superposed(const PqcmMachine &machine, const Ket &input, size_t target_copies, SeededRng &rng) {
    if (machine.copies() != 2) {
        throw ConfigError("amplify needs a 1 -> 2 machine, got 1 -> " + std::to_string(machine.copies()));
    }
    if (target_copies == 0) {
        throw ConfigError("amplify: target copy count must be at least 1");
    }
    if (machine.match_clonable(input)) {
        auto result = amplify(machine, input, target_copies, rng);
        if (!result.success) {
            return {};
        }
        return {true, *result.copies};
    }
    if (target_copies == 1) {
        return {true, SuperposedCopies{{input}, Vector::Ones(1), 1}};
    }

    const Matrix &gram = machine.gram().matrix();
    Vector coeffs = machine.span_coordinates(input);
    Eigen::VectorXd root_gamma(coeffs.size());
    for (Eigen::Index i = 0; i < coeffs.size(); i++) {
        root_gamma[i] = std::sqrt(machine.gammas()[static_cast<size_t>(i)]);
    }
    double norm2 = 1.0;
    for (size_t have = 1; have < target_copies; have++) {
        coeffs = root_gamma.asDiagonal() * coeffs;
        double next = superposed_norm2(coeffs, gram, have + 1);
        double p = norm2 > 0 ? std::min(next / norm2, 1.0) : 0.0;
        if (!rng.bernoulli(p)) {
            return {};
        }
        norm2 = next;
    }
    coeffs /= std::sqrt(norm2);
    return {true, SuperposedCopies{machine.clonable(), std::move(coeffs), target_copies}};
}

IllegalClonerSpec IllegalClonerSpec::make(
    size_t n, std::vector<size_t> clonable_labels, size_t copies, std::map<size_t, BranchCoefficients> unclonable_output) {
    if (n < 2) {
        throw ConfigError("illegal cloner needs N >= 2");
    }
    std::sort(clonable_labels.begin(), clonable_labels.end());
    if (clonable_labels.size() != n + 1 ||
        std::adjacent_find(clonable_labels.begin(), clonable_labels.end()) != clonable_labels.end()) {
        throw ConfigError("illegal cloner needs N+1 = " + std::to_string(n + 1) + " distinct clonable labels");
    }
    for (size_t label : clonable_labels) {
        if (label < 1 || label > 2 * n) {
            throw LabelError("clonable label " + std::to_string(label) + " outside 1.." + std::to_string(2 * n));
        }
    }
    if (copies < 1) {
        throw ConfigError("illegal cloner copy count must be positive");
    }
    std::set<size_t> clonable_set(clonable_labels.begin(), clonable_labels.end());
    for (const auto &[label, coeffs] : unclonable_output) {
        if (label < 1 || label > 2 * n) {
            throw LabelError("coefficient label " + std::to_string(label) + " outside 1.." + std::to_string(2 * n));
        }
        if (clonable_set.count(label)) {
            throw ConfigError("label " + std::to_string(label) + " is clonable and cannot carry branch coefficients");
        }
        if (coeffs.c.size() != n + 1) {
            throw ConfigError(
                "label " + std::to_string(label) + " needs " + std::to_string(n + 1) + " c coefficients");
        }
        double total = std::norm(coeffs.d);
        for (const auto &c : coeffs.c) {
            total += std::norm(c);
        }
        if (std::abs(total - 1) > NORM_TOL) {
            throw ConfigError(
                "coefficients for label " + std::to_string(label) + " have squared norm " + std::to_string(total));
        }
    }
    IllegalClonerSpec spec;
    spec.n_ = n;
    spec.clonable_labels_ = std::move(clonable_labels);
    spec.copies_ = copies;
    spec.unclonable_output_ = std::move(unclonable_output);
    return spec;
}

bool IllegalClonerSpec::is_clonable(size_t label) const {
    return std::binary_search(clonable_labels_.begin(), clonable_labels_.end(), label);
}

BranchCoefficients IllegalClonerSpec::coefficients_for(size_t label) const {
    auto it = unclonable_output_.find(label);
    if (it != unclonable_output_.end()) {
        return it->second;
    }
    return {std::vector<Complex>(n_ + 1, 0.0), 1.0};
}

CloneOutput illegal_clone(
    const IllegalClonerSpec &spec, size_t input_label, std::span<const Ket> all_states, SeededRng &rng) {
    size_t n = spec.n();
    if (all_states.size() != 2 * n) {
        throw DimensionError("illegal_clone: expected 2N = " + std::to_string(2 * n) + " states");
    }
    if (input_label < 1 || input_label > 2 * n) {
        throw LabelError("illegal_clone: label " + std::to_string(input_label) + " outside 1.." + std::to_string(2 * n));
    }
    if (spec.is_clonable(input_label)) {
        return {true, ExactCopies{input_label, all_states[input_label - 1], spec.copies()}};
    }
    auto coeffs = spec.coefficients_for(input_label);
    std::vector<double> weights;
    weights.reserve(n + 2);
    for (const auto &c : coeffs.c) {
        weights.push_back(std::norm(c));
    }
    weights.push_back(std::norm(coeffs.d));
    size_t branch = rng.categorical(weights);
    if (branch == n + 1) {
        return {true, OrthogonalJunk{input_label}};
    }
    size_t label = spec.clonable_labels()[branch];
    return {true, ExactCopies{label, all_states[label - 1], spec.copies()}};
}

}  // namespace pqcm
