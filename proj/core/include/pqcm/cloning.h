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

#ifndef PQCM_CLONING_H
#define PQCM_CLONING_H

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "pqcm/qcore.h"

namespace pqcm {

/// Condition-number ceiling for the matrix whose columns are the clonable
/// states.
inline constexpr double MAX_CONDITION = 1e12;
/// Tolerance for the machine invariants checked at construction.
inline constexpr double MACHINE_TOL = 1e-9;

/// `multiplicity` exact copies of `state`. `label` is the 1-based index of
/// the state in whatever list produced it (0 when unknown). The joint ket is
/// never built unless materialize() is called.
struct ExactCopies {
    size_t label;
    Ket state;
    size_t multiplicity;

    Ket materialize(size_t max_dim = MAX_DIM) const;
};

/// sum_i coefficients[i] |states[i]>^{(x) multiplicity}, normalized as a
/// whole. Produced when a legal machine amplifies an input that is a
/// superposition of its clonable states.
struct SuperposedCopies {
    std::vector<Ket> states;
    Vector coefficients;
    size_t multiplicity;

    Ket materialize(size_t max_dim = MAX_DIM) const;
};

/// The |phi^k> sector of an unclonable input: orthogonal to every clonable
/// product and to every group-verification projector.
struct OrthogonalJunk {
    size_t source_label;
};

struct CloneOutput {
    bool success = false;
    std::variant<std::monostate, ExactCopies, SuperposedCopies, OrthogonalJunk> payload;
};

/// Heralded probabilistic cloner realized as a success/fail Kraus pair.
///
///   kraus_success |B_i> = sqrt(gamma_i) |B_i>^{(x) M}
///   kraus_success^dag kraus_success + kraus_fail^dag kraus_fail = I
///
/// Instances only come out of construct_machine, which checks both
/// identities.
class PqcmMachine {
   public:
    const std::vector<Ket> &clonable() const noexcept {
        return clonable_;
    }
    size_t copies() const noexcept {
        return copies_;
    }
    size_t input_dim() const noexcept {
        return clonable_.front().dim();
    }
    const std::vector<double> &gammas() const noexcept {
        return gammas_;
    }
    const Matrix &kraus_success() const noexcept {
        return kraus_success_;
    }
    const Matrix &kraus_fail() const noexcept {
        return kraus_fail_;
    }
    const HermitianOperator &gram() const noexcept {
        return gram_;
    }
    /// max_i || kraus_success |B_i> - sqrt(gamma_i) |B_i>^{(x) M} ||
    double clone_residual() const noexcept {
        return clone_residual_;
    }
    /// max |(S^dag S + F^dag F - I)_ij|
    double trace_residual() const noexcept {
        return trace_residual_;
    }
    /// Coefficients x of the projection of `input` onto the span of the
    /// clonable states, so that P input = sum_i x_i |B_i>.
    Vector span_coordinates(const Ket &input) const;
    /// 0-based index of the clonable state equal to `input` up to phase.
    std::optional<size_t> match_clonable(const Ket &input, double tol = MACHINE_TOL) const;

   private:
    friend PqcmMachine construct_machine(std::span<const Ket>, size_t, std::span<const double>);
    PqcmMachine(
        std::vector<Ket> clonable,
        size_t copies,
        std::vector<double> gammas,
        HermitianOperator gram,
        Matrix coordinate_map,
        Matrix kraus_success,
        Matrix kraus_fail);

    std::vector<Ket> clonable_;
    size_t copies_;
    std::vector<double> gammas_;
    HermitianOperator gram_;
    Matrix coordinate_map_;  // K x N, maps a vector to its span coordinates
    Matrix kraus_success_;
    Matrix kraus_fail_;
    double clone_residual_ = 0;
    double trace_residual_ = 0;
};

/// X - D X^{(M)} D with X the Gram matrix, X^{(M)} its entrywise M-th power
/// and D = diag(sqrt(gamma)). A cloner with these efficiencies exists iff
/// this is positive semidefinite. Throws RankError on dependent states.
HermitianOperator feasibility_matrix(std::span<const Ket> states, size_t copies, std::span<const double> gammas);

/// Largest uniform efficiency keeping feasibility_matrix PSD, by bisection on
/// [0, 1]. The returned value is always on the feasible side.
double max_uniform_gamma(std::span<const Ket> states, size_t copies, double tol = 1e-9);

/// Builds kraus_success = C D (B^dag B)^{-1} B^dag (which is C D B^{-1} when
/// the states span the space) and kraus_fail = sqrt(I - S^dag S).
///
/// Throws RankError for dependent states, ConditioningError when B is too
/// ill-conditioned, FeasibilityError when I - S^dag S is not PSD, and
/// CapacityError when N^M exceeds MAX_DIM.
PqcmMachine construct_machine(std::span<const Ket> states, size_t copies, std::span<const double> gammas);

struct CloneAttempt {
    bool success;
    Ket output;
    double success_probability;
};

/// Runs the two-outcome instrument once. On success the output has
/// dimension N^M; on failure it is the normalized kraus_fail image in the
/// input space.
CloneAttempt apply_machine(const PqcmMachine &machine, const Ket &input, SeededRng &rng);

struct AmplifyResult {
    bool success;
    size_t applications;
    std::optional<ExactCopies> copies;
};

/// Grows one clonable input to `target_copies` exact copies by applying a
/// 1 -> 2 machine to the newest copy until the count is reached. Aborts on
/// the first failure. Throws UnsupportedInputError for a non-clonable input.
AmplifyResult amplify(const PqcmMachine &machine, const Ket &input, size_t target_copies, SeededRng &rng);

/// Same repeated 1 -> 2 procedure for an arbitrary input. The machine acts
/// linearly, so an input with span coordinates x turns into
/// sum_i x_i gamma_i^{(k-1)/2} |B_i>^{(x) k} after k-1 successes; each step
/// succeeds with the ratio of consecutive squared norms. Clonable inputs are
/// routed through amplify().
CloneOutput amplify_superposed(const PqcmMachine &machine, const Ket &input, size_t target_copies, SeededRng &rng);

/// Coefficients of the output written for an input the illegal cloner
/// cannot copy: sum_l c_l |B_l>^{(x) mu} + d |phi>.
struct BranchCoefficients {
    std::vector<Complex> c;
    Complex d;

    bool operator==(const BranchCoefficients &) const = default;
};

/// Configuration of the label-aware cloner of N+1 dependent states.
class IllegalClonerSpec {
   public:
    /// `n` is N. `clonable_labels` must hold N+1 distinct labels in 1..2N.
    /// Unclonable labels without an entry use c = 0, d = 1.
    static IllegalClonerSpec make(
        size_t n,
        std::vector<size_t> clonable_labels,
        size_t copies,
        std::map<size_t, BranchCoefficients> unclonable_output = {});

    size_t n() const noexcept {
        return n_;
    }
    const std::vector<size_t> &clonable_labels() const noexcept {
        return clonable_labels_;
    }
    size_t copies() const noexcept {
        return copies_;
    }
    bool is_clonable(size_t label) const;
    BranchCoefficients coefficients_for(size_t label) const;
    const std::map<size_t, BranchCoefficients> &unclonable_output() const noexcept {
        return unclonable_output_;
    }

   private:
    IllegalClonerSpec() = default;
    size_t n_ = 0;
    std::vector<size_t> clonable_labels_;
    size_t copies_ = 0;
    std::map<size_t, BranchCoefficients> unclonable_output_;
};

/// The nonphysical cloner: it reads the preparation label rather than the
/// quantum state. Clonable labels yield exact copies; other labels yield a
/// branch of the general output sampled with probabilities |c_l|^2, |d|^2.
/// `all_states` are |B_1> ... |B_2N>. Always reports success.
CloneOutput illegal_clone(
    const IllegalClonerSpec &spec, size_t input_label, std::span<const Ket> all_states, SeededRng &rng);

}  // namespace pqcm

#endif
