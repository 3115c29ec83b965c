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

#ifndef PQCM_ENTANGLE_H
#define PQCM_ENTANGLE_H

#include <span>
#include <vector>

#include "pqcm/qcore.h"

namespace pqcm {

enum class BasisLabel { A1, A2 };

/// Orthonormal measurement basis for Alice's N-dimensional half of the pair.
class AliceBasis {
   public:
    /// The |n>_A basis; label A1.
    static AliceBasis computational(size_t n);
    /// a_m[n] = exp(2 pi i m n / N) / sqrt(N); label A2.
    static AliceBasis fourier(size_t n);
    /// Any other orthonormal basis; label A2. Throws BasisError.
    static AliceBasis alternate(std::vector<Ket> vectors);

    const std::vector<Ket> &vectors() const noexcept {
        return vectors_;
    }
    const Ket &operator[](size_t m) const {
        return vectors_[m];
    }
    BasisLabel label() const noexcept {
        return label_;
    }
    size_t dim() const noexcept {
        return vectors_.size();
    }

   private:
    AliceBasis(std::vector<Ket> vectors, BasisLabel label) : vectors_(std::move(vectors)), label_(label) {
    }
    std::vector<Ket> vectors_;
    BasisLabel label_;
};

/// (1/sqrt(N)) sum_n |n>_A (x) |B_n>, with Alice's factor first.
class SharedState {
   public:
    const Ket &joint() const noexcept {
        return joint_;
    }
    const std::vector<Ket> &bob_states() const noexcept {
        return bob_states_;
    }
    size_t alice_dim() const noexcept {
        return bob_states_.size();
    }
    size_t bob_dim() const noexcept {
        return bob_states_.front().dim();
    }

   private:
    friend SharedState build_shared_state(std::vector<Ket> bob_states);
    SharedState(Ket joint, std::vector<Ket> bob_states) : joint_(std::move(joint)), bob_states_(std::move(bob_states)) {
    }
    Ket joint_;
    std::vector<Ket> bob_states_;
};

/// Requires N >= 2 states, each of dimension N. The states may overlap or
/// even coincide.
SharedState build_shared_state(std::vector<Ket> bob_states);

/// The ensemble Alice prepares for Bob by measuring in `basis`.
///
/// Member m is proportional to sum_n <a_m|n> |B_n> with probability equal to
/// its squared norm over N. For the A1 basis this is exactly the list of Bob
/// states with weight 1/N each. A member whose unnormalized vector vanishes
/// gets probability 0 and the placeholder state |0>.
Ensemble induced_ensemble(const SharedState &shared, const AliceBasis &basis);

/// Samples Alice's outcome from the joint state and returns Bob's conditional
/// state.
Measurement alice_measure(const SharedState &shared, const AliceBasis &basis, SeededRng &rng);

/// Builds an A2 basis whose first outcome prepares `target` for Bob.
///
/// The first vector solves sum_n conj(a_1[n]) |B_n> ∝ target; the rest are
/// completed by modified Gram-Schmidt over the computational vectors in index
/// order. Throws RankError if the Bob states are dependent and SpanError if
/// the target is not a combination of them.
AliceBasis target_to_basis(const Ket &target, std::span<const Ket> bob_states);

}  // namespace pqcm

#endif
