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

#ifndef PQCM_RNG_H
#define PQCM_RNG_H

#include <cstdint>
#include <random>
#include <span>

namespace pqcm {

/// Deterministic random stream keyed by (seed, stream_id).
///
/// Every Monte Carlo trial owns one of these with stream_id equal to its
/// global trial index, so results never depend on how trials are scheduled
/// across threads. Draws are produced from std::mt19937_64 (whose output
/// sequence is fixed by the standard) and converted to doubles by hand,
/// because the standard distributions are implementation-defined.
class SeededRng {
   public:
    SeededRng(uint64_t seed, uint64_t stream_id);

    uint64_t seed() const noexcept {
        return seed_;
    }
    uint64_t stream_id() const noexcept {
        return stream_id_;
    }

    uint64_t next_u64();
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    bool bernoulli(double p);
    /// Index drawn with probability weights[i] / sum(weights).
    size_t categorical(std::span<const double> weights);

   private:
    uint64_t seed_;
    uint64_t stream_id_;
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer, used to decorrelate (seed, stream) pairs.
uint64_t mix64(uint64_t x) noexcept;

}  // namespace pqcm

#endif
