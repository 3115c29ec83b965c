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

#include "pqcm/rng.h"

#include <stdexcept>

namespace pqcm {

uint64_t mix64(uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

SeededRng::SeededRng(uint64_t seed, uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(mix64(mix64(seed) ^ (stream_id * 0xD1B54A32D192ED03ULL + 1))) {
}

uint64_t SeededRng::next_u64() {
    return engine_();
}

double SeededRng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

bool SeededRng::bernoulli(double p) {
    if (p >= 1.0) {
        // Still consume a draw so the stream position does not depend on p.
        engine_();
        return true;
    }
    return uniform() < p;
}

size_t SeededRng::categorical(std::span<const double> weights) {
    if (weights.empty()) {
        throw std::invalid_argument("categorical: empty weight list");
    }
    double total = 0;
    for (double w : weights) {
        if (!(w >= 0)) {
            throw std::invalid_argument("categorical: negative or NaN weight");
        }
        total += w;
    }
    if (!(total > 0)) {
        throw std::invalid_argument("categorical: weights sum to zero");
    }
    double u = uniform() * total;
    size_t last_positive = 0;
    double acc = 0;
    for (size_t k = 0; k < weights.size(); k++) {
        if (weights[k] <= 0) {
            continue;
        }
        last_positive = k;
        acc += weights[k];
        if (u < acc) {
            return k;
        }
    }
    return last_positive;
}

}  // namespace pqcm
