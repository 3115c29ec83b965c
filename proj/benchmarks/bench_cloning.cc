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

#include <benchmark/benchmark.h>

#include <cmath>

#include "pqcm/cloning.h"

namespace pqcm {
namespace {

std::vector<Ket> overlapping_set(size_t n) {
    // e_k + 0.3 * (sum of the others), normalized: independent, pairwise overlapping.
    std::vector<Ket> out;
    for (size_t k = 0; k < n; k++) {
        Vector v = Vector::Constant(static_cast<Eigen::Index>(n), 0.3);
        v[static_cast<Eigen::Index>(k)] = 1;
        out.push_back(Ket::normalized(v));
    }
    return out;
}

void BM_MaxUniformGamma(benchmark::State &state) {
    auto states = overlapping_set(static_cast<size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(max_uniform_gamma(states, 2));
    }
}
BENCHMARK(BM_MaxUniformGamma)->Arg(2)->Arg(4);

void BM_ConstructMachine(benchmark::State &state) {
    size_t n = static_cast<size_t>(state.range(0));
    size_t copies = static_cast<size_t>(state.range(1));
    auto states = overlapping_set(n);
    std::vector<double> gammas(n, max_uniform_gamma(states, copies));
    for (auto _ : state) {
        benchmark::DoNotOptimize(construct_machine(states, copies, gammas));
    }
}
BENCHMARK(BM_ConstructMachine)->Args({2, 2})->Args({3, 3})->Args({4, 4});

void BM_AmplifySuperposed(benchmark::State &state) {
    auto states = overlapping_set(3);
    std::vector<double> gammas(3, max_uniform_gamma(states, 2));
    PqcmMachine m = construct_machine(states, 2, gammas);
    Ket input = Ket::normalized(Vector(states[0].amplitudes() + states[2].amplitudes()));
    uint64_t stream = 0;
    for (auto _ : state) {
        SeededRng rng(1, stream++);
        benchmark::DoNotOptimize(amplify_superposed(m, input, static_cast<size_t>(state.range(0)), rng));
    }
}
BENCHMARK(BM_AmplifySuperposed)->Arg(4)->Arg(48);

}  // namespace
}  // namespace pqcm
