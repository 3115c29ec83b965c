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

#include "pqcm/signalling.h"

namespace pqcm {
namespace {

const double R3 = std::sqrt(3.0) / 2;

std::vector<Ket> candidates() {
    return {Ket::normalized({Complex(1), Complex(0)}), Ket::normalized({Complex(0.5), Complex(R3)}),
            Ket::normalized({Complex(0.5), Complex(-R3)})};
}

void BM_GroupVerifyExact(benchmark::State &state) {
    auto cands = candidates();
    size_t mu = static_cast<size_t>(state.range(0));
    CloneOutput out{true, ExactCopies{2, cands[1], mu}};
    uint64_t stream = 0;
    for (auto _ : state) {
        SeededRng rng(3, stream++);
        benchmark::DoNotOptimize(group_verify(out, cands, mu, rng));
    }
}
BENCHMARK(BM_GroupVerifyExact)->Arg(6)->Arg(48)->Arg(192);

void BM_GroupVerifySuperposed(benchmark::State &state) {
    auto cands = candidates();
    size_t mu = static_cast<size_t>(state.range(0));
    Vector coeffs(2);
    coeffs << 0.8, Complex(0, 0.6);
    CloneOutput out{true, SuperposedCopies{{cands[0], cands[1]}, coeffs, mu}};
    uint64_t stream = 0;
    for (auto _ : state) {
        SeededRng rng(4, stream++);
        benchmark::DoNotOptimize(group_verify(out, cands, mu, rng));
    }
}
BENCHMARK(BM_GroupVerifySuperposed)->Arg(6)->Arg(48);

ProtocolConfig illegal_config(uint64_t trials, size_t threads) {
    auto cands = candidates();
    std::vector<Ket> bobs{cands[0], cands[1]};
    return ProtocolConfig{
        .bob_states = bobs,
        .a2_basis = target_to_basis(cands[2], bobs),
        .mu = 48,
        .trials = trials,
        .pairs_per_bit = 200,
        .cloner = IllegalClonerSpec::make(2, {1, 2, 3}, 48),
        .seed = 42,
        .threads = threads,
    };
}

void BM_RunProtocolIllegal(benchmark::State &state) {
    auto config = illegal_config(10000, static_cast<size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_protocol(config));
    }
    state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_RunProtocolIllegal)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_RunProtocolLegal(benchmark::State &state) {
    auto cands = candidates();
    std::vector<Ket> bobs{cands[0], cands[1]};
    double g = max_uniform_gamma(bobs, 2);
    ProtocolConfig config{
        .bob_states = bobs,
        .a2_basis = target_to_basis(cands[2], bobs),
        .mu = 6,
        .trials = 10000,
        .pairs_per_bit = 10,
        .cloner = construct_machine(bobs, 2, std::vector<double>{g, g}),
        .seed = 42,
    };
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_protocol(config));
    }
    state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_RunProtocolLegal)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace pqcm
