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

#include <random>

#include "pqcm/qcore.h"

namespace pqcm {
namespace {

Matrix random_hermitian(size_t n, uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    Matrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < g.rows(); i++) {
        for (Eigen::Index j = 0; j < g.cols(); j++) {
            g(i, j) = Complex(normal(gen), normal(gen));
        }
    }
    return (g + g.adjoint()) * 0.5;
}

void BM_HermitianEigenvalues(benchmark::State &state) {
    auto m = HermitianOperator::from_matrix(random_hermitian(static_cast<size_t>(state.range(0)), 1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermitian_eigenvalues(m));
    }
}
BENCHMARK(BM_HermitianEigenvalues)->Arg(4)->Arg(16)->Arg(64);

void BM_TensorPower(benchmark::State &state) {
    Ket k = Ket::normalized({Complex(0.6), Complex(0, 0.8)});
    for (auto _ : state) {
        benchmark::DoNotOptimize(tensor_power(k, static_cast<size_t>(state.range(0))));
    }
}
BENCHMARK(BM_TensorPower)->Arg(8)->Arg(16);

void BM_PartialTrace(benchmark::State &state) {
    size_t n = static_cast<size_t>(state.range(0));
    Vector v = Vector::Ones(static_cast<Eigen::Index>(n * n));
    auto rho = HermitianOperator::projector(Ket::normalized(v));
    for (auto _ : state) {
        benchmark::DoNotOptimize(partial_trace(rho, n, n, Subsystem::B));
    }
}
BENCHMARK(BM_PartialTrace)->Arg(4)->Arg(8);

}  // namespace
}  // namespace pqcm
