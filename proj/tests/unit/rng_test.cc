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

#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "pqcm/rng.h"

namespace pqcm {
namespace {

TEST(SeededRng, SameSeedAndStreamReplay) {
    SeededRng a(42, 7);
    SeededRng b(42, 7);
    for (int k = 0; k < 1000; k++) {
        ASSERT_EQ(a.next_u64(), b.next_u64());
    }
    EXPECT_EQ(a.seed(), 42u);
    EXPECT_EQ(a.stream_id(), 7u);
}

TEST(SeededRng, StreamsAndSeedsDiffer) {
    std::set<uint64_t> firsts;
    for (uint64_t s = 0; s < 100; s++) {
        firsts.insert(SeededRng(1, s).next_u64());
        firsts.insert(SeededRng(s + 2, 0).next_u64());
    }
    EXPECT_EQ(firsts.size(), 200u);
}

TEST(SeededRng, UniformInUnitInterval) {
    SeededRng rng(3, 0);
    double sum = 0;
    const int n = 100000;
    for (int k = 0; k < n; k++) {
        double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // Mean 1/2, standard error sqrt(1/12 / n).
    EXPECT_NEAR(sum / n, 0.5, 3 * 0.000913);
}

TEST(SeededRng, BernoulliEdgesConsumeOneDraw) {
    SeededRng a(5, 1);
    SeededRng b(5, 1);
    EXPECT_TRUE(a.bernoulli(1.0));
    EXPECT_FALSE(a.bernoulli(0.0));
    b.next_u64();
    b.next_u64();
    EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(SeededRng, CategoricalFrequencies) {
    std::vector<double> w{1, 0, 3};
    SeededRng rng(9, 0);
    std::vector<int> counts(3, 0);
    const int n = 40000;
    for (int k = 0; k < n; k++) {
        counts[rng.categorical(w)]++;
    }
    EXPECT_EQ(counts[1], 0);
    // p = 0.25, sigma = sqrt(p(1-p)/n) ~ 0.00217.
    EXPECT_NEAR(counts[0] / double(n), 0.25, 3 * 0.00217);
}

TEST(SeededRng, CategoricalRejectsDegenerateWeights) {
    SeededRng rng(0, 0);
    std::vector<double> empty;
    std::vector<double> zeros{0, 0};
    std::vector<double> negative{1, -1};
    EXPECT_ANY_THROW(rng.categorical(empty));
    EXPECT_ANY_THROW(rng.categorical(zeros));
    EXPECT_ANY_THROW(rng.categorical(negative));
}

TEST(Mix64, KnownSplitMixValues) {
    // Reference values of the SplitMix64 finalizer applied to x + golden gamma.
    EXPECT_EQ(mix64(0), 0xE220A8397B1DCDAFull);
    EXPECT_NE(mix64(1), mix64(2));
}

}  // namespace
}  // namespace pqcm
