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

#include <cmath>
#include <random>

#include "oracles.h"
#include "pqcm/cloning.h"
#include "pqcm/entangle.h"
#include "pqcm/errors.h"
#include "pqcm/signalling.h"

namespace pqcm {
namespace {

using testing::real_ket;

const double R3 = std::sqrt(3.0) / 2;

std::vector<Ket> trine_pair() {
    return {real_ket({1, 0}), real_ket({0.5, R3})};
}

Ket trine_third() {
    return real_ket({0.5, -R3});
}

ProtocolConfig illegal_config(size_t mu, uint64_t trials, uint64_t seed, size_t threads = 1) {
    auto bobs = trine_pair();
    return ProtocolConfig{
        .bob_states = bobs,
        .a2_basis = target_to_basis(trine_third(), bobs),
        .mu = mu,
        .trials = trials,
        .pairs_per_bit = 200,
        .cloner = IllegalClonerSpec::make(2, {1, 2, 3}, mu),
        .seed = seed,
        .threads = threads,
    };
}

TEST(GroupSizes, EarlierGroupsTakeExtras) {
    EXPECT_EQ(group_sizes(48, 3), (std::vector<size_t>{16, 16, 16}));
    EXPECT_EQ(group_sizes(10, 3), (std::vector<size_t>{4, 3, 3}));
    EXPECT_EQ(group_sizes(11, 4), (std::vector<size_t>{3, 3, 3, 2}));
    EXPECT_EQ(group_sizes(3, 3), (std::vector<size_t>{1, 1, 1}));
    EXPECT_THROW(group_sizes(2, 3), ConfigError);
}

TEST(GuessRule, Examples) {
    EXPECT_EQ(guess_rule(Column::of(3), 5), Guess::Zero);
    EXPECT_EQ(guess_rule(Column::of(6), 5), Guess::One);
    EXPECT_EQ(guess_rule(Column::of(3), 2), Guess::One);
    EXPECT_EQ(guess_rule(Column::phi(), 2), Guess::Abstain);
    EXPECT_THROW(guess_rule(Column::of(4), 2), LabelError);
    EXPECT_THROW(Column::of(0), LabelError);
}

TEST(GroupVerify, OrthogonalCandidatesAreCertain) {
    std::vector<Ket> cands{Ket::basis(3, 0), Ket::basis(3, 1), Ket::basis(3, 2)};
    for (size_t l = 1; l <= 3; l++) {
        for (uint64_t t = 0; t < 50; t++) {
            SeededRng rng(100, t);
            CloneOutput out{true, ExactCopies{l, cands[l - 1], 6}};
            EXPECT_EQ(group_verify(out, cands, 6, rng), Column::of(l));
        }
    }
}

TEST(GroupVerify, JunkAlwaysPhi) {
    std::vector<Ket> cands{trine_pair()[0], trine_pair()[1], trine_third()};
    for (uint64_t t = 0; t < 50; t++) {
        SeededRng rng(101, t);
        CloneOutput out{true, OrthogonalJunk{4}};
        EXPECT_TRUE(group_verify(out, cands, 6, rng).is_phi());
    }
}

TEST(GroupVerify, Errors) {
    std::vector<Ket> cands{Ket::basis(2, 0), Ket::basis(2, 1), real_ket({1, 1})};
    SeededRng rng(0, 0);
    EXPECT_THROW(group_verify(CloneOutput{true, ExactCopies{1, cands[0], 2}}, cands, 2, rng), ConfigError);
    EXPECT_THROW(group_verify(CloneOutput{true, ExactCopies{1, cands[0], 5}}, cands, 6, rng), ConfigError);
    EXPECT_THROW(group_verify(CloneOutput{}, cands, 6, rng), ConfigError);
}

TEST(ExactCopyDistribution, MatchesMaterializedProjectors) {
    std::mt19937_64 gen(102);
    for (int t = 0; t < 5; t++) {
        auto cands = testing::random_kets(3, 2, gen);
        for (size_t mu : {3, 4, 7}) {
            for (size_t l = 0; l < 3; l++) {
                auto ours = exact_copy_column_distribution(cands[l], cands, mu);
                auto oracle = testing::materialized_column_distribution(
                    tensor_power(cands[l], mu).amplitudes(), 2, cands, mu);
                ASSERT_EQ(ours.size(), oracle.size());
                for (size_t c = 0; c < ours.size(); c++) {
                    EXPECT_NEAR(ours[c], oracle[c], 1e-12);
                }
            }
        }
    }
}

TEST(GroupVerify, ExactCopiesMatchAnalyticWithinThreeSigma) {
    std::vector<Ket> cands{real_ket({1, 0}), real_ket({0.8, 0.6}), real_ket({0.6, -0.8})};
    const size_t mu = 6;
    auto exact = exact_copy_column_distribution(cands[1], cands, mu);
    const uint64_t n = 100000;
    std::vector<uint64_t> counts(4, 0);
    for (uint64_t t = 0; t < n; t++) {
        SeededRng rng(103, t);
        Column c = group_verify(CloneOutput{true, ExactCopies{2, cands[1], mu}}, cands, mu, rng);
        counts[c.is_phi() ? 3 : c.label() - 1]++;
    }
    for (size_t c = 0; c < 4; c++) {
        EXPECT_NEAR(double(counts[c]) / n, exact[c], 3 * testing::binomial_sigma(exact[c], n) + 1e-12);
    }
}

TEST(GroupVerify, SuperposedCopiesMatchMaterializedOracle) {
    std::mt19937_64 gen(104);
    auto cands = testing::random_kets(3, 2, gen);
    auto clonable = testing::random_kets(2, 2, gen);
    const size_t mu = 5;
    Vector coeffs(2);
    coeffs << Complex(0.7, 0.1), Complex(-0.4, 0.5);
    SuperposedCopies sup{clonable, coeffs, mu};
    Ket joint = sup.materialize();
    auto oracle = testing::materialized_column_distribution(joint.amplitudes(), 2, cands, mu);
    const uint64_t n = 100000;
    std::vector<uint64_t> counts(4, 0);
    for (uint64_t t = 0; t < n; t++) {
        SeededRng rng(105, t);
        Column c = group_verify(CloneOutput{true, sup}, cands, mu, rng);
        counts[c.is_phi() ? 3 : c.label() - 1]++;
    }
    for (size_t c = 0; c < 4; c++) {
        EXPECT_NEAR(double(counts[c]) / n, oracle[c], 3 * testing::binomial_sigma(oracle[c], n) + 1e-12);
    }
}

TEST(Leakage, TrineStatesAtDefaultMu) {
    std::vector<Ket> cands{trine_pair()[0], trine_pair()[1], trine_third()};
    double leak = finite_mu_leakage(cands, 48);
    // Each wrong group passes with probability (1/4)^16.
    double wrong = std::pow(0.25, 16);
    EXPECT_NEAR(leak, 1 - (1 - wrong) * (1 - wrong), 1e-15);
    EXPECT_LT(leak, 1e-6);
}

TEST(TallyTable, CountsAndMerge) {
    TallyTable a(2);
    EXPECT_EQ(a.rows(), 4u);
    EXPECT_EQ(a.columns(), 4u);
    a.add(1, Column::of(1));
    a.add(1, Column::phi(), 3);
    a.add(4, Column::of(3), 2);
    EXPECT_EQ(a.at(1, Column::of(1)), 1u);
    EXPECT_EQ(a.row_sum(1), 4u);
    EXPECT_EQ(a.total(), 6u);
    TallyTable b(2);
    b.add(4, Column::of(3));
    TallyTable ab = a;
    ab.merge(b);
    TallyTable ba = b;
    ba.merge(a);
    EXPECT_EQ(ab, ba);
    EXPECT_EQ(ab.at(4, Column::of(3)), 3u);
    EXPECT_THROW(a.add(5, Column::of(1)), Error);
    EXPECT_THROW(a.add(1, Column::of(4)), Error);
    EXPECT_THROW(a.merge(TallyTable(3)), Error);
}

TEST(Validate, Rejections) {
    auto good = illegal_config(3, 10, 0);
    EXPECT_NO_THROW(validate(good));
    auto small_mu = good;
    small_mu.mu = 2;
    EXPECT_THROW(validate(small_mu), ConfigError);
    auto no_trials = good;
    no_trials.trials = 0;
    EXPECT_THROW(validate(no_trials), ConfigError);
    auto mismatch = good;
    mismatch.mu = 4;
    EXPECT_THROW(validate(mismatch), ConfigError);
    auto three_copy = good;
    three_copy.cloner = construct_machine(trine_pair(), 3, std::vector<double>{0.1, 0.1});
    EXPECT_THROW(validate(three_copy), ConfigError);
}

TEST(AllPreparedStates, FirstNAreBobThenInduced) {
    auto bobs = trine_pair();
    auto shared = build_shared_state(bobs);
    auto basis = target_to_basis(trine_third(), bobs);
    auto all = all_prepared_states(shared, basis);
    ASSERT_EQ(all.size(), 4u);
    EXPECT_EQ(all[0].amplitudes(), bobs[0].amplitudes());
    EXPECT_NEAR(std::abs(inner_product(all[2], trine_third())), 1.0, 1e-12);
}

TEST(RunProtocol, IllegalClonerStructure) {
    auto result = run_protocol(illegal_config(48, 20000, 7));
    const auto &s = result.stats;
    // Row N+1 column alone is impossible from rows 1..N except through leakage.
    for (size_t row = 1; row <= 2; row++) {
        EXPECT_EQ(result.tally.at(row, Column::of(3)), 0u);
        EXPECT_EQ(result.tally.at(row, Column::of(3 - row)), 0u);
    }
    EXPECT_EQ(s.a1.p1, 0.0);
    EXPECT_GE(s.a1.p0, 1 - s.leakage - 3 * s.a1.p0_stderr);
    EXPECT_GT(s.a2.p1, 5 * s.a2.p1_stderr);
    for (const auto *st : {&s.a1, &s.a2}) {
        double sum = 0;
        for (double p : st->p_col) {
            sum += p;
        }
        EXPECT_NEAR(sum, 1.0, 1e-12);
        EXPECT_EQ(st->successes, 20000u);
        EXPECT_EQ(st->discard_rate, 0.0);
    }
    EXPECT_EQ(result.tally.total(), 40000u);
    EXPECT_LE(s.certificate, 1e-12);
}

TEST(RunProtocol, IllegalPositivityLowerBound) {
    auto config = illegal_config(48, 20000, 8);
    auto result = run_protocol(config);
    auto induced = induced_ensemble(build_shared_state(config.bob_states), config.a2_basis);
    double bound = induced[0].prob * (1 - result.stats.leakage);
    EXPECT_GE(result.stats.a2.p1, bound - 3 * result.stats.a2.p1_stderr);
}

TEST(RunProtocol, DeterministicAcrossThreadCounts) {
    auto one = run_protocol(illegal_config(12, 3000, 9, 1));
    auto four = run_protocol(illegal_config(12, 3000, 9, 4));
    EXPECT_EQ(one.tally, four.tally);
    EXPECT_EQ(one.stats.a2.p1, four.stats.a2.p1);
    EXPECT_EQ(one.stats.accuracy, four.stats.accuracy);
    ASSERT_EQ(one.stream.size(), four.stream.size());
    for (size_t i = 0; i < one.stream.size(); i++) {
        EXPECT_EQ(one.stream[i].guess, four.stream[i].guess);
    }
    auto other = run_protocol(illegal_config(12, 3000, 10, 1));
    EXPECT_NE(one.tally, other.tally);
}

TEST(RunProtocol, LegalMachineOnBobStatesNeverReportsColumnNPlusOne) {
    auto bobs = trine_pair();
    double g = max_uniform_gamma(bobs, 2);
    ProtocolConfig config{
        .bob_states = bobs,
        .a2_basis = target_to_basis(trine_third(), bobs),
        .mu = 6,
        .trials = 20000,
        .pairs_per_bit = 10,
        .cloner = construct_machine(bobs, 2, std::vector<double>{g, g}),
        .seed = 11,
    };
    auto r = run_protocol(config);
    EXPECT_EQ(r.stats.a1.p1, 0.0);
    EXPECT_EQ(r.stats.a2.p1, 0.0);
    EXPECT_GT(r.stats.a1.discard_rate, 0.0);
    EXPECT_LE(std::abs(r.stats.p1_gap), 3 * r.stats.p1_gap_stderr + 1e-15);
}

TEST(RunProtocol, LegalMachineOnOtherSetDoesNotSignal) {
    std::mt19937_64 gen(106);
    auto bobs = testing::random_kets(2, 2, gen);
    auto clonable = testing::random_kets(2, 2, gen);
    double g = max_uniform_gamma(clonable, 2);
    ProtocolConfig config{
        .bob_states = bobs,
        .a2_basis = AliceBasis::fourier(2),
        .mu = 3,
        .trials = 40000,
        .pairs_per_bit = 10,
        .cloner = construct_machine(clonable, 2, std::vector<double>{g, g}),
        .seed = 12,
        .threads = 2,
    };
    auto r = run_protocol(config);
    EXPECT_GT(r.stats.a1.p1, 0.0);
    EXPECT_LE(std::abs(r.stats.p1_gap), 3 * r.stats.p1_gap_stderr);
}

TEST(ChannelAccuracy, Decomposition) {
    std::vector<PairRecord> stream{
        {0, Guess::Zero}, {0, Guess::Zero}, {0, Guess::One},
        {1, Guess::One}, {1, Guess::Abstain}, {1, Guess::Abstain},
    };
    auto r = channel_accuracy(stream, 3, 0);
    EXPECT_EQ(r.blocks, 2u);
    EXPECT_EQ(r.correct_blocks, 2u);
    EXPECT_EQ(r.coin_flip_blocks, 0u);
    EXPECT_EQ(r.accuracy, 1.0);
    EXPECT_THROW(channel_accuracy(stream, 4, 0), ConfigError);
    EXPECT_THROW(channel_accuracy(stream, 0, 0), ConfigError);
    std::vector<PairRecord> mixed{{0, Guess::Zero}, {1, Guess::One}};
    EXPECT_THROW(channel_accuracy(mixed, 2, 0), ConfigError);
}

TEST(ChannelAccuracy, AllAbstainBlocksAreCoinFlips) {
    std::vector<PairRecord> stream(2000, PairRecord{0, Guess::Abstain});
    auto r = channel_accuracy(stream, 2, 5);
    EXPECT_EQ(r.coin_flip_blocks, 1000u);
    EXPECT_NEAR(r.accuracy, 0.5, 3 * testing::binomial_sigma(0.5, 1000));
}

TEST(ChannelAccuracy, SinglePairBlocksMatchZeroProbabilityPlusHalfAbstain) {
    auto config = illegal_config(6, 20000, 13);
    config.pairs_per_bit = 1;
    auto r = run_protocol(config);
    std::vector<PairRecord> zeros(r.stream.begin(), r.stream.begin() + 20000);
    auto report = channel_accuracy(zeros, 1, 3);
    double expect = r.stats.a1.p0 + r.stats.a1.abstain / 2;
    double sigma = testing::binomial_sigma(0.5, 20000);
    EXPECT_NEAR(report.accuracy, expect, 3 * sigma);
}

TEST(SendMessage, IllegalDecodesLegalDoesNot) {
    std::vector<int> bits;
    std::mt19937_64 gen(107);
    for (int k = 0; k < 40; k++) {
        bits.push_back(static_cast<int>(gen() & 1));
    }
    auto config = illegal_config(48, 1, 14, 2);
    auto r = send_message(config, bits);
    EXPECT_EQ(r.blocks, 40u);
    EXPECT_GE(r.accuracy, 0.99);
    std::vector<int> bad{0, 2};
    EXPECT_THROW(send_message(config, bad), ConfigError);
}

TEST(Certificate, Examples) {
    std::vector<Ket> bell{Ket::basis(2, 0), Ket::basis(2, 1)};
    EXPECT_LE(analytic_no_signal_certificate(bell, AliceBasis::computational(2), AliceBasis::fourier(2)), 1e-12);
    std::mt19937_64 gen(108);
    auto bobs = testing::random_kets(3, 3, gen);
    EXPECT_LE(analytic_no_signal_certificate(bobs, AliceBasis::computational(3), AliceBasis::fourier(3)), 1e-12);
    auto alt = target_to_basis(testing::random_ket(3, gen), bobs);
    EXPECT_LE(analytic_no_signal_certificate(bobs, AliceBasis::fourier(3), alt), 1e-12);
    EXPECT_THROW(analytic_no_signal_certificate(bobs, AliceBasis::computational(2), alt), Error);
}

}  // namespace
}  // namespace pqcm
