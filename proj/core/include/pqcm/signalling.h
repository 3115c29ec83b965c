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

#ifndef PQCM_SIGNALLING_H
#define PQCM_SIGNALLING_H

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "pqcm/cloning.h"
#include "pqcm/entangle.h"

namespace pqcm {

/// Bob's classification of one batch of clones: a column 1..N+1 of the tally
/// table, or the phi column.
class Column {
   public:
    static Column phi() {
        return Column(0);
    }
    static Column of(size_t label);

    bool is_phi() const noexcept {
        return value_ == 0;
    }
    /// 1-based column label; 0 for phi.
    size_t label() const noexcept {
        return value_;
    }
    bool operator==(const Column &) const = default;

   private:
    explicit Column(size_t v) : value_(v) {
    }
    size_t value_;
};

enum class Guess { Zero, One, Abstain };

/// Sizes of the verification groups: floor(mu / groups) each, with the first
/// mu mod groups groups one larger.
std::vector<size_t> group_sizes(size_t mu, size_t groups);

/// Splits the mu clones into one group per candidate and projects every clone
/// of group l onto |candidates[l]>. The result is column l+1 when group l is
/// the only group whose clones all pass, and phi otherwise.
///
/// Exact copies are measured clone by clone. Superposed copies are measured
/// group by group using the exact conditional Born probabilities of the
/// superposition. Orthogonal junk fails every projection.
Column group_verify(const CloneOutput &clones, std::span<const Ket> candidates, size_t mu, SeededRng &rng);

/// Columns 1..N guess 0, column N+1 guesses 1, phi abstains.
Guess guess_rule(Column column, size_t n);

/// For exact copies of `state`, the probability of each column (index 0..G-1
/// for columns 1..G, index G for phi), from the independent-group product
/// formula.
std::vector<double> exact_copy_column_distribution(const Ket &state, std::span<const Ket> candidates, size_t mu);

/// Largest probability that exact copies of candidate k are not placed in
/// column k, over all candidates.
double finite_mu_leakage(std::span<const Ket> candidates, size_t mu);

/// Counts of classified success events. Rows are input labels 1..2N, columns
/// are 1..N+1 followed by phi.
class TallyTable {
   public:
    explicit TallyTable(size_t n);

    size_t n() const noexcept {
        return n_;
    }
    size_t rows() const noexcept {
        return 2 * n_;
    }
    size_t columns() const noexcept {
        return n_ + 2;
    }
    void add(size_t row_label, Column column, uint64_t count = 1);
    uint64_t at(size_t row_label, Column column) const;
    uint64_t row_sum(size_t row_label) const;
    uint64_t total() const;
    void merge(const TallyTable &other);
    bool operator==(const TallyTable &) const = default;

   private:
    size_t slot(size_t row_label, Column column) const;
    size_t n_;
    std::vector<uint64_t> counts_;
};

/// Estimates conditioned on a reported clone success, for one Alice setting.
struct SettingStats {
    uint64_t pairs = 0;
    uint64_t successes = 0;
    double discard_rate = 0;
    /// P(column | A_i) for columns 1..N+1 then phi.
    std::vector<double> p_col;
    std::vector<double> p_col_stderr;
    double p0 = 0;
    double p0_stderr = 0;
    double p1 = 0;
    double p1_stderr = 0;
    double abstain = 0;
};

struct SignalStats {
    SettingStats a1;
    SettingStats a2;
    /// p1(A2) - p1(A1) and its combined standard error.
    double p1_gap = 0;
    double p1_gap_stderr = 0;
    double accuracy = 0;
    uint64_t accuracy_blocks = 0;
    uint64_t coin_flip_blocks = 0;
    double leakage = 0;
    double certificate = 0;
};

using ClonerChoice = std::variant<PqcmMachine, IllegalClonerSpec>;

struct ProtocolConfig {
    std::vector<Ket> bob_states;
    AliceBasis a2_basis;
    size_t mu = 48;
    uint64_t trials = 100000;
    size_t pairs_per_bit = 200;
    ClonerChoice cloner;
    uint64_t seed = 0;
    /// 0 picks std::thread::hardware_concurrency().
    size_t threads = 1;
};

/// Throws ConfigError unless mu >= N+1, trials >= 1, pairs_per_bit >= 1 and
/// the cloner matches N.
void validate(const ProtocolConfig &config);

/// The states |B_1> ... |B_2N>: Bob's states followed by the A2-induced ones.
std::vector<Ket> all_prepared_states(const SharedState &shared, const AliceBasis &a2_basis);

struct PairRecord {
    int sent_bit;
    Guess guess;
};

struct ProtocolResult {
    TallyTable tally;
    SignalStats stats;
    /// Per-pair guesses, A1 (bit 0) trials first, then A2 (bit 1).
    std::vector<PairRecord> stream;
};

/// Runs `trials` pairs for each of Alice's settings, clones Bob's half,
/// discards failures and classifies the rest. Trial t of setting s draws from
/// SeededRng(seed, s * trials + t), so the result does not depend on the
/// thread count.
ProtocolResult run_protocol(const ProtocolConfig &config);

struct ChannelReport {
    double accuracy = 0;
    uint64_t blocks = 0;
    uint64_t correct_blocks = 0;
    /// Blocks decided by a coin flip (tie or all-abstain).
    uint64_t coin_flip_blocks = 0;
};

/// Majority vote over the non-abstaining guesses of each consecutive block of
/// pairs_per_bit records. Ties are broken by a fair coin drawn from `seed`.
ChannelReport channel_accuracy(std::span<const PairRecord> stream, size_t pairs_per_bit, uint64_t seed);

/// Sends `bits` one block of pairs_per_bit pairs at a time and decodes them.
ChannelReport send_message(const ProtocolConfig &config, std::span<const int> bits);

/// Trace distance between the Alice-averaged Bob states for two bases.
double analytic_no_signal_certificate(std::span<const Ket> bob_states, const AliceBasis &basis_a, const AliceBasis &basis_b);

}  // namespace pqcm

#endif
