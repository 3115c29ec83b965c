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

#include "pqcm/signalling.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace pqcm {

namespace {

Eigen::Index idx(size_t k) {
    return static_cast<Eigen::Index>(k);
}

Complex int_pow(Complex z, size_t power) {
    Complex out = 1.0;
    for (size_t k = 0; k < power; k++) {
        out *= z;
    }
    return out;
}

constexpr uint64_t CHANNEL_SALT = 0x6368616e6e656c31ULL;
constexpr uint64_t COIN_SALT = 0x636f696e666c6970ULL;

template <typename Fn>
void parallel_for(size_t count, size_t threads, Fn &&fn) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (size_t i = 0; i < count; i++) {
            fn(i);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(threads);
    size_t chunk = (count + threads - 1) / threads;
    for (size_t w = 0; w < threads; w++) {
        size_t begin = w * chunk;
        size_t end = std::min(count, begin + chunk);
        workers.emplace_back([&, begin, end] {
            try {
                for (size_t i = begin; i < end; i++) {
                    fn(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto &w : workers) {
        w.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

Column classify(const std::vector<bool> &all_pass) {
    size_t passing = 0;
    size_t which = 0;
    for (size_t l = 0; l < all_pass.size(); l++) {
        if (all_pass[l]) {
            passing++;
            which = l;
        }
    }
    return passing == 1 ? Column::of(which + 1) : Column::phi();
}

Column verify_exact(const ExactCopies &copies, std::span<const Ket> candidates, const std::vector<size_t> &sizes, SeededRng &rng) {
    std::vector<bool> all_pass(candidates.size(), true);
    for (size_t l = 0; l < candidates.size(); l++) {
        double p = std::norm(inner_product(candidates[l], copies.state));
        for (size_t c = 0; c < sizes[l]; c++) {
            if (!rng.bernoulli(p)) {
                all_pass[l] = false;
            }
        }
    }
    return classify(all_pass);
}

// Sequential group-level Born sampling of sum_i a_i |s_i>^{(x) mu}. With R the
// outer product of the coefficients and W the running product of per-group
// factors, the probability of the outcomes seen so far is
// sum_ij R_ij W_ij G_ij^r, where r counts unmeasured clones.
Column verify_superposed(const SuperposedCopies &copies, std::span<const Ket> candidates, const std::vector<size_t> &sizes, SeededRng &rng) {
    size_t k = copies.states.size();
    Matrix gram = gram_matrix(copies.states).matrix();
    const Vector &a = copies.coefficients;
    Matrix weight(idx(k), idx(k));
    for (size_t i = 0; i < k; i++) {
        for (size_t j = 0; j < k; j++) {
            weight(idx(i), idx(j)) = std::conj(a[idx(i)]) * a[idx(j)];
        }
    }
    auto mass = [&](const Matrix &w, size_t remaining) {
        Complex total = 0;
        for (size_t i = 0; i < k; i++) {
            for (size_t j = 0; j < k; j++) {
                total += w(idx(i), idx(j)) * int_pow(gram(idx(i), idx(j)), remaining);
            }
        }
        return total.real();
    };

    size_t remaining = copies.multiplicity;
    double current = mass(weight, remaining);
    std::vector<bool> all_pass(candidates.size(), false);
    for (size_t l = 0; l < candidates.size(); l++) {
        size_t g = sizes[l];
        remaining -= g;
        Vector overlaps(idx(k));
        for (size_t i = 0; i < k; i++) {
            overlaps[idx(i)] = inner_product(candidates[l], copies.states[i]);
        }
        Matrix pass(idx(k), idx(k));
        Matrix fail(idx(k), idx(k));
        for (size_t i = 0; i < k; i++) {
            for (size_t j = 0; j < k; j++) {
                Complex f = int_pow(std::conj(overlaps[idx(i)]) * overlaps[idx(j)], g);
                pass(idx(i), idx(j)) = f;
                fail(idx(i), idx(j)) = int_pow(gram(idx(i), idx(j)), g) - f;
            }
        }
        Matrix with_pass = weight.cwiseProduct(pass);
        double passed = std::max(mass(with_pass, remaining), 0.0);
        double p = current > 0 ? std::clamp(passed / current, 0.0, 1.0) : 0.0;
        if (rng.bernoulli(p)) {
            all_pass[l] = true;
            weight = std::move(with_pass);
            current = passed;
        } else {
            weight = weight.cwiseProduct(fail);
            current = std::max(current - passed, 0.0);
        }
    }
    return classify(all_pass);
}

void finish_setting(SettingStats &s, const TallyTable &tally, size_t n, size_t first_row, uint64_t pairs) {
    s.pairs = pairs;
    uint64_t successes = 0;
    std::vector<uint64_t> counts(n + 2, 0);
    for (size_t r = first_row; r < first_row + n; r++) {
        for (size_t c = 1; c <= n + 1; c++) {
            counts[c - 1] += tally.at(r, Column::of(c));
        }
        counts[n + 1] += tally.at(r, Column::phi());
        successes += tally.row_sum(r);
    }
    s.successes = successes;
    s.discard_rate = pairs > 0 ? static_cast<double>(pairs - successes) / static_cast<double>(pairs) : 0.0;
    if (successes == 0) {
        throw Error("no successful clone events for one Alice setting; increase trials");
    }
    double total = static_cast<double>(successes);
    auto stderr_of = [&](double p) {
        return std::sqrt(std::max(p * (1 - p), 0.0) / total);
    };
    s.p_col.assign(n + 2, 0.0);
    s.p_col_stderr.assign(n + 2, 0.0);
    for (size_t c = 0; c < n + 2; c++) {
        s.p_col[c] = static_cast<double>(counts[c]) / total;
        s.p_col_stderr[c] = stderr_of(s.p_col[c]);
    }
    uint64_t zero_count = 0;
    for (size_t c = 0; c < n; c++) {
        zero_count += counts[c];
    }
    s.p0 = static_cast<double>(zero_count) / total;
    s.p0_stderr = stderr_of(s.p0);
    s.p1 = s.p_col[n];
    s.p1_stderr = s.p_col_stderr[n];
    s.abstain = s.p_col[n + 1];
}

struct TrialOutcome {
    size_t row_label = 0;
    bool success = false;
    Column column = Column::phi();
};

struct PreparedRun {
    const ProtocolConfig &config;
    SharedState shared;
    AliceBasis a1;
    std::vector<Ket> all_states;
    std::vector<Ket> candidates;
};

PreparedRun prepare(const ProtocolConfig &config) {
    validate(config);
    auto shared = build_shared_state(config.bob_states);
    size_t n = shared.alice_dim();
    auto all_states = all_prepared_states(shared, config.a2_basis);
    std::vector<Ket> candidates(all_states.begin(), all_states.begin() + static_cast<std::ptrdiff_t>(n + 1));
    return {config, std::move(shared), AliceBasis::computational(n), std::move(all_states), std::move(candidates)};
}

TrialOutcome run_trial(const PreparedRun &run, int setting, SeededRng &rng) {
    size_t n = run.shared.alice_dim();
    const AliceBasis &basis = setting == 0 ? run.a1 : run.config.a2_basis;
    auto alice = alice_measure(run.shared, basis, rng);
    TrialOutcome out;
    out.row_label = (setting == 0 ? 0 : n) + alice.outcome + 1;
    CloneOutput clones = std::visit(
        [&](const auto &cloner) -> CloneOutput {
            using T = std::decay_t<decltype(cloner)>;
            if constexpr (std::is_same_v<T, PqcmMachine>) {
                return amplify_superposed(cloner, alice.post_state, run.config.mu, rng);
            } else {
                return illegal_clone(cloner, out.row_label, run.all_states, rng);
            }
        },
        run.config.cloner);
    if (!clones.success) {
        return out;
    }
    out.success = true;
    out.column = group_verify(clones, run.candidates, run.config.mu, rng);
    return out;
}

}  // namespace

Column Column::of(size_t label) {
    if (label == 0) {
        throw LabelError("column labels start at 1");
    }
    return Column(label);
}

std::vector<size_t> group_sizes(size_t mu, size_t groups) {
    if (groups == 0 || mu < groups) {
        throw ConfigError(
            "cannot split " + std::to_string(mu) + " clones into " + std::to_string(groups) + " nonempty groups");
    }
    std::vector<size_t> sizes(groups, mu / groups);
    for (size_t l = 0; l < mu % groups; l++) {
        sizes[l]++;
    }
    return sizes;
}

Column group_verify(const CloneOutput &clones, std::span<const Ket> candidates, size_t mu, SeededRng &rng) {
    if (candidates.empty()) {
        throw EmptyInputError("group_verify: no candidate states");
    }
    auto sizes = group_sizes(mu, candidates.size());
    return std::visit(
        [&](const auto &payload) -> Column {
            using T = std::decay_t<decltype(payload)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                throw ConfigError("group_verify: clone output carries no state");
            } else if constexpr (std::is_same_v<T, OrthogonalJunk>) {
                return Column::phi();
            } else {
                if (payload.multiplicity != mu) {
                    throw ConfigError(
                        "group_verify: got " + std::to_string(payload.multiplicity) + " clones, expected " +
                        std::to_string(mu));
                }
                if constexpr (std::is_same_v<T, ExactCopies>) {
                    return verify_exact(payload, candidates, sizes, rng);
                } else {
                    return verify_superposed(payload, candidates, sizes, rng);
                }
            }
        },
        clones.payload);
}

Guess guess_rule(Column column, size_t n) {
    if (column.is_phi()) {
        return Guess::Abstain;
    }
    if (column.label() <= n) {
        return Guess::Zero;
    }
    if (column.label() == n + 1) {
        return Guess::One;
    }
    throw LabelError("column " + std::to_string(column.label()) + " does not exist for N = " + std::to_string(n));
}

std::vector<double> exact_copy_column_distribution(const Ket &state, std::span<const Ket> candidates, size_t mu) {
    auto sizes = group_sizes(mu, candidates.size());
    size_t groups = candidates.size();
    std::vector<double> pass(groups);
    for (size_t l = 0; l < groups; l++) {
        pass[l] = std::pow(std::norm(inner_product(candidates[l], state)), static_cast<double>(sizes[l]));
    }
    std::vector<double> out(groups + 1, 0.0);
    double single = 0;
    for (size_t l = 0; l < groups; l++) {
        double p = pass[l];
        for (size_t j = 0; j < groups; j++) {
            if (j != l) {
                p *= 1 - pass[j];
            }
        }
        out[l] = p;
        single += p;
    }
    out[groups] = std::max(0.0, 1 - single);
    return out;
}

double finite_mu_leakage(std::span<const Ket> candidates, size_t mu) {
    double worst = 0;
    for (size_t k = 0; k < candidates.size(); k++) {
        auto dist = exact_copy_column_distribution(candidates[k], candidates, mu);
        worst = std::max(worst, 1 - dist[k]);
    }
    return worst;
}

TallyTable::TallyTable(size_t n) : n_(n), counts_(2 * n * (n + 2), 0) {
    if (n == 0) {
        throw ConfigError("TallyTable needs N >= 1");
    }
}

size_t TallyTable::slot(size_t row_label, Column column) const {
    if (row_label < 1 || row_label > rows()) {
        throw LabelError("tally row " + std::to_string(row_label) + " outside 1.." + std::to_string(rows()));
    }
    size_t col = column.is_phi() ? n_ + 1 : column.label() - 1;
    if (!column.is_phi() && col > n_) {
        throw LabelError("tally column " + std::to_string(column.label()) + " outside 1.." + std::to_string(n_ + 1));
    }
    return (row_label - 1) * columns() + col;
}

void TallyTable::add(size_t row_label, Column column, uint64_t count) {
    counts_[slot(row_label, column)] += count;
}

uint64_t TallyTable::at(size_t row_label, Column column) const {
    return counts_[slot(row_label, column)];
}

uint64_t TallyTable::row_sum(size_t row_label) const {
    uint64_t total = 0;
    size_t base = slot(row_label, Column::of(1));
    for (size_t c = 0; c < columns(); c++) {
        total += counts_[base + c];
    }
    return total;
}

uint64_t TallyTable::total() const {
    uint64_t total = 0;
    for (auto c : counts_) {
        total += c;
    }
    return total;
}

void TallyTable::merge(const TallyTable &other) {
    if (other.n_ != n_) {
        throw DimensionError("TallyTable::merge: tables have different N");
    }
    for (size_t k = 0; k < counts_.size(); k++) {
        counts_[k] += other.counts_[k];
    }
}

void validate(const ProtocolConfig &config) {
    size_t n = config.bob_states.size();
    if (n < 2) {
        throw ConfigError("protocol needs N >= 2 Bob states");
    }
    if (config.a2_basis.dim() != n) {
        throw ConfigError("A2 basis dimension does not match N");
    }
    if (config.mu < n + 1) {
        throw ConfigError("mu = " + std::to_string(config.mu) + " leaves a verification group empty; need mu >= N+1 = " + std::to_string(n + 1));
    }
    if (config.trials < 1) {
        throw ConfigError("trials must be at least 1");
    }
    if (config.pairs_per_bit < 1) {
        throw ConfigError("pairs_per_bit must be at least 1");
    }
    std::visit(
        [&](const auto &cloner) {
            using T = std::decay_t<decltype(cloner)>;
            if constexpr (std::is_same_v<T, PqcmMachine>) {
                if (cloner.copies() != 2) {
                    throw ConfigError("the protocol amplifies with a 1 -> 2 machine; got M = " + std::to_string(cloner.copies()));
                }
                if (cloner.input_dim() != n) {
                    throw ConfigError("machine input dimension does not match N");
                }
            } else {
                if (cloner.n() != n) {
                    throw ConfigError("illegal cloner was built for a different N");
                }
                if (cloner.copies() != config.mu) {
                    throw ConfigError("illegal cloner copy count differs from mu");
                }
            }
        },
        config.cloner);
}

std::vector<Ket> all_prepared_states(const SharedState &shared, const AliceBasis &a2_basis) {
    std::vector<Ket> out(shared.bob_states());
    auto induced = induced_ensemble(shared, a2_basis);
    for (const auto &m : induced.members()) {
        out.push_back(m.state);
    }
    return out;
}

ProtocolResult run_protocol(const ProtocolConfig &config) {
    auto run = prepare(config);
    size_t n = run.shared.alice_dim();
    uint64_t trials = config.trials;

    std::vector<TrialOutcome> outcomes(2 * trials);
    parallel_for(outcomes.size(), config.threads, [&](size_t i) {
        int setting = i < trials ? 0 : 1;
        SeededRng rng(config.seed, i);
        outcomes[i] = run_trial(run, setting, rng);
    });

    ProtocolResult result{TallyTable(n), SignalStats{}, {}};
    result.stream.reserve(outcomes.size());
    for (size_t i = 0; i < outcomes.size(); i++) {
        const auto &o = outcomes[i];
        int bit = i < trials ? 0 : 1;
        if (o.success) {
            result.tally.add(o.row_label, o.column);
            result.stream.push_back({bit, guess_rule(o.column, n)});
        } else {
            result.stream.push_back({bit, Guess::Abstain});
        }
    }

    auto &stats = result.stats;
    finish_setting(stats.a1, result.tally, n, 1, trials);
    finish_setting(stats.a2, result.tally, n, n + 1, trials);
    stats.p1_gap = stats.a2.p1 - stats.a1.p1;
    stats.p1_gap_stderr = std::hypot(stats.a1.p1_stderr, stats.a2.p1_stderr);

    size_t ppb = config.pairs_per_bit;
    size_t whole = (trials / ppb) * ppb;
    if (whole > 0) {
        std::vector<PairRecord> blocks;
        blocks.reserve(2 * whole);
        blocks.insert(blocks.end(), result.stream.begin(), result.stream.begin() + static_cast<std::ptrdiff_t>(whole));
        blocks.insert(
            blocks.end(),
            result.stream.begin() + static_cast<std::ptrdiff_t>(trials),
            result.stream.begin() + static_cast<std::ptrdiff_t>(trials + whole));
        auto channel = channel_accuracy(blocks, ppb, config.seed);
        stats.accuracy = channel.accuracy;
        stats.accuracy_blocks = channel.blocks;
        stats.coin_flip_blocks = channel.coin_flip_blocks;
    }
    stats.leakage = finite_mu_leakage(run.candidates, config.mu);
    stats.certificate = analytic_no_signal_certificate(config.bob_states, run.a1, config.a2_basis);
    return result;
}

ChannelReport channel_accuracy(std::span<const PairRecord> stream, size_t pairs_per_bit, uint64_t seed) {
    if (pairs_per_bit < 1) {
        throw ConfigError("pairs_per_bit must be at least 1");
    }
    if (stream.size() % pairs_per_bit != 0) {
        throw ConfigError("stream length is not a whole number of blocks");
    }
    ChannelReport report;
    report.blocks = stream.size() / pairs_per_bit;
    for (uint64_t b = 0; b < report.blocks; b++) {
        auto block = stream.subspan(b * pairs_per_bit, pairs_per_bit);
        int sent = block.front().sent_bit;
        size_t zeros = 0;
        size_t ones = 0;
        for (const auto &rec : block) {
            if (rec.sent_bit != sent) {
                throw ConfigError("block " + std::to_string(b) + " mixes sent bits");
            }
            zeros += rec.guess == Guess::Zero;
            ones += rec.guess == Guess::One;
        }
        int decoded;
        if (zeros == ones) {
            SeededRng coin(seed ^ COIN_SALT, b);
            decoded = coin.bernoulli(0.5) ? 1 : 0;
            report.coin_flip_blocks++;
        } else {
            decoded = ones > zeros ? 1 : 0;
        }
        report.correct_blocks += decoded == sent;
    }
    report.accuracy = report.blocks > 0 ? static_cast<double>(report.correct_blocks) / static_cast<double>(report.blocks) : 0.0;
    return report;
}

ChannelReport send_message(const ProtocolConfig &config, std::span<const int> bits) {
    auto run = prepare(config);
    size_t n = run.shared.alice_dim();
    size_t ppb = config.pairs_per_bit;
    for (int b : bits) {
        if (b != 0 && b != 1) {
            throw ConfigError("message bits must be 0 or 1");
        }
    }
    std::vector<PairRecord> stream(bits.size() * ppb);
    uint64_t channel_seed = mix64(config.seed ^ CHANNEL_SALT);
    parallel_for(stream.size(), config.threads, [&](size_t i) {
        int bit = bits[i / ppb];
        SeededRng rng(channel_seed, i);
        auto o = run_trial(run, bit, rng);
        stream[i] = {bit, o.success ? guess_rule(o.column, n) : Guess::Abstain};
    });
    return channel_accuracy(stream, ppb, channel_seed);
}

double analytic_no_signal_certificate(std::span<const Ket> bob_states, const AliceBasis &basis_a, const AliceBasis &basis_b) {
    auto shared = build_shared_state(std::vector<Ket>(bob_states.begin(), bob_states.end()));
    auto rho_a = induced_ensemble(shared, basis_a).density_matrix();
    auto rho_b = induced_ensemble(shared, basis_b).density_matrix();
    return trace_distance(rho_a, rho_b);
}

}  // namespace pqcm
