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

#ifndef PQCM_TOOLS_RUN_CONFIG_H
#define PQCM_TOOLS_RUN_CONFIG_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "pqcm/signalling.h"
#include "states_file.h"

namespace pqcm::cli {

enum class A2Kind { Fourier, Target, Basis };

/// How Alice's second measurement is chosen.
struct A2Choice {
    A2Kind kind = A2Kind::Fourier;
    std::vector<Complex> target;               // kind == Target
    std::vector<std::vector<Complex>> vectors;  // kind == Basis

    bool operator==(const A2Choice &) const = default;
};

/// A physical 1 -> 2 cloner of Bob's N states, amplified to mu copies.
struct LegalChoice {
    /// Uniform efficiency; empty means the largest feasible one.
    std::optional<double> gamma;

    bool operator==(const LegalChoice &) const = default;
};

struct IllegalChoice {
    std::vector<size_t> clonable_labels;
    /// Branch coefficients for unclonable labels; missing labels use d = 1.
    std::map<size_t, BranchCoefficients> unclonable_output;

    bool operator==(const IllegalChoice &) const = default;
};

/// Everything `pqcm signal-test` needs. Stored on disk as JSON; see
/// configs/ for examples.
struct RunConfig {
    /// Inline states. Ignored when states_file is set.
    StateList states;
    std::string states_file;
    A2Choice a2;
    std::variant<LegalChoice, IllegalChoice> cloner;
    size_t mu = 48;
    uint64_t trials = 100000;
    size_t pairs_per_bit = 200;
    uint64_t seed = 0;
    std::string format = "json";
    std::string out;

    bool operator==(const RunConfig &) const = default;
};

nlohmann::ordered_json to_json(const RunConfig &config);
/// Throws ConfigError naming the offending key.
RunConfig run_config_from_json(const nlohmann::json &doc);
RunConfig load_run_config(const std::string &path);

/// Resolves files, bases and the cloner into a runnable protocol config.
/// Relative states_file paths are taken relative to `base_dir`.
ProtocolConfig to_protocol_config(const RunConfig &config, size_t threads, const std::string &base_dir = "");

/// Thread count from PQCM_THREADS, or hardware concurrency when unset.
size_t threads_from_env();

}  // namespace pqcm::cli

#endif
