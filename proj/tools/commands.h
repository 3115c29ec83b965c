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

#ifndef PQCM_TOOLS_COMMANDS_H
#define PQCM_TOOLS_COMMANDS_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "report.h"
#include "run_config.h"

namespace pqcm::cli {

inline constexpr int EXIT_OK = 0;
inline constexpr int EXIT_ERROR = 1;
inline constexpr int EXIT_INFEASIBLE = 2;

struct FeasibilityArgs {
    std::string states_file;
    size_t copies = 2;
    /// One value (uniform) or one per state.
    std::vector<double> gammas;
    bool max_uniform = false;
    double tol = 1e-9;
    std::string format = "json";
    std::string out;
};

struct ConstructArgs {
    std::string states_file;
    size_t copies = 2;
    std::vector<double> gammas;
    std::string format = "json";
    std::string out;
};

struct SignalTestArgs {
    std::string config_file;
    std::optional<uint64_t> seed;
    std::optional<uint64_t> trials;
    std::optional<size_t> mu;
    std::optional<size_t> pairs_per_bit;
    std::optional<std::string> format;
    std::optional<std::string> out;
};

/// Each command writes its report and returns the process exit code.
/// Library errors propagate; main() maps them to EXIT_ERROR.
int cmd_feasibility(const FeasibilityArgs &args, std::ostream &log);
int cmd_construct(const ConstructArgs &args, std::ostream &log);
int cmd_signal_test(const SignalTestArgs &args, std::ostream &log);

/// Report builders, exposed for tests.
Report signal_report(const RunConfig &config, const ProtocolResult &result);

int run_cli(int argc, char **argv);

}  // namespace pqcm::cli

#endif
