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

#ifndef PQCM_TOOLS_STATES_FILE_H
#define PQCM_TOOLS_STATES_FILE_H

#include <istream>
#include <string>
#include <vector>

#include "pqcm/qcore.h"

namespace pqcm::cli {

/// Raised for malformed input files; the message carries "<source>:<line>:".
class ParseError : public Error {
   public:
    using Error::Error;
};

/// Raw amplitudes exactly as written, before normalization.
struct StateList {
    size_t dim = 0;
    std::vector<std::vector<Complex>> vectors;

    bool operator==(const StateList &) const = default;
};

/// Plain-text state list:
///
///     # comments run to end of line
///     2                 first record: the dimension
///     1 0   0 0         then one state per line, re/im interleaved
///     0.5 0 0.866 0
///
/// Blank lines are ignored. Every state needs 2 * dim numbers.
StateList parse_states(std::istream &in, const std::string &source = "<input>");
StateList load_states_file(const std::string &path);
std::string format_states(const StateList &states);

/// Normalizes each vector. Throws DimensionError on a zero vector.
std::vector<Ket> to_kets(const StateList &states);

}  // namespace pqcm::cli

#endif
