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

#ifndef PQCM_TOOLS_REPORT_H
#define PQCM_TOOLS_REPORT_H

#include <cstdint>
#include <deque>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace pqcm::cli {

using Cell = std::variant<int64_t, uint64_t, double, bool, std::string>;

/// One named table. Every row has one cell per header.
struct Section {
    std::string name;
    std::vector<std::string> headers;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

/// Ordered list of tables emitted as one CSV or JSON document. Both
/// emitters print numbers in shortest round-trip form, so the two formats
/// carry identical values.
struct Report {
    // deque so references from add_section survive later additions
    std::deque<Section> sections;

    Section &add_section(std::string name, std::vector<std::string> headers);
    const Section *find(const std::string &name) const;
};

enum class Format { Json, Csv };

Format parse_format(const std::string &name);

/// {"section": [{"header": value, ...}, ...], ...}
nlohmann::ordered_json to_json(const Report &report);

/// Sections as "# name", a header line, the rows, then a blank line.
std::string to_csv(const Report &report);

std::string render(const Report &report, Format format);

/// Writes to `path`, or to stdout when path is empty or "-".
void write_output(const std::string &text, const std::string &path);

}  // namespace pqcm::cli

#endif
