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

#include "report.h"

#include <fstream>
#include <iostream>

#include <fmt/format.h>

#include "pqcm/errors.h"

namespace pqcm::cli {

namespace {

std::string csv_cell(const Cell &cell) {
    return std::visit(
        [](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::string>) {
                if (v.find_first_of(",\"\n") == std::string::npos) {
                    return v;
                }
                std::string quoted = "\"";
                for (char c : v) {
                    if (c == '"') {
                        quoted += '"';
                    }
                    quoted += c;
                }
                return quoted + "\"";
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return fmt::format("{}", v);
            }
        },
        cell);
}

}  // namespace

void Section::add_row(std::vector<Cell> row) {
    if (row.size() != headers.size()) {
        throw std::logic_error(fmt::format("section {}: row has {} cells for {} headers", name, row.size(), headers.size()));
    }
    rows.push_back(std::move(row));
}

Section &Report::add_section(std::string name, std::vector<std::string> headers) {
    sections.push_back({std::move(name), std::move(headers), {}});
    return sections.back();
}

const Section *Report::find(const std::string &name) const {
    for (const auto &s : sections) {
        if (s.name == name) {
            return &s;
        }
    }
    return nullptr;
}

Format parse_format(const std::string &name) {
    if (name == "json") {
        return Format::Json;
    }
    if (name == "csv") {
        return Format::Csv;
    }
    throw ConfigError("unknown format '" + name + "' (expected csv or json)");
}

nlohmann::ordered_json to_json(const Report &report) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const auto &section : report.sections) {
        auto rows = nlohmann::ordered_json::array();
        for (const auto &row : section.rows) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (size_t k = 0; k < row.size(); k++) {
                std::visit([&](const auto &v) { obj[section.headers[k]] = v; }, row[k]);
            }
            rows.push_back(std::move(obj));
        }
        doc[section.name] = std::move(rows);
    }
    return doc;
}

std::string to_csv(const Report &report) {
    std::string out;
    for (const auto &section : report.sections) {
        out += "# " + section.name + "\n";
        for (size_t k = 0; k < section.headers.size(); k++) {
            out += (k ? "," : "") + section.headers[k];
        }
        out += "\n";
        for (const auto &row : section.rows) {
            for (size_t k = 0; k < row.size(); k++) {
                out += (k ? "," : "") + csv_cell(row[k]);
            }
            out += "\n";
        }
        out += "\n";
    }
    return out;
}

std::string render(const Report &report, Format format) {
    if (format == Format::Json) {
        return to_json(report).dump(2) + "\n";
    }
    return to_csv(report);
}

void write_output(const std::string &text, const std::string &path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open output file " + path);
    }
    out << text;
    if (!out) {
        throw ConfigError("failed writing " + path);
    }
}

}  // namespace pqcm::cli
