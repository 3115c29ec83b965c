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

#include "states_file.h"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace pqcm::cli {

namespace {

std::vector<double> parse_numbers(const std::string &line, const std::string &where) {
    std::vector<double> out;
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
        size_t used = 0;
        double v;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != token.size()) {
            throw ParseError(fmt::format("{}: '{}' is not a number", where, token));
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace

StateList parse_states(std::istream &in, const std::string &source) {
    StateList out;
    std::string line;
    size_t line_no = 0;
    bool have_dim = false;
    while (std::getline(in, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::string where = fmt::format("{}:{}", source, line_no);
        auto numbers = parse_numbers(line, where);
        if (numbers.empty()) {
            continue;
        }
        if (!have_dim) {
            if (numbers.size() != 1 || numbers[0] < 1 || numbers[0] != static_cast<double>(static_cast<size_t>(numbers[0]))) {
                throw ParseError(fmt::format("{}: expected a single positive integer dimension", where));
            }
            out.dim = static_cast<size_t>(numbers[0]);
            have_dim = true;
            continue;
        }
        if (numbers.size() != 2 * out.dim) {
            throw ParseError(fmt::format(
                "{}: expected {} numbers (re/im pairs for dim {}), got {}", where, 2 * out.dim, out.dim, numbers.size()));
        }
        std::vector<Complex> amps(out.dim);
        for (size_t k = 0; k < out.dim; k++) {
            amps[k] = Complex(numbers[2 * k], numbers[2 * k + 1]);
        }
        out.vectors.push_back(std::move(amps));
    }
    if (!have_dim) {
        throw ParseError(fmt::format("{}:{}: missing dimension record", source, line_no));
    }
    if (out.vectors.empty()) {
        throw ParseError(fmt::format("{}:{}: no states listed", source, line_no));
    }
    return out;
}

StateList load_states_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(fmt::format("{}: cannot open file", path));
    }
    return parse_states(in, path);
}

std::string format_states(const StateList &states) {
    std::string out = fmt::format("{}\n", states.dim);
    for (const auto &v : states.vectors) {
        for (size_t k = 0; k < v.size(); k++) {
            out += fmt::format("{}{} {}", k == 0 ? "" : "  ", v[k].real(), v[k].imag());
        }
        out += "\n";
    }
    return out;
}

std::vector<Ket> to_kets(const StateList &states) {
    std::vector<Ket> out;
    out.reserve(states.vectors.size());
    for (const auto &v : states.vectors) {
        Vector amps(static_cast<Eigen::Index>(v.size()));
        for (size_t k = 0; k < v.size(); k++) {
            amps[static_cast<Eigen::Index>(k)] = v[k];
        }
        out.push_back(Ket::normalized(std::move(amps)));
    }
    return out;
}

}  // namespace pqcm::cli
