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

#include "run_config.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include <fmt/format.h>

namespace pqcm::cli {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

OrderedJson complex_to_json(Complex z) {
    return OrderedJson::array({z.real(), z.imag()});
}

OrderedJson interleaved_to_json(const std::vector<Complex> &v) {
    auto out = OrderedJson::array();
    for (const auto &z : v) {
        out.push_back(z.real());
        out.push_back(z.imag());
    }
    return out;
}

[[noreturn]] void bad(const std::string &key, const std::string &why) {
    throw ConfigError(fmt::format("config key '{}': {}", key, why));
}

const Json &require(const Json &obj, const std::string &key, const std::string &path) {
    if (!obj.is_object() || !obj.contains(key)) {
        bad(path + key, "missing");
    }
    return obj.at(key);
}

void reject_unknown(const Json &obj, const std::set<std::string> &allowed, const std::string &path) {
    for (const auto &[key, _] : obj.items()) {
        if (!allowed.count(key)) {
            bad(path + key, "unknown key");
        }
    }
}

double as_double(const Json &v, const std::string &key) {
    if (!v.is_number()) {
        bad(key, "expected a number");
    }
    return v.get<double>();
}

uint64_t as_uint(const Json &v, const std::string &key) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0)) {
        bad(key, "expected a non-negative integer");
    }
    return v.get<uint64_t>();
}

std::string as_string(const Json &v, const std::string &key) {
    if (!v.is_string()) {
        bad(key, "expected a string");
    }
    return v.get<std::string>();
}

Complex complex_from_json(const Json &v, const std::string &key) {
    if (!v.is_array() || v.size() != 2) {
        bad(key, "expected [re, im]");
    }
    return {as_double(v[0], key), as_double(v[1], key)};
}

std::vector<Complex> interleaved_from_json(const Json &v, const std::string &key) {
    if (!v.is_array() || v.size() % 2 != 0 || v.empty()) {
        bad(key, "expected a nonempty list of interleaved re/im numbers");
    }
    std::vector<Complex> out(v.size() / 2);
    for (size_t k = 0; k < out.size(); k++) {
        out[k] = Complex(as_double(v[2 * k], key), as_double(v[2 * k + 1], key));
    }
    return out;
}

std::vector<Ket> vectors_to_kets(const std::vector<std::vector<Complex>> &vectors, size_t dim) {
    StateList list{dim, vectors};
    return to_kets(list);
}

}  // namespace

OrderedJson to_json(const RunConfig &config) {
    OrderedJson doc = OrderedJson::object();
    if (!config.states_file.empty()) {
        doc["states_file"] = config.states_file;
    } else {
        OrderedJson states = OrderedJson::object();
        states["dim"] = config.states.dim;
        auto vectors = OrderedJson::array();
        for (const auto &v : config.states.vectors) {
            vectors.push_back(interleaved_to_json(v));
        }
        states["vectors"] = std::move(vectors);
        doc["states"] = std::move(states);
    }

    OrderedJson a2 = OrderedJson::object();
    switch (config.a2.kind) {
        case A2Kind::Fourier:
            a2["kind"] = "fourier";
            break;
        case A2Kind::Target:
            a2["kind"] = "target";
            a2["target"] = interleaved_to_json(config.a2.target);
            break;
        case A2Kind::Basis: {
            a2["kind"] = "basis";
            auto vectors = OrderedJson::array();
            for (const auto &v : config.a2.vectors) {
                vectors.push_back(interleaved_to_json(v));
            }
            a2["vectors"] = std::move(vectors);
            break;
        }
    }
    doc["a2"] = std::move(a2);

    OrderedJson cloner = OrderedJson::object();
    if (const auto *legal = std::get_if<LegalChoice>(&config.cloner)) {
        cloner["kind"] = "legal";
        if (legal->gamma) {
            cloner["gamma"] = *legal->gamma;
        }
    } else {
        const auto &illegal = std::get<IllegalChoice>(config.cloner);
        cloner["kind"] = "illegal";
        cloner["clonable_labels"] = illegal.clonable_labels;
        auto outputs = OrderedJson::array();
        for (const auto &[label, coeffs] : illegal.unclonable_output) {
            OrderedJson entry = OrderedJson::object();
            entry["label"] = label;
            auto cs = OrderedJson::array();
            for (const auto &c : coeffs.c) {
                cs.push_back(complex_to_json(c));
            }
            entry["c"] = std::move(cs);
            entry["d"] = complex_to_json(coeffs.d);
            outputs.push_back(std::move(entry));
        }
        cloner["unclonable_output"] = std::move(outputs);
    }
    doc["cloner"] = std::move(cloner);

    doc["mu"] = config.mu;
    doc["trials"] = config.trials;
    doc["pairs_per_bit"] = config.pairs_per_bit;
    doc["seed"] = config.seed;
    doc["format"] = config.format;
    doc["out"] = config.out;
    return doc;
}

RunConfig run_config_from_json(const Json &doc) {
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    reject_unknown(
        doc, {"states", "states_file", "a2", "cloner", "mu", "trials", "pairs_per_bit", "seed", "format", "out"}, "");
    RunConfig config;

    if (doc.contains("states_file")) {
        config.states_file = as_string(doc["states_file"], "states_file");
        if (doc.contains("states")) {
            bad("states", "give either states or states_file, not both");
        }
    } else {
        const auto &states = require(doc, "states", "");
        reject_unknown(states, {"dim", "vectors"}, "states.");
        config.states.dim = as_uint(require(states, "dim", "states."), "states.dim");
        const auto &vectors = require(states, "vectors", "states.");
        if (!vectors.is_array() || vectors.empty()) {
            bad("states.vectors", "expected a nonempty list");
        }
        for (const auto &v : vectors) {
            auto amps = interleaved_from_json(v, "states.vectors");
            if (amps.size() != config.states.dim) {
                bad("states.vectors", fmt::format("vector has {} amplitudes, dim is {}", amps.size(), config.states.dim));
            }
            config.states.vectors.push_back(std::move(amps));
        }
    }

    if (doc.contains("a2")) {
        const auto &a2 = doc["a2"];
        reject_unknown(a2, {"kind", "target", "vectors"}, "a2.");
        auto kind = as_string(require(a2, "kind", "a2."), "a2.kind");
        if (kind == "fourier") {
            config.a2.kind = A2Kind::Fourier;
        } else if (kind == "target") {
            config.a2.kind = A2Kind::Target;
            config.a2.target = interleaved_from_json(require(a2, "target", "a2."), "a2.target");
        } else if (kind == "basis") {
            config.a2.kind = A2Kind::Basis;
            const auto &vectors = require(a2, "vectors", "a2.");
            if (!vectors.is_array()) {
                bad("a2.vectors", "expected a list");
            }
            for (const auto &v : vectors) {
                config.a2.vectors.push_back(interleaved_from_json(v, "a2.vectors"));
            }
        } else {
            bad("a2.kind", "expected fourier, target or basis");
        }
    }

    const auto &cloner = require(doc, "cloner", "");
    auto kind = as_string(require(cloner, "kind", "cloner."), "cloner.kind");
    if (kind == "legal") {
        reject_unknown(cloner, {"kind", "gamma"}, "cloner.");
        LegalChoice legal;
        if (cloner.contains("gamma")) {
            legal.gamma = as_double(cloner["gamma"], "cloner.gamma");
        }
        config.cloner = legal;
    } else if (kind == "illegal") {
        reject_unknown(cloner, {"kind", "clonable_labels", "unclonable_output"}, "cloner.");
        IllegalChoice illegal;
        if (cloner.contains("clonable_labels")) {
            const auto &labels = cloner["clonable_labels"];
            if (!labels.is_array()) {
                bad("cloner.clonable_labels", "expected a list");
            }
            for (const auto &l : labels) {
                illegal.clonable_labels.push_back(as_uint(l, "cloner.clonable_labels"));
            }
        }
        if (cloner.contains("unclonable_output")) {
            const auto &outputs = cloner["unclonable_output"];
            if (!outputs.is_array()) {
                bad("cloner.unclonable_output", "expected a list");
            }
            for (const auto &entry : outputs) {
                reject_unknown(entry, {"label", "c", "d"}, "cloner.unclonable_output.");
                size_t label = as_uint(require(entry, "label", "cloner.unclonable_output."), "cloner.unclonable_output.label");
                BranchCoefficients coeffs;
                const auto &cs = require(entry, "c", "cloner.unclonable_output.");
                if (!cs.is_array()) {
                    bad("cloner.unclonable_output.c", "expected a list of [re, im]");
                }
                for (const auto &c : cs) {
                    coeffs.c.push_back(complex_from_json(c, "cloner.unclonable_output.c"));
                }
                coeffs.d = complex_from_json(require(entry, "d", "cloner.unclonable_output."), "cloner.unclonable_output.d");
                if (!illegal.unclonable_output.emplace(label, std::move(coeffs)).second) {
                    bad("cloner.unclonable_output", fmt::format("label {} listed twice", label));
                }
            }
        }
        config.cloner = illegal;
    } else {
        bad("cloner.kind", "expected legal or illegal");
    }

    if (doc.contains("mu")) {
        config.mu = as_uint(doc["mu"], "mu");
    }
    if (doc.contains("trials")) {
        config.trials = as_uint(doc["trials"], "trials");
    }
    if (doc.contains("pairs_per_bit")) {
        config.pairs_per_bit = as_uint(doc["pairs_per_bit"], "pairs_per_bit");
    }
    if (doc.contains("seed")) {
        config.seed = as_uint(doc["seed"], "seed");
    }
    if (doc.contains("format")) {
        config.format = as_string(doc["format"], "format");
    }
    if (doc.contains("out")) {
        config.out = as_string(doc["out"], "out");
    }
    return config;
}

RunConfig load_run_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(path + ": cannot open file");
    }
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw ParseError(path + ": " + e.what());
    }
    return run_config_from_json(doc);
}

ProtocolConfig to_protocol_config(const RunConfig &config, size_t threads, const std::string &base_dir) {
    StateList list = config.states;
    if (!config.states_file.empty()) {
        std::filesystem::path p(config.states_file);
        if (p.is_relative() && !base_dir.empty()) {
            p = std::filesystem::path(base_dir) / p;
        }
        list = load_states_file(p.string());
    }
    auto bob_states = to_kets(list);
    size_t n = bob_states.size();
    if (n < 2 || list.dim != n) {
        throw ConfigError(fmt::format("signal-test needs N >= 2 states of dimension N; got {} states of dim {}", n, list.dim));
    }

    AliceBasis a2 = AliceBasis::fourier(n);
    switch (config.a2.kind) {
        case A2Kind::Fourier:
            break;
        case A2Kind::Target:
            a2 = target_to_basis(to_kets({list.dim, {config.a2.target}}).front(), bob_states);
            break;
        case A2Kind::Basis:
            a2 = AliceBasis::alternate(vectors_to_kets(config.a2.vectors, n));
            break;
    }

    auto cloner = std::visit(
        [&](const auto &choice) -> ClonerChoice {
            using T = std::decay_t<decltype(choice)>;
            if constexpr (std::is_same_v<T, LegalChoice>) {
                double gamma = choice.gamma ? *choice.gamma : max_uniform_gamma(bob_states, 2);
                std::vector<double> gammas(n, gamma);
                return construct_machine(bob_states, 2, gammas);
            } else {
                std::vector<size_t> labels = choice.clonable_labels;
                if (labels.empty()) {
                    for (size_t l = 1; l <= n + 1; l++) {
                        labels.push_back(l);
                    }
                }
                return IllegalClonerSpec::make(n, labels, config.mu, choice.unclonable_output);
            }
        },
        config.cloner);

    return ProtocolConfig{
        .bob_states = std::move(bob_states),
        .a2_basis = std::move(a2),
        .mu = config.mu,
        .trials = config.trials,
        .pairs_per_bit = config.pairs_per_bit,
        .cloner = std::move(cloner),
        .seed = config.seed,
        .threads = threads,
    };
}

size_t threads_from_env() {
    const char *env = std::getenv("PQCM_THREADS");
    if (env == nullptr || *env == '\0') {
        return std::max(1u, std::thread::hardware_concurrency());
    }
    char *end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
        throw ConfigError(fmt::format("PQCM_THREADS='{}' is not a positive integer", env));
    }
    return static_cast<size_t>(v);
}

}  // namespace pqcm::cli
