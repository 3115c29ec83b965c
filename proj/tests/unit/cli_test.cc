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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "commands.h"
#include "json.hpp"
#include "pqcm/errors.h"
#include "report.h"
#include "run_config.h"
#include "states_file.h"

namespace pqcm::cli {
namespace {

namespace fs = std::filesystem;

const std::string CONFIGS = PQCM_CONFIG_DIR;

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class TempDir {
   public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("pqcm_cli_test_" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    fs::path operator/(const std::string &name) const {
        return path_ / name;
    }

   private:
    fs::path path_;
};

void write_file(const fs::path &p, const std::string &text) {
    std::ofstream(p, std::ios::binary) << text;
}

TEST(StatesFile, ParsesCommentsAndComplexPairs) {
    std::istringstream in("# header\n\n2  # dimension\n1 0 0 0\n0.6 0 0 0.8   # complex\n");
    StateList s = parse_states(in);
    EXPECT_EQ(s.dim, 2u);
    ASSERT_EQ(s.vectors.size(), 2u);
    EXPECT_EQ(s.vectors[1][1], Complex(0, 0.8));
    auto kets = to_kets(s);
    EXPECT_NEAR(std::abs(kets[1][1] - Complex(0, 0.8)), 0.0, 1e-15);
}

TEST(StatesFile, ErrorsCarryLineNumbers) {
    auto fails_with = [](const std::string &text, const std::string &needle) {
        std::istringstream in(text);
        try {
            parse_states(in, "f.txt");
        } catch (const ParseError &e) {
            EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
            return;
        }
        ADD_FAILURE() << "no ParseError for: " << text;
    };
    fails_with("2\n1 0 0\n", "f.txt:2:");
    fails_with("# c\n2\n1 0 0 0\n1 x 0 0\n", "f.txt:4:");
    fails_with("zero\n", "f.txt:1:");
    fails_with("# only comments\n", "missing dimension");
    fails_with("2\n", "no states");
    EXPECT_THROW(load_states_file("/nonexistent/states.txt"), ParseError);
}

TEST(StatesFile, FormatRoundTrip) {
    std::mt19937_64 gen(1);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 20; t++) {
        StateList s;
        s.dim = 1 + t % 4;
        for (size_t k = 0; k < 3; k++) {
            std::vector<Complex> v;
            for (size_t j = 0; j < s.dim; j++) {
                v.emplace_back(normal(gen), normal(gen));
            }
            s.vectors.push_back(v);
        }
        std::istringstream in(format_states(s));
        EXPECT_EQ(parse_states(in), s);
    }
}

RunConfig random_config(std::mt19937_64 &gen) {
    std::normal_distribution<double> normal;
    std::uniform_int_distribution<int> coin(0, 2);
    RunConfig c;
    c.states.dim = 2 + coin(gen) % 2;
    for (size_t k = 0; k < c.states.dim; k++) {
        std::vector<Complex> v;
        for (size_t j = 0; j < c.states.dim; j++) {
            v.emplace_back(normal(gen), normal(gen));
        }
        c.states.vectors.push_back(v);
    }
    switch (coin(gen)) {
        case 0:
            c.a2.kind = A2Kind::Fourier;
            break;
        case 1:
            c.a2.kind = A2Kind::Target;
            c.a2.target = c.states.vectors[0];
            break;
        default:
            c.a2.kind = A2Kind::Basis;
            c.a2.vectors = c.states.vectors;
    }
    if (coin(gen) == 0) {
        LegalChoice legal;
        if (coin(gen) != 0) {
            legal.gamma = std::abs(normal(gen)) / 10;
        }
        c.cloner = legal;
    } else {
        IllegalChoice illegal;
        for (size_t l = 1; l <= c.states.dim + 1; l++) {
            illegal.clonable_labels.push_back(l);
        }
        illegal.unclonable_output[c.states.dim + 2] = BranchCoefficients{
            std::vector<Complex>(c.states.dim + 1, Complex(normal(gen), normal(gen))), Complex(normal(gen), 0)};
        c.cloner = illegal;
    }
    c.mu = 3 + gen() % 60;
    c.trials = 1 + gen() % 100000;
    c.pairs_per_bit = 1 + gen() % 300;
    c.seed = gen();
    c.format = coin(gen) == 0 ? "csv" : "json";
    c.out = coin(gen) == 0 ? "" : "out.txt";
    return c;
}

TEST(RunConfig, JsonRoundTripRandomized) {
    std::mt19937_64 gen(2);
    for (int t = 0; t < 100; t++) {
        RunConfig c = random_config(gen);
        nlohmann::json doc = nlohmann::json::parse(to_json(c).dump());
        EXPECT_EQ(run_config_from_json(doc), c) << to_json(c).dump();
    }
}

TEST(RunConfig, RejectsUnknownKeysAndBadValues) {
    auto rejects = [](const std::string &text, const std::string &needle) {
        try {
            run_config_from_json(nlohmann::json::parse(text));
        } catch (const ConfigError &e) {
            EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
            return;
        }
        ADD_FAILURE() << "accepted: " << text;
    };
    const std::string states = R"("states": {"dim": 2, "vectors": [[1,0,0,0],[0,0,1,0]]})";
    rejects("{" + states + R"(, "cloner": {"kind": "illegal"}, "colour": 1})", "colour");
    rejects("{" + states + R"(, "cloner": {"kind": "sideways"}})", "kind");
    rejects("{" + states + R"(, "cloner": {"kind": "legal", "gama": 0.1}})", "gama");
    rejects("{" + states + R"(, "cloner": {"kind": "legal"}, "mu": -3})", "mu");
    rejects(R"({"cloner": {"kind": "legal"}})", "states");
}

TEST(RunConfig, BundledConfigsLoad) {
    RunConfig illegal = load_run_config(CONFIGS + "/illegal_n2.json");
    EXPECT_TRUE(std::holds_alternative<IllegalChoice>(illegal.cloner));
    ProtocolConfig p = to_protocol_config(illegal, 1, CONFIGS);
    EXPECT_EQ(p.bob_states.size(), 2u);
    EXPECT_EQ(p.mu, 48u);
    RunConfig legal = load_run_config(CONFIGS + "/legal_n2.json");
    ProtocolConfig q = to_protocol_config(legal, 1, CONFIGS);
    EXPECT_TRUE(std::holds_alternative<PqcmMachine>(q.cloner));
}

TEST(RunConfig, ThreadsFromEnvironment) {
    ::setenv("PQCM_THREADS", "3", 1);
    EXPECT_EQ(threads_from_env(), 3u);
    ::setenv("PQCM_THREADS", "zero", 1);
    EXPECT_THROW(threads_from_env(), ConfigError);
    ::unsetenv("PQCM_THREADS");
}

TEST(Report, CsvAndJsonAgreeValueForValue) {
    Report r;
    auto &s = r.add_section("numbers", {"label", "x", "ok", "count"});
    s.add_row({std::string("a"), 0.1, true, uint64_t{3}});
    s.add_row({std::string("b"), -2.5e-12, false, uint64_t{0}});
    auto &t = r.add_section("second", {"k"});
    t.add_row({int64_t{-4}});
    EXPECT_THROW(s.add_row(std::vector<Cell>{Cell{1.0}}), std::logic_error);

    auto json = to_json(r);
    std::istringstream csv(to_csv(r));
    std::string line;
    std::string section;
    std::vector<std::string> headers;
    size_t row = 0;
    size_t checked = 0;
    while (std::getline(csv, line)) {
        if (line.empty()) {
            section.clear();
            continue;
        }
        if (line.rfind("# ", 0) == 0) {
            section = line.substr(2);
            headers.clear();
            row = 0;
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) {
            fields.push_back(f);
        }
        if (headers.empty()) {
            headers = fields;
            continue;
        }
        for (size_t c = 0; c < headers.size(); c++) {
            const auto &v = json[section][row][headers[c]];
            if (v.is_string()) {
                EXPECT_EQ(v.get<std::string>(), fields[c]);
            } else if (v.is_boolean()) {
                EXPECT_EQ(v.get<bool>() ? "true" : "false", fields[c]);
            } else {
                EXPECT_EQ(v.get<double>(), std::stod(fields[c]));
            }
            checked++;
        }
        row++;
    }
    EXPECT_EQ(checked, 9u);
    EXPECT_EQ(parse_format("csv"), Format::Csv);
    EXPECT_THROW(parse_format("xml"), ConfigError);
}

nlohmann::json read_json(const fs::path &p) {
    return nlohmann::json::parse(slurp(p));
}

TEST(Commands, FeasibilityExitCodes) {
    TempDir tmp;
    std::ostringstream log;
    FeasibilityArgs args;
    args.states_file = CONFIGS + "/orthogonal_pair.txt";
    args.gammas = {1.0};
    args.out = (tmp / "f.json").string();
    EXPECT_EQ(cmd_feasibility(args, log), EXIT_OK);
    auto doc = read_json(tmp / "f.json");
    EXPECT_EQ(doc["verdict"][0]["feasible"], true);
    EXPECT_NEAR(doc["verdict"][0]["min_eigenvalue"].get<double>(), 0.0, 1e-15);

    args.states_file = CONFIGS + "/overlap_0707.txt";
    args.gammas.clear();
    args.max_uniform = true;
    EXPECT_EQ(cmd_feasibility(args, log), EXIT_OK);
    EXPECT_NEAR(read_json(tmp / "f.json")["max_uniform"][0]["gamma_max"].get<double>(), 0.58578644, 1e-6);

    args.max_uniform = false;
    args.gammas = {0.9};
    EXPECT_EQ(cmd_feasibility(args, log), EXIT_INFEASIBLE);
    EXPECT_EQ(read_json(tmp / "f.json")["verdict"][0]["feasible"], false);

    args.states_file = CONFIGS + "/three_in_dim2.txt";
    args.max_uniform = true;
    args.gammas.clear();
    EXPECT_THROW(cmd_feasibility(args, log), RankError);
}

TEST(Commands, ConstructExitCodesAndResiduals) {
    TempDir tmp;
    std::ostringstream log;
    ConstructArgs args;
    args.states_file = CONFIGS + "/orthogonal_pair.txt";
    args.gammas = {1.0};
    args.out = (tmp / "m.json").string();
    EXPECT_EQ(cmd_construct(args, log), EXIT_OK);
    auto doc = read_json(tmp / "m.json");
    EXPECT_LT(doc["residuals"][0]["clone_residual"].get<double>(), 1e-10);
    EXPECT_LT(doc["residuals"][0]["trace_residual"].get<double>(), 1e-10);
    for (const auto &entry : doc["kraus_fail"]) {
        EXPECT_NEAR(std::hypot(entry["re"].get<double>(), entry["im"].get<double>()), 0.0, 1e-10);
    }

    args.states_file = CONFIGS + "/trine_pair.txt";
    args.gammas = {0.5};
    EXPECT_EQ(cmd_construct(args, log), EXIT_OK);
    doc = read_json(tmp / "m.json");
    EXPECT_LT(doc["residuals"][0]["clone_residual"].get<double>(), 1e-9);
    EXPECT_LT(doc["residuals"][0]["trace_residual"].get<double>(), 1e-9);
    EXPECT_EQ(doc["kraus_success"].size(), 8u);

    args.gammas = {0.9};
    EXPECT_EQ(cmd_construct(args, log), EXIT_INFEASIBLE);
    doc = read_json(tmp / "m.json");
    EXPECT_LT(doc["residuals"][0]["feasibility_min_eigenvalue"].get<double>(), 0.0);
}

int run_binary(const std::string &args) {
    std::string cmd = std::string(PQCM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

TEST(Binary, ExitCodeContract) {
    EXPECT_EQ(run_binary("feasibility " + CONFIGS + "/orthogonal_pair.txt --gamma 1"), 0);
    EXPECT_EQ(run_binary("feasibility " + CONFIGS + "/trine_pair.txt --gamma 0.9"), 2);
    EXPECT_EQ(run_binary("feasibility " + CONFIGS + "/three_in_dim2.txt --max-uniform"), 1);
    EXPECT_EQ(run_binary("construct " + CONFIGS + "/trine_pair.txt --gamma 0.9"), 2);
    EXPECT_EQ(run_binary("construct /nonexistent.txt --gamma 0.5"), 1);
    EXPECT_EQ(run_binary("signal-test /nonexistent.json"), 1);
    EXPECT_EQ(run_binary("no-such-command"), 1);
}

TEST(Binary, SignalTestSeedOverrideIsDeterministic) {
    TempDir tmp;
    std::string base = "signal-test " + CONFIGS + "/illegal_n2.json --trials 400 --mu 12 --pairs-per-bit 20 --format csv";
    ASSERT_EQ(run_binary(base + " --seed 42 --out " + (tmp / "a.csv").string()), 0);
    ASSERT_EQ(run_binary(base + " --seed 42 --out " + (tmp / "b.csv").string()), 0);
    ASSERT_EQ(run_binary(base + " --seed 43 --out " + (tmp / "c.csv").string()), 0);
    EXPECT_EQ(slurp(tmp / "a.csv"), slurp(tmp / "b.csv"));
    EXPECT_NE(slurp(tmp / "a.csv"), slurp(tmp / "c.csv"));
    EXPECT_NE(slurp(tmp / "a.csv").find("# tally"), std::string::npos);
}

TEST(SignalReport, TallyAndSummarySections) {
    RunConfig c = load_run_config(CONFIGS + "/illegal_n2.json");
    c.trials = 500;
    c.mu = 12;
    c.pairs_per_bit = 50;
    ProtocolConfig p = to_protocol_config(c, 1, CONFIGS);
    ProtocolResult result = run_protocol(p);
    Report r = signal_report(c, result);
    const Section *tally = r.find("tally");
    ASSERT_NE(tally, nullptr);
    EXPECT_EQ(tally->rows.size(), 4u);
    EXPECT_EQ(tally->headers, (std::vector<std::string>{"row", "col_1", "col_2", "col_3", "col_phi"}));
    ASSERT_NE(r.find("summary"), nullptr);
    ASSERT_NE(r.find("settings"), nullptr);
}

}  // namespace
}  // namespace pqcm::cli
