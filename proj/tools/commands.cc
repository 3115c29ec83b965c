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

#include "commands.h"

#include <filesystem>
#include <iostream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "pqcm/cloning.h"

namespace pqcm::cli {

namespace {

std::vector<double> expand_gammas(const std::vector<double> &gammas, size_t k) {
    if (gammas.size() == 1) {
        return std::vector<double>(k, gammas.front());
    }
    if (gammas.size() != k) {
        throw ConfigError(fmt::format("--gamma needs 1 or {} values, got {}", k, gammas.size()));
    }
    return gammas;
}

void add_gamma_section(Report &report, const std::vector<double> &gammas) {
    auto &section = report.add_section("gammas", {"state", "gamma"});
    for (size_t i = 0; i < gammas.size(); i++) {
        section.add_row({static_cast<uint64_t>(i + 1), gammas[i]});
    }
}

void add_matrix_section(Report &report, const std::string &name, const Matrix &m) {
    auto &section = report.add_section(name, {"row", "col", "re", "im"});
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            section.add_row({static_cast<int64_t>(r), static_cast<int64_t>(c), m(r, c).real(), m(r, c).imag()});
        }
    }
}

void add_setting_rows(Section &settings, Section &columns, const std::string &name, const SettingStats &s, size_t n) {
    settings.add_row({name, s.pairs, s.successes, s.discard_rate, s.p0, s.p0_stderr, s.p1, s.p1_stderr, s.abstain});
    for (size_t c = 0; c < s.p_col.size(); c++) {
        std::string label = c <= n ? std::to_string(c + 1) : "phi";
        columns.add_row({name, label, s.p_col[c], s.p_col_stderr[c]});
    }
}

}  // namespace

int cmd_feasibility(const FeasibilityArgs &args, std::ostream &log) {
    auto kets = to_kets(load_states_file(args.states_file));
    if (args.gammas.empty() && !args.max_uniform) {
        throw ConfigError("feasibility needs --gamma or --max-uniform");
    }
    Report report;
    std::optional<double> gamma_max;
    if (args.max_uniform) {
        gamma_max = max_uniform_gamma(kets, args.copies, args.tol);
    }
    auto gammas = args.gammas.empty() ? std::vector<double>(kets.size(), *gamma_max) : expand_gammas(args.gammas, kets.size());
    auto eigenvalues = hermitian_eigenvalues(feasibility_matrix(kets, args.copies, gammas));
    bool feasible = eigenvalues.front() >= -PSD_TOL;

    report.add_section("verdict", {"feasible", "min_eigenvalue", "copies", "states"})
        .add_row({feasible, eigenvalues.front(), static_cast<uint64_t>(args.copies), static_cast<uint64_t>(kets.size())});
    add_gamma_section(report, gammas);
    if (gamma_max) {
        report.add_section("max_uniform", {"gamma_max", "bisection_tol"}).add_row({*gamma_max, args.tol});
    }
    auto &eig = report.add_section("eigenvalues", {"index", "value"});
    for (size_t k = 0; k < eigenvalues.size(); k++) {
        eig.add_row({static_cast<uint64_t>(k), eigenvalues[k]});
    }
    write_output(render(report, parse_format(args.format)), args.out);
    log << fmt::format("{} (min eigenvalue {})\n", feasible ? "feasible" : "infeasible", eigenvalues.front());
    if (gamma_max) {
        log << fmt::format("gamma_max = {} (bisection tol {})\n", *gamma_max, args.tol);
    }
    return feasible ? EXIT_OK : EXIT_INFEASIBLE;
}

int cmd_construct(const ConstructArgs &args, std::ostream &log) {
    auto kets = to_kets(load_states_file(args.states_file));
    if (args.gammas.empty()) {
        throw ConfigError("construct needs --gamma");
    }
    auto gammas = expand_gammas(args.gammas, kets.size());
    Report report;
    try {
        auto machine = construct_machine(kets, args.copies, gammas);
        double feas_min = min_eigenvalue(feasibility_matrix(kets, args.copies, gammas));
        report.add_section("residuals", {"feasible", "clone_residual", "trace_residual", "feasibility_min_eigenvalue", "copies"})
            .add_row({true, machine.clone_residual(), machine.trace_residual(), feas_min, static_cast<uint64_t>(args.copies)});
        add_gamma_section(report, gammas);
        add_matrix_section(report, "kraus_success", machine.kraus_success());
        add_matrix_section(report, "kraus_fail", machine.kraus_fail());
        write_output(render(report, parse_format(args.format)), args.out);
        log << fmt::format(
            "machine built: clone residual {}, trace residual {}\n", machine.clone_residual(), machine.trace_residual());
        return EXIT_OK;
    } catch (const FeasibilityError &e) {
        report.add_section("residuals", {"feasible", "feasibility_min_eigenvalue", "copies"})
            .add_row({false, e.min_eigenvalue(), static_cast<uint64_t>(args.copies)});
        add_gamma_section(report, gammas);
        write_output(render(report, parse_format(args.format)), args.out);
        log << fmt::format("infeasible: {} (min eigenvalue {})\n", e.what(), e.min_eigenvalue());
        return EXIT_INFEASIBLE;
    }
}

Report signal_report(const RunConfig &config, const ProtocolResult &result) {
    const auto &stats = result.stats;
    size_t n = result.tally.n();
    Report report;

    bool legal = std::holds_alternative<LegalChoice>(config.cloner);
    report.add_section("run", {"cloner", "n", "mu", "trials", "pairs_per_bit", "seed"})
        .add_row(
            {std::string(legal ? "legal" : "illegal"),
             static_cast<uint64_t>(n),
             static_cast<uint64_t>(config.mu),
             config.trials,
             static_cast<uint64_t>(config.pairs_per_bit),
             config.seed});

    std::vector<std::string> headers{"row"};
    for (size_t c = 1; c <= n + 1; c++) {
        headers.push_back(fmt::format("col_{}", c));
    }
    headers.push_back("col_phi");
    auto &tally = report.add_section("tally", headers);
    for (size_t r = 1; r <= result.tally.rows(); r++) {
        std::vector<Cell> row{static_cast<uint64_t>(r)};
        for (size_t c = 1; c <= n + 1; c++) {
            row.push_back(result.tally.at(r, Column::of(c)));
        }
        row.push_back(result.tally.at(r, Column::phi()));
        tally.add_row(std::move(row));
    }

    auto &settings = report.add_section(
        "settings", {"setting", "pairs", "successes", "discard_rate", "p0", "p0_stderr", "p1", "p1_stderr", "abstain"});
    auto &columns = report.add_section("column_probabilities", {"setting", "column", "p", "stderr"});
    add_setting_rows(settings, columns, "A1", stats.a1, n);
    add_setting_rows(settings, columns, "A2", stats.a2, n);

    report
        .add_section(
            "summary",
            {"p1_gap", "p1_gap_stderr", "accuracy", "accuracy_blocks", "coin_flip_blocks", "leakage", "certificate"})
        .add_row(
            {stats.p1_gap,
             stats.p1_gap_stderr,
             stats.accuracy,
             stats.accuracy_blocks,
             stats.coin_flip_blocks,
             stats.leakage,
             stats.certificate});
    return report;
}

int cmd_signal_test(const SignalTestArgs &args, std::ostream &log) {
    auto config = load_run_config(args.config_file);
    if (args.seed) {
        config.seed = *args.seed;
    }
    if (args.trials) {
        config.trials = *args.trials;
    }
    if (args.mu) {
        config.mu = *args.mu;
    }
    if (args.pairs_per_bit) {
        config.pairs_per_bit = *args.pairs_per_bit;
    }
    if (args.format) {
        config.format = *args.format;
    }
    if (args.out) {
        config.out = *args.out;
    }
    auto format = parse_format(config.format);
    auto base_dir = std::filesystem::path(args.config_file).parent_path().string();
    auto protocol = to_protocol_config(config, threads_from_env(), base_dir);
    auto result = run_protocol(protocol);
    write_output(render(signal_report(config, result), format), config.out);

    const auto &s = result.stats;
    log << fmt::format("P0(A1) = {:.6f}  P1(A1) = {:.6f} +/- {:.2e}\n", s.a1.p0, s.a1.p1, s.a1.p1_stderr);
    log << fmt::format("P0(A2) = {:.6f}  P1(A2) = {:.6f} +/- {:.2e}\n", s.a2.p0, s.a2.p1, s.a2.p1_stderr);
    log << fmt::format(
        "gap = {:.6f} +/- {:.2e}, accuracy = {:.4f}, certificate = {:.2e}\n", s.p1_gap, s.p1_gap_stderr, s.accuracy, s.certificate);
    return EXIT_OK;
}

int run_cli(int argc, char **argv) {
    CLI::App app{"Probabilistic cloning and no-signalling simulator"};
    app.require_subcommand(1);

    FeasibilityArgs feas;
    auto *feasibility = app.add_subcommand("feasibility", "Check whether cloning efficiencies are achievable");
    feasibility->add_option("states", feas.states_file, "State list file")->required();
    feasibility->add_option("-M,--copies", feas.copies, "Copies per success")->check(CLI::Range(2, 64));
    feasibility->add_option("--gamma", feas.gammas, "Efficiency, uniform or one per state")->delimiter(',');
    feasibility->add_flag("--max-uniform", feas.max_uniform, "Bisect for the largest uniform efficiency");
    feasibility->add_option("--tol", feas.tol, "Bisection tolerance");
    feasibility->add_option("--format", feas.format, "csv or json");
    feasibility->add_option("--out", feas.out, "Output file (default stdout)");

    ConstructArgs cons;
    auto *construct = app.add_subcommand("construct", "Build the success/fail Kraus pair");
    construct->add_option("states", cons.states_file, "State list file")->required();
    construct->add_option("-M,--copies", cons.copies, "Copies per success")->check(CLI::Range(2, 64));
    construct->add_option("--gamma", cons.gammas, "Efficiency, uniform or one per state")->delimiter(',')->required();
    construct->add_option("--format", cons.format, "csv or json");
    construct->add_option("--out", cons.out, "Output file (default stdout)");

    SignalTestArgs sig;
    auto *signal = app.add_subcommand("signal-test", "Run the entanglement signalling protocol");
    signal->add_option("config", sig.config_file, "Run configuration (JSON)")->required();
    signal->add_option("--seed", sig.seed, "RNG seed");
    signal->add_option("--trials", sig.trials, "Pairs per Alice setting");
    signal->add_option("--mu", sig.mu, "Copies per successful clone");
    signal->add_option("--pairs-per-bit", sig.pairs_per_bit, "Pairs per transmitted bit");
    signal->add_option("--format", sig.format, "csv or json");
    signal->add_option("--out", sig.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? EXIT_OK : EXIT_ERROR;
    }

    try {
        if (*feasibility) {
            return cmd_feasibility(feas, std::cerr);
        }
        if (*construct) {
            return cmd_construct(cons, std::cerr);
        }
        return cmd_signal_test(sig, std::cerr);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_ERROR;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_ERROR;
    }
}

}  // namespace pqcm::cli
