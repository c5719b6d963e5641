/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The hetnet-uee Authors. All rights reserved.
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// ueesim: Monte-Carlo experiments for joint association and power control.
//
//   ueesim simulate --config cfg.json [--seed N] [--drops N] [--out DIR]
//                   [--algorithms a,b] [--threads N] [--traces]
//   ueesim oracle-check --config cfg.json --out DIR
//   ueesim show-config
//
// Exit status: 0 success, 1 usage or configuration error, 2 I/O error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uee/config.hpp"
#include "uee/errors.hpp"
#include "uee/experiment.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_io = 2;

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string item;
    for (char c : s) {
        if (c == ',') {
            if (!item.empty())
                out.push_back(item);
            item.clear();
        } else if (c != ' ') {
            item += c;
        }
    }
    if (!item.empty())
        out.push_back(item);
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Utility-energy-efficiency experiments for two-tier cellular networks"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> drops;
    std::optional<int> threads;
    std::string out_dir;
    std::string algorithms;
    bool traces = false;

    auto* sim = app.add_subcommand("simulate", "Run Monte-Carlo drops and write CSV tables");
    sim->add_option("--config", config_path, "JSON config file")->required();
    sim->add_option("--seed", seed, "Master seed (overrides config)");
    sim->add_option("--drops", drops, "Number of drops (overrides config)");
    sim->add_option("--out", out_dir, "Output directory (overrides config)");
    sim->add_option("--algorithms", algorithms,
                    "Comma-separated subset of proposed,maxsinr_pc,maxsinr_maxpower");
    sim->add_option("--threads", threads, "Worker threads (output is identical for any count)");
    sim->add_flag("--traces", traces, "Also write per-drop solver traces");

    std::string oracle_config;
    std::string oracle_out;
    auto* oracle = app.add_subcommand("oracle-check", "Compare the solver against exhaustive search");
    oracle->add_option("--config", oracle_config, "JSON config file (small network)")->required();
    oracle->add_option("--out", oracle_out, "Output directory")->required();

    auto* show = app.add_subcommand("show-config", "Print the resolved default config as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) == 0 ? exit_ok : exit_usage;
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e) == 0 ? exit_ok : exit_usage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (show->parsed()) {
            std::cout << uee::config_to_json(uee::ExperimentConfig{});
            return exit_ok;
        }
        if (sim->parsed()) {
            uee::ExperimentConfig config = uee::load_config(config_path);
            if (seed)
                config.seed = *seed;
            if (drops)
                config.n_drops = *drops;
            if (threads)
                config.threads = *threads;
            if (!out_dir.empty())
                config.output_dir = out_dir;
            if (!algorithms.empty())
                config.algorithms = split_list(algorithms);
            uee::validate(config);
            const auto results = uee::run_experiment(config, traces);
            int warnings = 0;
            for (const auto& r : results)
                warnings += r.converged ? 0 : 1;
            std::fprintf(stderr, "wrote %zu result rows to %s (%d runs hit an iteration limit)\n",
                         results.size(), config.output_dir.c_str(), warnings);
            return exit_ok;
        }
        if (oracle->parsed()) {
            const uee::ExperimentConfig config = uee::load_config(oracle_config);
            const auto rows = uee::run_oracle_check(config, oracle_out);
            std::fprintf(stderr, "checked %zu instances, report in %s\n", rows.size(), oracle_out.c_str());
            return exit_ok;
        }
    } catch (const uee::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_io;
    } catch (const uee::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    }
    return exit_usage;
}
