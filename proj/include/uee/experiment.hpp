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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uee/config.hpp"
#include "uee/iuapc.hpp"
#include "uee/netmodel.hpp"

namespace uee {

struct DropResult
{
    int drop_id = 0;
    std::string algorithm;
    std::string scenario_checksum;
    double uee = 0.0;
    double sum_utility = 0.0;
    double total_power_w = 0.0;
    double mbs_load_fraction = 0.0;
    std::vector<int> serving;
    std::vector<double> per_user_rates; // nats/s
    int outer_iters = 0;
    int inner_iters_total = 0;
    double median_inner_iters = 0.0; // over this drop's outer iterations
    double final_varsigma = 0.0;
    double varsigma_threshold = 0.0;
    bool eta_nondecreasing = true;
    bool converged = true;
    int solver_warnings = 0;
};

/// Per-drop seed: splitmix64 finalizer applied to master + (drop + 1) * golden-ratio increment.
std::uint64_t drop_seed(std::uint64_t master_seed, int drop);

/// 64-bit FNV-1a over gains, max powers, noise and circuit power, as 16 hex digits.
std::string scenario_checksum(const Scenario& scenario);

/// Runs one algorithm on one scenario. `solution`, if non-null, receives the solver output.
DropResult run_algorithm(const Scenario& scenario, const std::string& algorithm,
                         const ExperimentConfig& config, int drop_id, Solution* solution = nullptr);

/// All drops and algorithms, sorted by (drop_id, algorithm order). Deterministic for any thread count.
std::vector<DropResult> run_drops(const ExperimentConfig& config);

/// run_drops plus every output table under config.output_dir. Throws IoError on write failure.
std::vector<DropResult> run_experiment(const ExperimentConfig& config, bool write_traces = false);

struct AlgorithmSummary
{
    std::string algorithm;
    int n = 0;
    double mean_uee = 0.0;
    double std_uee = 0.0; // population standard deviation
    double mean_mbs_fraction = 0.0;
    double median_outer_iters = 0.0;
    double median_inner_iters = 0.0;
    std::vector<double> rate_quantiles; // at levels k / 199, k = 0..199
};

/// Throws ConfigError on empty input.
std::vector<AlgorithmSummary> aggregate(const std::vector<DropResult>& results);

/// Writes results.csv, rates.csv, uee_summary.csv, load_summary.csv, rate_cdf.csv
/// and convergence_summary.csv.
void write_tables(const std::string& dir, const std::vector<DropResult>& results,
                  const ExperimentConfig& config);

/// Linear-interpolated sample quantile of already sorted values, level in [0, 1].
double quantile_sorted(const std::vector<double>& sorted, double level);
double median(std::vector<double> values);

struct OracleRow
{
    int instance = 0;
    std::string scenario_checksum;
    double solver_eta = 0.0;
    double oracle_eta = 0.0;
    double ratio = 0.0;
};

/// Compares iuapc_solve with the grid oracle on config.oracle_instances generated
/// scenarios. Throws SizeError when the configured network is too large.
std::vector<OracleRow> run_oracle_instances(const ExperimentConfig& config);

/// run_oracle_instances plus oracle_report.csv and oracle_summary.csv under `dir`.
std::vector<OracleRow> run_oracle_check(const ExperimentConfig& config, const std::string& dir);

} // namespace uee
