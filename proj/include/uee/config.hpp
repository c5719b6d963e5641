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

#include "uee/association.hpp"
#include "uee/netmodel.hpp"
#include "uee/powerctl.hpp"

namespace uee {

inline const std::vector<std::string> known_algorithms{"proposed", "maxsinr_pc", "maxsinr_maxpower"};

struct SolverConfig
{
    double assoc_tol = 1e-3;
    int assoc_max_iter = 2000;
    double assoc_step0 = 1.0;
    std::string nu_rule = "stationarity"; // or "log_mean_exp"
    bool assoc_exact_polish = true;
    std::string power_method = "consistent"; // or "dual_subgradient"
    double power_tol = 1e-4;
    int power_max_iter = 5000;
    double power_step0 = 0.1;
    double eta_floor = 1e-9;
    double varsigma = 0.0; // <= 0 means 1e-3 * n_users
    int max_outer = 20;
    int max_inner = 10;
    double inner_tol = 1e-4;
};

/// Every field of the experiment, flat in the config file except `solver`.
struct ExperimentConfig
{
    NetworkConfig network;
    /// "mbit_per_s" (default), "bit_per_s", "mnat_per_s" or "nat_per_s".
    std::string utility_rate_unit = "mbit_per_s";
    int n_drops = 200;
    std::uint64_t seed = 1;
    std::vector<std::string> algorithms = known_algorithms;
    std::string maxsinr_basis = "pathloss"; // "full", "largescale" or "pathloss"
    std::string report_rates_in = "nats_per_s"; // or "bits_per_s"
    SolverConfig solver;
    std::string output_dir = "out";
    int threads = 1;
    int oracle_instances = 50;
    int oracle_levels = 12;
};

/// Throws ConfigError on out-of-range values or unknown names.
void validate(const ExperimentConfig& config);

/// Parses JSON text over the defaults. Unknown keys are ConfigErrors.
ExperimentConfig config_from_json(const std::string& text);

/// Reads a config file; IoError if it cannot be opened.
ExperimentConfig load_config(const std::string& path);

std::string config_to_json(const ExperimentConfig& config);

/// Network parameters with the utility rate unit resolved.
NetworkConfig network_config(const ExperimentConfig& config);

double rate_unit_value(const std::string& name);
ChannelBasis channel_basis_from_name(const std::string& name);
AssociationOptions association_options(const SolverConfig& s);
PowerOptions power_options(const SolverConfig& s);

} // namespace uee
