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

#include <string>

#include "uee/netmodel.hpp"

namespace uee {

/// Scenario files are JSON documents:
///
///   { "format": "uee-scenario/1", "seed": 7,
///     "bandwidth_hz": ..., "noise_power_w": ..., "circuit_power_w": ...,
///     "utility_rate_unit": ...,
///     "base_stations": [ {"id", "kind": "macro"|"small", "x_m", "y_m",
///                         "max_power_w", "power_density_dbm_per_hz"} ],
///     "users": [ {"id", "x_m", "y_m"} ],
///     "gains": [[...]], "largescale_gains": [[...]], "pathloss_gains": [[...]] }
///
/// Matrices are row-per-user. Doubles are written in shortest round-trip form,
/// so save followed by load reproduces every value exactly.
std::string scenario_to_json(const Scenario& scenario);

/// Throws DomainError on malformed or invalid content.
Scenario scenario_from_json(const std::string& text);

/// Throws IoError when the file cannot be written or read.
void save_scenario(const Scenario& scenario, const std::string& path);
Scenario load_scenario(const std::string& path);

} // namespace uee
