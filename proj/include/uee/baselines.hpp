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

#include <vector>

#include "uee/association.hpp"
#include "uee/netmodel.hpp"

namespace uee {

/// Per-BS candidate power levels, log-spaced up to and including P^m.
struct PowerGrid
{
    std::vector<std::vector<double>> levels; // levels[j] strictly increasing, back() == P^m_j

    int num_bss() const { return static_cast<int>(levels.size()); }
    double num_points() const;
};

/// `levels_per_bs` log-spaced values on [min_fraction * P^m, P^m].
PowerGrid make_power_grid(const Scenario& scenario, int levels_per_bs, double min_fraction = 1e-3);

/// Each user joins the BS with the highest SINR under `basis` gains; lowest index on ties.
Association max_sinr_association(const Scenario& scenario, const PowerAllocation& p,
                                 ChannelBasis basis = ChannelBasis::largescale);

PowerAllocation max_power(const Scenario& scenario);

/// Exhaustive maximizer of association_objective; throws SizeError above 1e7 assignments.
/// Among equal objectives the first assignment in lexicographic order wins.
Association brute_force_association(const UtilityWeights& w);

struct BruteForceResult
{
    Association assoc;
    PowerAllocation power;
    double eta = 0.0;
};

/// Grid optimum of uee over powers and (exactly) over associations.
/// Throws SizeError when associations x grid points exceed 1e8.
BruteForceResult brute_force_uee(const Scenario& scenario, const PowerGrid& grid);

} // namespace uee
