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

#include "uee/baselines.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "uee/errors.hpp"
#include "uee/iuapc.hpp"

namespace uee {

double PowerGrid::num_points() const
{
    double n = 1.0;
    for (const auto& l : levels)
        n *= static_cast<double>(l.size());
    return n;
}

PowerGrid make_power_grid(const Scenario& scenario, int levels_per_bs, double min_fraction)
{
    if (levels_per_bs < 2)
        throw DomainError("make_power_grid: need at least 2 levels per BS");
    if (!(min_fraction > 0.0 && min_fraction < 1.0))
        throw DomainError("make_power_grid: min_fraction must lie in (0, 1)");
    PowerGrid grid;
    for (const auto& bs : scenario.bss) {
        std::vector<double> l(levels_per_bs);
        const double lo = std::log(bs.max_power_w * min_fraction);
        const double hi = std::log(bs.max_power_w);
        for (int k = 0; k < levels_per_bs; ++k)
            l[k] = std::exp(lo + (hi - lo) * k / (levels_per_bs - 1));
        l.back() = bs.max_power_w;
        grid.levels.push_back(std::move(l));
    }
    return grid;
}

Association max_sinr_association(const Scenario& scenario, const PowerAllocation& p, ChannelBasis basis)
{
    const Eigen::MatrixXd s = sinr_matrix(scenario.gains(basis), p.watts, scenario.noise_power_w);
    std::vector<int> serving(scenario.num_users());
    for (int i = 0; i < scenario.num_users(); ++i) {
        int best = 0;
        for (int j = 1; j < scenario.num_bss(); ++j)
            if (s(i, j) > s(i, best))
                best = j;
        serving[i] = best;
    }
    return Association::from_serving(std::move(serving), scenario.num_bss());
}

PowerAllocation max_power(const Scenario& scenario)
{
    return PowerAllocation{scenario.max_powers()};
}

namespace {

constexpr double max_assignments = 1e7;
constexpr double max_oracle_work = 1e8;

double assignment_count(int num_users, int num_bss)
{
    return std::pow(static_cast<double>(num_bss), num_users);
}

// Advances a base-num_bss counter; the last user is the fastest digit.
bool next_assignment(std::vector<int>& serving, int num_bss)
{
    for (int i = static_cast<int>(serving.size()) - 1; i >= 0; --i) {
        if (++serving[i] < num_bss)
            return true;
        serving[i] = 0;
    }
    return false;
}

} // namespace

Association brute_force_association(const UtilityWeights& w)
{
    const int nu = w.num_users();
    const int nb = w.num_bss();
    if (assignment_count(nu, nb) > max_assignments)
        throw SizeError("brute_force_association: " + std::to_string(nb) + "^" + std::to_string(nu) +
                        " assignments exceed the 1e7 limit");
    std::vector<int> serving(nu, 0);
    std::vector<int> best_serving = serving;
    double best = -std::numeric_limits<double>::infinity();
    do {
        const double v = association_objective(Association::from_serving(serving, nb), w);
        if (v > best) {
            best = v;
            best_serving = serving;
        }
    } while (next_assignment(serving, nb));
    return Association::from_serving(std::move(best_serving), nb);
}

BruteForceResult brute_force_uee(const Scenario& scenario, const PowerGrid& grid)
{
    const int nb = scenario.num_bss();
    if (grid.num_bss() != nb)
        throw DomainError("brute_force_uee: grid has the wrong number of BSs");
    const double work = assignment_count(scenario.num_users(), nb) * grid.num_points();
    if (work > max_oracle_work)
        throw SizeError("brute_force_uee: " + std::to_string(work) + " evaluations exceed the 1e8 limit");

    BruteForceResult best;
    best.eta = -std::numeric_limits<double>::infinity();
    std::vector<int> index(nb, 0);
    PowerAllocation p{Eigen::VectorXd(nb)};
    while (true) {
        for (int j = 0; j < nb; ++j)
            p.watts(j) = grid.levels[j][index[j]];
        // for fixed power the denominator is constant, so the best association
        // for uee is the best association for the sum utility
        const Association a = brute_force_association(utility_weights(scenario, p));
        const double value = utility_energy_efficiency(scenario, a, p);
        if (value > best.eta) {
            best = {a, p, value};
        }
        int j = nb - 1;
        while (j >= 0 && ++index[j] == static_cast<int>(grid.levels[j].size())) {
            index[j] = 0;
            --j;
        }
        if (j < 0)
            break;
    }
    return best;
}

} // namespace uee
