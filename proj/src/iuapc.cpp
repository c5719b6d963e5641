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

#include "uee/iuapc.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "uee/csv.hpp"
#include "uee/errors.hpp"

namespace uee {

double sum_utility(const Scenario& scenario, const Association& assoc, const PowerAllocation& p)
{
    return power_objective(scenario, assoc, p, 0.0);
}

double utility_energy_efficiency(const Scenario& scenario, const Association& assoc, const PowerAllocation& p)
{
    return sum_utility(scenario, assoc, p) / (p.total() + scenario.circuit_power_w);
}

double subtractive_value(const Scenario& scenario, const Association& assoc,
                         const PowerAllocation& p, double eta)
{
    return sum_utility(scenario, assoc, p) - eta * (p.total() + scenario.circuit_power_w);
}

InnerResult inner_alternation(const Scenario& scenario, double eta, const PowerAllocation& p0,
                              const std::optional<Association>& incumbent, const IuapcOptions& opts)
{
    InnerResult out;
    out.power = p0;
    std::optional<Association> current = incumbent;
    if (opts.fixed_association)
        current = opts.fixed_association;
    double objective = current ? power_objective(scenario, *current, out.power, eta)
                               : -std::numeric_limits<double>::infinity();

    for (int it = 1; it <= opts.max_inner; ++it) {
        out.iterations = it;
        bool changed = false;
        if (!opts.fixed_association) {
            const UtilityWeights w = utility_weights(scenario, out.power);
            AssociationResult ar = solve_association(w, opts.association);
            if (!ar.converged)
                ++out.association_warnings;
            const double value = power_objective(scenario, ar.assoc, out.power, eta);
            if (!current || value > objective) {
                changed = !current || !(ar.assoc == *current);
                current = std::move(ar.assoc);
                objective = value;
            }
            if (opts.keep_traces)
                out.last_association_trace = std::move(ar.trace);
        } else {
            changed = it == 1;
        }
        out.half_step_objectives.push_back(objective);
        if (!changed && it > 1)
            break;

        PowerResult pr = solve_power(scenario, *current, eta, out.power, opts.power);
        if (!pr.converged)
            ++out.power_warnings;
        if (opts.keep_traces)
            out.last_power_trace = std::move(pr.trace);
        out.power = pr.power;
        const double previous = objective;
        objective = pr.objective;
        out.half_step_objectives.push_back(objective);
        if (it > 1 && objective - previous <= opts.inner_tol * std::abs(objective))
            break;
    }
    out.assoc = *current;
    out.objective = objective;
    return out;
}

Solution iuapc_solve(const Scenario& scenario, const IuapcOptions& opts)
{
    validate(scenario);
    const double varsigma = opts.varsigma > 0.0 ? opts.varsigma : 1e-3 * scenario.num_users();

    Solution sol;
    double eta = 0.0;
    PowerAllocation p{scenario.max_powers()};
    std::optional<Association> incumbent;

    for (int outer = 1; outer <= opts.max_outer; ++outer) {
        InnerResult inner = inner_alternation(scenario, eta, p, incumbent, opts);
        sol.inner_iterations_total += inner.iterations;
        sol.association_warnings += inner.association_warnings;
        sol.power_warnings += inner.power_warnings;
        if (opts.keep_traces) {
            if (!inner.last_association_trace.empty())
                sol.last_association_trace = std::move(inner.last_association_trace);
            if (!inner.last_power_trace.empty())
                sol.last_power_trace = std::move(inner.last_power_trace);
        }

        const bool same_point = incumbent && inner.assoc == *incumbent &&
                                inner.power.watts == p.watts;
        const double utility = sum_utility(scenario, inner.assoc, inner.power);
        const double denominator = inner.power.total() + scenario.circuit_power_w;
        double gap = same_point ? 0.0 : utility - eta * denominator;

        if (outer > 1 && gap < 0.0) {
            // only reachable through rounding: the previous pair is at least as good
            sol.outer_trace.push_back({outer, eta, 0.0, inner.iterations, p.total(),
                                       sum_utility(scenario, *incumbent, p)});
            sol.converged = true;
            break;
        }
        sol.outer_trace.push_back({outer, eta, gap, inner.iterations, inner.power.total(), utility});
        incumbent = inner.assoc;
        p = inner.power;
        eta = utility / denominator;
        sol.eta_history.push_back(eta);
        if (gap >= 0.0 && gap <= varsigma) {
            sol.converged = true;
            break;
        }
    }

    sol.assoc = *incumbent;
    sol.power = p;
    sol.eta_star = utility_energy_efficiency(scenario, sol.assoc, sol.power);
    return sol;
}

void write_outer_trace_csv(std::ostream& os, const std::vector<OuterTraceRow>& trace)
{
    csv::write_row(os, {"outer_iteration", "eta", "varsigma_star", "inner_iterations",
                        "total_power_watts", "sum_utility"});
    for (const auto& r : trace)
        csv::write_row(os, {std::to_string(r.outer_iteration), csv::num(r.eta),
                            csv::num(r.varsigma_star), std::to_string(r.inner_iterations),
                            csv::num(r.total_power_w), csv::num(r.sum_utility)});
}

} // namespace uee
