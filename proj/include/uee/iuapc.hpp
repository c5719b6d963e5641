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

#include <iosfwd>
#include <optional>
#include <vector>

#include "uee/association.hpp"
#include "uee/netmodel.hpp"
#include "uee/powerctl.hpp"

namespace uee {

struct IuapcOptions
{
    AssociationOptions association;
    PowerOptions power;
    /// Stopping threshold on the subtractive value; non-positive means 1e-3 * N_u.
    double varsigma = 0.0;
    int max_outer = 20;
    int max_inner = 10;
    double inner_tol = 1e-4;
    /// When set, association is frozen (power-control-only baselines).
    std::optional<Association> fixed_association;
    bool keep_traces = false;
};

struct OuterTraceRow
{
    int outer_iteration = 0;
    double eta = 0.0; // price used by this iteration's subproblem
    double varsigma_star = 0.0;
    int inner_iterations = 0;
    double total_power_w = 0.0;
    double sum_utility = 0.0;
};

struct InnerResult
{
    Association assoc;
    PowerAllocation power;
    int iterations = 0;
    double objective = 0.0;
    /// Subproblem objective after every association and every power half-step.
    std::vector<double> half_step_objectives;
    int association_warnings = 0;
    int power_warnings = 0;
    std::vector<AssocTraceRow> last_association_trace;
    std::vector<PowerTraceRow> last_power_trace;
};

struct Solution
{
    Association assoc;
    PowerAllocation power;
    double eta_star = 0.0;
    std::vector<OuterTraceRow> outer_trace;
    /// uee after each outer iteration.
    std::vector<double> eta_history;
    int inner_iterations_total = 0;
    bool converged = false;
    int association_warnings = 0;
    int power_warnings = 0;
    std::vector<AssocTraceRow> last_association_trace;
    std::vector<PowerTraceRow> last_power_trace;

    int outer_iterations() const { return static_cast<int>(outer_trace.size()); }
    double final_varsigma() const { return outer_trace.empty() ? 0.0 : outer_trace.back().varsigma_star; }
};

/// Sum over users of ln(rate / utility unit) at the loads of `assoc`.
double sum_utility(const Scenario& scenario, const Association& assoc, const PowerAllocation& p);

/// Utility-energy efficiency: sum_utility / (total transmit power + circuit power).
double utility_energy_efficiency(const Scenario& scenario, const Association& assoc, const PowerAllocation& p);

/// sum_utility - eta * (total power + circuit power).
double subtractive_value(const Scenario& scenario, const Association& assoc,
                         const PowerAllocation& p, double eta);

/// Alternates association and power for a fixed eta. `incumbent`, when given, is kept
/// unless a new association is strictly better at the current power.
InnerResult inner_alternation(const Scenario& scenario, double eta, const PowerAllocation& p0,
                              const std::optional<Association>& incumbent,
                              const IuapcOptions& opts = {});

Solution iuapc_solve(const Scenario& scenario, const IuapcOptions& opts = {});

void write_outer_trace_csv(std::ostream& os, const std::vector<OuterTraceRow>& trace);

} // namespace uee
