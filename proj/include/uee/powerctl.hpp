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
#include <vector>

#include <Eigen/Dense>

#include "uee/association.hpp"
#include "uee/netmodel.hpp"

namespace uee {

/// Fixed data of the log-domain power problem for one association and one price eta.
/// Gains are normalized by each user's serving gain.
struct PowerConstants
{
    std::vector<int> serving;
    std::vector<int> loads;
    Eigen::VectorXd log_noise;      // ln(noise / h_i,serving), per user
    Eigen::MatrixXd log_cross_gain; // ln(h_iq / h_i,serving); serving column is 0 and unused
    Eigen::VectorXd log_max_power;
    double eta = 0.0;

    int num_users() const { return static_cast<int>(serving.size()); }
    int num_bss() const { return static_cast<int>(log_max_power.size()); }
};

PowerConstants power_constants(const Scenario& scenario, const Association& assoc, double eta);

/// Log-domain primal: rho = ln p, theta = ln(target SINR), omega and s are the
/// log noise and log interference shares of user i. s(i, serving) is unused.
struct PowerPrimal
{
    Eigen::VectorXd rho;
    Eigen::VectorXd theta;
    Eigen::VectorXd omega;
    Eigen::MatrixXd s;
};

struct PowerDual
{
    Eigen::VectorXd a;    // SINR constraint, >= 0
    Eigen::VectorXd b;    // max power, >= 0
    Eigen::VectorXd zeta; // noise share equality
    Eigen::MatrixXd chi;  // interference share equalities; serving column unused
};

enum class PowerMethod {
    /// Multipliers rebuilt from the stationarity conditions at the current
    /// power, closed-form power target, backtracking step on the objective.
    consistent,
    /// Plain projected subgradient on all four multiplier blocks.
    dual_subgradient,
};

struct PowerOptions
{
    PowerMethod method = PowerMethod::consistent;
    double tol = 1e-4;
    int max_iter = 5000;
    double step0 = 0.1;
    double eta_floor = 1e-9;
    /// Power given to a BS that serves nobody, as a fraction of its maximum.
    double idle_power_fraction = 1e-9;
};

struct PowerResiduals
{
    double equality = 0.0;   // max |e^omega - e^(theta - rho_j + beta)| and the s analogue
    double inequality = 0.0; // max violation of the SINR share and power-limit constraints
};

struct PowerTraceRow
{
    int iteration = 0;
    double objective = 0.0;
    double equality_residual = 0.0;
    double inequality_violation = 0.0;
    int clamp_count = 0;
};

struct PowerResult
{
    PowerAllocation power;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    bool kept_warm_start = false; // solver iterate was worse than the starting point
    bool bypassed = false;        // eta at or below the floor, max power returned
    PowerResiduals residuals;
    std::vector<PowerTraceRow> trace;
};

/// e^x / ((1 + e^x) ln(1 + e^x)); strictly decreasing from 1 to 0.
double f_eval(double x);

/// Inverse of f_eval on (0, 1) by bisection; throws DomainError outside.
double f_inverse(double y);

/// Closed-form power target ln(c_j / eta) from the multipliers, capped at ln P^m.
/// Each floored log argument adds one to *clamps.
Eigen::VectorXd rho_update(const PowerDual& dual, const PowerConstants& c, int* clamps = nullptr);

/// Primal minimizer of the Lagrangian for the given multipliers.
PowerPrimal primal_update(const PowerDual& dual, const PowerConstants& c, int* clamps = nullptr);

/// Projected subgradient step on the multipliers, with the interior floors applied.
PowerDual dual_update(const PowerPrimal& primal, const PowerDual& dual, const PowerConstants& c,
                      double step);

/// Primal that satisfies every equality and the SINR share constraint with equality at rho.
PowerPrimal primal_from_power(const PowerConstants& c, const Eigen::VectorXd& rho);

/// Multipliers consistent with stationarity in theta, omega and s at `primal`.
PowerDual kkt_multipliers(const PowerPrimal& primal, const PowerConstants& c);

PowerResiduals residuals(const PowerPrimal& primal, const PowerConstants& c);

/// sum_i ln c_i - eta * sum_j p_j with the loads of `assoc`.
double power_objective(const Scenario& scenario, const Association& assoc,
                       const PowerAllocation& p, double eta);

/// Power control for a fixed association, warm-started from p0.
/// The returned objective is never below the objective at p0.
PowerResult solve_power(const Scenario& scenario, const Association& assoc, double eta,
                        const PowerAllocation& p0, const PowerOptions& opts = {});

void write_power_trace_csv(std::ostream& os, const std::vector<PowerTraceRow>& trace);

} // namespace uee
