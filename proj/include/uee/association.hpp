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

#include "uee/netmodel.hpp"

namespace uee {

/// Per-pair log-rate weights m_ij = ln(W ln(1 + SINR_ij)) at load one.
struct UtilityWeights
{
    Eigen::MatrixXd m;

    int num_users() const { return static_cast<int>(m.rows()); }
    int num_bss() const { return static_cast<int>(m.cols()); }
};

/// Single-BS association of every user, with the derived load vector.
class Association
{
public:
    Association() = default;

    /// Throws DomainError if any entry is outside [0, num_bss).
    static Association from_serving(std::vector<int> serving, int num_bss);

    int num_users() const { return static_cast<int>(serving_.size()); }
    int num_bss() const { return static_cast<int>(loads_.size()); }
    int serving(int user) const { return serving_[user]; }
    const std::vector<int>& serving() const { return serving_; }
    const std::vector<int>& loads() const { return loads_; }
    int load(int bs) const { return loads_[bs]; }
    int x(int user, int bs) const { return serving_[user] == bs ? 1 : 0; }
    Eigen::MatrixXi matrix() const;

    /// Moves one user, keeping the loads in sync.
    void reassign(int user, int bs);

    bool operator==(const Association& other) const { return serving_ == other.serving_; }

private:
    std::vector<int> serving_;
    std::vector<int> loads_;
};

struct AssocDualState
{
    Eigen::VectorXd mu;
    double nu = 0.0;
    int iteration = 0;
};

enum class NuRule {
    stationarity,  // ln sum exp(mu - 1) - ln N_u, keeps total supply equal to N_u
    log_mean_exp, // (ln sum exp(mu - 1)) / N_u
};

struct AssociationOptions
{
    double tol = 1e-3;
    int max_iter = 2000;
    double step0 = 1.0;
    NuRule nu_rule = NuRule::stationarity;
    bool exact_polish = true;
};

struct AssocTraceRow
{
    int iteration = 0;
    Eigen::VectorXd mu;
    std::vector<int> loads;
    double objective = 0.0;
    double mismatch = 0.0;
};

struct AssociationResult
{
    Association assoc;
    AssocDualState dual;
    std::vector<AssocTraceRow> trace;
    double objective = 0.0;
    bool converged = false;      // load mismatch reached tol
    bool polish_improved = false; // exchange pass beat the best dual iterate
};

/// Throws DomainError naming the first pair whose SINR makes the double log undefined.
UtilityWeights utility_weights(const Scenario& scenario, const PowerAllocation& p);
UtilityWeights utility_weights(const Eigen::MatrixXd& sinr, double utility_bandwidth);

/// Each user takes argmax_j (m_ij - mu_j), lowest index on ties.
Association assign_users(const UtilityWeights& w, const Eigen::VectorXd& mu);

double update_nu(const Eigen::VectorXd& mu, int num_users, NuRule rule = NuRule::stationarity);

/// One price step mu_j -= step (exp(mu_j - nu - 1) - k_j), then nu is refreshed.
AssocDualState update_mu(const AssocDualState& state, const Association& assoc, double step,
                         int num_users, NuRule rule = NuRule::stationarity);

/// sum x_ij m_ij - sum k_j ln k_j, with 0 ln 0 = 0.
double association_objective(const Association& assoc, const UtilityWeights& w);

/// Lagrangian at the price-optimal loads exp(mu - nu - 1) and the best-response assignment.
double association_dual_value(const UtilityWeights& w, const Eigen::VectorXd& mu, double nu);

/// max_j |exp(mu_j - nu - 1) - k_j|.
double load_mismatch(const AssocDualState& state, const Association& assoc);

/// Cancels improving exchange cycles until none is left; the result is a global maximizer
/// of association_objective. Returns true if anything changed.
bool improve_association(Association& assoc, const UtilityWeights& w);

AssociationResult solve_association(const UtilityWeights& w, const AssociationOptions& opts = {});

void write_association_trace_csv(std::ostream& os, const std::vector<AssocTraceRow>& trace);

} // namespace uee
