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

#include "uee/association.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "uee/csv.hpp"
#include "uee/errors.hpp"

namespace uee {

Association Association::from_serving(std::vector<int> serving, int num_bss)
{
    if (num_bss < 1)
        throw DomainError("association: needs at least one base station");
    Association a;
    a.loads_.assign(num_bss, 0);
    for (std::size_t i = 0; i < serving.size(); ++i) {
        const int j = serving[i];
        if (j < 0 || j >= num_bss)
            throw DomainError("association: user " + std::to_string(i) + " mapped to invalid BS " +
                              std::to_string(j));
        ++a.loads_[j];
    }
    a.serving_ = std::move(serving);
    return a;
}

Eigen::MatrixXi Association::matrix() const
{
    Eigen::MatrixXi x = Eigen::MatrixXi::Zero(num_users(), num_bss());
    for (int i = 0; i < num_users(); ++i)
        x(i, serving_[i]) = 1;
    return x;
}

void Association::reassign(int user, int bs)
{
    --loads_[serving_[user]];
    ++loads_[bs];
    serving_[user] = bs;
}

UtilityWeights utility_weights(const Eigen::MatrixXd& sinr, double utility_bandwidth)
{
    UtilityWeights w;
    w.m.resize(sinr.rows(), sinr.cols());
    for (int i = 0; i < sinr.rows(); ++i) {
        for (int j = 0; j < sinr.cols(); ++j) {
            const double spectral = std::log1p(sinr(i, j));
            if (!(spectral > 0.0) || !std::isfinite(spectral))
                throw DomainError("utility_weights: SINR of user " + std::to_string(i) + " at BS " +
                                  std::to_string(j) + " is " + csv::num(sinr(i, j)) +
                                  "; ln(W ln(1+SINR)) is undefined");
            w.m(i, j) = std::log(utility_bandwidth * spectral);
        }
    }
    return w;
}

UtilityWeights utility_weights(const Scenario& scenario, const PowerAllocation& p)
{
    return utility_weights(sinr_matrix(scenario.channel.gains, p.watts, scenario.noise_power_w),
                           scenario.utility_bandwidth());
}

Association assign_users(const UtilityWeights& w, const Eigen::VectorXd& mu)
{
    std::vector<int> serving(w.num_users());
    for (int i = 0; i < w.num_users(); ++i) {
        int best = 0;
        double best_value = w.m(i, 0) - mu(0);
        for (int j = 1; j < w.num_bss(); ++j) {
            const double v = w.m(i, j) - mu(j);
            if (v > best_value) {
                best_value = v;
                best = j;
            }
        }
        serving[i] = best;
    }
    return Association::from_serving(std::move(serving), w.num_bss());
}

namespace {

double log_sum_exp(const Eigen::VectorXd& v)
{
    const double top = v.maxCoeff();
    return top + std::log((v.array() - top).exp().sum());
}

double xlogx(double k)
{
    return k > 0.0 ? k * std::log(k) : 0.0;
}

} // namespace

double update_nu(const Eigen::VectorXd& mu, int num_users, NuRule rule)
{
    const double lse = log_sum_exp(mu.array() - 1.0);
    if (rule == NuRule::log_mean_exp)
        return lse / num_users;
    return lse - std::log(static_cast<double>(num_users));
}

AssocDualState update_mu(const AssocDualState& state, const Association& assoc, double step,
                         int num_users, NuRule rule)
{
    AssocDualState next = state;
    for (int j = 0; j < state.mu.size(); ++j) {
        const double supply = std::exp(state.mu(j) - state.nu - 1.0);
        next.mu(j) = state.mu(j) - step * (supply - assoc.load(j));
    }
    next.nu = update_nu(next.mu, num_users, rule);
    next.iteration = state.iteration + 1;
    return next;
}

double association_objective(const Association& assoc, const UtilityWeights& w)
{
    double total = 0.0;
    for (int i = 0; i < assoc.num_users(); ++i)
        total += w.m(i, assoc.serving(i));
    for (int k : assoc.loads())
        total -= xlogx(k);
    return total;
}

double association_dual_value(const UtilityWeights& w, const Eigen::VectorXd& mu, double nu)
{
    double value = 0.0;
    for (int i = 0; i < w.num_users(); ++i)
        value += (w.m.row(i).transpose() - mu).maxCoeff();
    value += (mu.array() - nu - 1.0).exp().sum();
    value += nu * w.num_users();
    return value;
}

double load_mismatch(const AssocDualState& state, const Association& assoc)
{
    double worst = 0.0;
    for (int j = 0; j < state.mu.size(); ++j)
        worst = std::max(worst, std::abs(std::exp(state.mu(j) - state.nu - 1.0) - assoc.load(j)));
    return worst;
}

bool improve_association(Association& assoc, const UtilityWeights& w)
{
    // Exchange graph over BS nodes plus one sink node. An edge a->b moves the
    // best user of a to b; sink->a removes one unit of load from a, a->sink
    // adds one. Loads enter through the convex k ln k term, so the absence
    // of a positive-gain cycle certifies global optimality.
    const int nb = assoc.num_bss();
    const int sink = nb;
    const int nodes = nb + 1;
    const double inf = std::numeric_limits<double>::infinity();
    constexpr double eps = 1e-12;
    auto marginal = [](int k) { return xlogx(k) - xlogx(k - 1); };

    bool changed = false;
    double current = association_objective(assoc, w);
    for (int guard = 0; guard < 100000; ++guard) {
        Eigen::MatrixXd cost = Eigen::MatrixXd::Constant(nodes, nodes, inf);
        Eigen::MatrixXi mover = Eigen::MatrixXi::Constant(nodes, nodes, -1);
        for (int i = 0; i < assoc.num_users(); ++i) {
            const int a = assoc.serving(i);
            for (int b = 0; b < nb; ++b) {
                if (b == a)
                    continue;
                const double c = w.m(i, a) - w.m(i, b);
                if (c < cost(a, b)) {
                    cost(a, b) = c;
                    mover(a, b) = i;
                }
            }
        }
        for (int a = 0; a < nb; ++a) {
            if (assoc.load(a) > 0)
                cost(sink, a) = -marginal(assoc.load(a));
            cost(a, sink) = marginal(assoc.load(a) + 1);
        }

        std::vector<double> dist(nodes, 0.0);
        std::vector<int> pred(nodes, -1);
        int last = -1;
        for (int pass = 0; pass < nodes; ++pass) {
            last = -1;
            for (int u = 0; u < nodes; ++u)
                for (int v = 0; v < nodes; ++v)
                    if (u != v && cost(u, v) < inf && dist[u] + cost(u, v) < dist[v] - eps) {
                        dist[v] = dist[u] + cost(u, v);
                        pred[v] = u;
                        last = v;
                    }
            if (last < 0)
                break;
        }
        if (last < 0)
            break;

        int v = last;
        for (int step = 0; step < nodes; ++step)
            v = pred[v];
        std::vector<int> cycle{v};
        for (int u = pred[v]; u != v; u = pred[u])
            cycle.push_back(u);
        // cycle holds nodes in reverse edge order: pred[x] -> x

        Association trial = assoc;
        for (std::size_t n = 0; n < cycle.size(); ++n) {
            const int to = cycle[n];
            const int from = cycle[(n + 1) % cycle.size()];
            if (from != sink && to != sink)
                trial.reassign(mover(from, to), to);
        }
        const double value = association_objective(trial, w);
        if (!(value > current + eps))
            break;
        assoc = std::move(trial);
        current = value;
        changed = true;
    }
    return changed;
}

AssociationResult solve_association(const UtilityWeights& w, const AssociationOptions& opts)
{
    const int nu = w.num_users();
    AssociationResult result;
    AssocDualState state;
    state.mu = Eigen::VectorXd::Zero(w.num_bss());
    state.nu = update_nu(state.mu, nu, opts.nu_rule);

    double best = -std::numeric_limits<double>::infinity();
    for (int t = 1; t <= opts.max_iter; ++t) {
        Association current = assign_users(w, state.mu);
        const double objective = association_objective(current, w);
        const double mismatch = load_mismatch(state, current);
        result.trace.push_back({t, state.mu, current.loads(), objective, mismatch});
        if (objective > best) {
            best = objective;
            result.assoc = current;
        }
        result.dual = state;
        if (mismatch <= opts.tol) {
            result.converged = true;
            break;
        }
        state = update_mu(state, current, opts.step0 / std::sqrt(static_cast<double>(t)), nu,
                          opts.nu_rule);
    }
    if (opts.exact_polish)
        result.polish_improved = improve_association(result.assoc, w);
    result.objective = association_objective(result.assoc, w);
    return result;
}

void write_association_trace_csv(std::ostream& os, const std::vector<AssocTraceRow>& trace)
{
    const int nb = trace.empty() ? 0 : static_cast<int>(trace.front().mu.size());
    std::vector<std::string> header{"iteration"};
    for (int j = 0; j < nb; ++j)
        header.push_back("price_" + std::to_string(j));
    for (int j = 0; j < nb; ++j)
        header.push_back("load_" + std::to_string(j));
    header.push_back("objective");
    header.push_back("mismatch");
    csv::write_row(os, header);
    for (const auto& row : trace) {
        std::vector<std::string> fields{std::to_string(row.iteration)};
        for (int j = 0; j < nb; ++j)
            fields.push_back(csv::num(row.mu(j)));
        for (int j = 0; j < nb; ++j)
            fields.push_back(std::to_string(row.loads[j]));
        fields.push_back(csv::num(row.objective));
        fields.push_back(csv::num(row.mismatch));
        csv::write_row(os, fields);
    }
}

} // namespace uee
