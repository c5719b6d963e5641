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

#include "uee/powerctl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "uee/csv.hpp"
#include "uee/errors.hpp"

namespace uee {

namespace {

constexpr double price_floor = 1e-12;
constexpr double share_lo = 1e-9;
constexpr double share_hi = 1.0 - 1e-9;
constexpr double multiplier_floor = 1e-12;

double softplus(double x)
{
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// c_j: the coefficient multiplying e^rho_j in the Lagrangian, up to the eta term.
Eigen::VectorXd power_price(const PowerDual& d, const PowerConstants& c)
{
    Eigen::VectorXd price = -d.b;
    for (int i = 0; i < c.num_users(); ++i) {
        const int j = c.serving[i];
        price(j) -= d.zeta(i);
        for (int q = 0; q < c.num_bss(); ++q) {
            if (q == j)
                continue;
            price(j) -= d.chi(i, q);
            price(q) += d.chi(i, q);
        }
    }
    return price;
}

} // namespace

PowerConstants power_constants(const Scenario& scenario, const Association& assoc, double eta)
{
    const auto& h = scenario.channel.gains;
    PowerConstants c;
    c.serving = assoc.serving();
    c.loads = assoc.loads();
    c.eta = eta;
    c.log_max_power = scenario.max_powers().array().log();
    c.log_noise.resize(assoc.num_users());
    c.log_cross_gain = Eigen::MatrixXd::Zero(assoc.num_users(), assoc.num_bss());
    for (int i = 0; i < assoc.num_users(); ++i) {
        const int j = c.serving[i];
        c.log_noise(i) = std::log(scenario.noise_power_w / h(i, j));
        for (int q = 0; q < assoc.num_bss(); ++q)
            if (q != j)
                c.log_cross_gain(i, q) = std::log(h(i, q) / h(i, j));
    }
    return c;
}

double f_eval(double x)
{
    if (x < -30.0) {
        // series in e^x keeps the ratio accurate once both factors underflow
        const double ex = std::exp(x);
        return 1.0 / ((1.0 + ex) * (1.0 - ex / 2.0 + ex * ex / 3.0));
    }
    const double logistic = 1.0 / (1.0 + std::exp(-x));
    return logistic / softplus(x);
}

double f_inverse(double y)
{
    if (!(y > 0.0 && y < 1.0))
        throw DomainError("f_inverse: argument must lie in (0, 1), got " + csv::num(y));
    double lo = -1.0;
    double hi = 1.0;
    while (f_eval(lo) <= y && lo > -1e6)
        lo *= 2.0;
    while (f_eval(hi) >= y && hi < 1e300)
        hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        if (f_eval(mid) > y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Eigen::VectorXd rho_update(const PowerDual& dual, const PowerConstants& c, int* clamps)
{
    const Eigen::VectorXd price = power_price(dual, c);
    Eigen::VectorXd rho(c.num_bss());
    for (int j = 0; j < c.num_bss(); ++j) {
        double arg = price(j);
        if (arg < price_floor) {
            arg = price_floor;
            if (clamps)
                ++*clamps;
        }
        rho(j) = std::min(std::log(arg) - std::log(c.eta), c.log_max_power(j));
    }
    return rho;
}

PowerPrimal primal_update(const PowerDual& dual, const PowerConstants& c, int* clamps)
{
    PowerPrimal x;
    x.rho = rho_update(dual, c, clamps);
    const int nu = c.num_users();
    x.theta.resize(nu);
    x.omega.resize(nu);
    x.s = Eigen::MatrixXd::Zero(nu, c.num_bss());
    for (int i = 0; i < nu; ++i) {
        const int j = c.serving[i];
        double share = -dual.zeta(i);
        for (int q = 0; q < c.num_bss(); ++q)
            if (q != j)
                share -= dual.chi(i, q);
        const double clamped = std::clamp(share, share_lo, share_hi);
        if (clamped != share && clamps)
            ++*clamps;
        x.theta(i) = f_inverse(clamped);
        x.omega(i) = std::log(-dual.zeta(i) / dual.a(i));
        for (int q = 0; q < c.num_bss(); ++q)
            if (q != j)
                x.s(i, q) = std::log(-dual.chi(i, q) / dual.a(i));
    }
    return x;
}

PowerDual dual_update(const PowerPrimal& x, const PowerDual& dual, const PowerConstants& c,
                      double step)
{
    PowerDual next = dual;
    for (int i = 0; i < c.num_users(); ++i) {
        const int j = c.serving[i];
        double share = std::exp(x.omega(i));
        for (int q = 0; q < c.num_bss(); ++q) {
            if (q == j)
                continue;
            share += std::exp(x.s(i, q));
            const double r = x.s(i, q) - x.theta(i) + x.rho(j) - x.rho(q) - c.log_cross_gain(i, q);
            next.chi(i, q) = std::min(dual.chi(i, q) + step * r, -multiplier_floor);
        }
        next.a(i) = std::max(dual.a(i) + step * (share - 1.0), multiplier_floor);
        const double r = x.omega(i) - x.theta(i) + x.rho(j) - c.log_noise(i);
        next.zeta(i) = std::min(dual.zeta(i) + step * r, -multiplier_floor);
    }
    for (int j = 0; j < c.num_bss(); ++j)
        next.b(j) = std::max(0.0, dual.b(j) + step * (x.rho(j) - c.log_max_power(j)));
    return next;
}

PowerPrimal primal_from_power(const PowerConstants& c, const Eigen::VectorXd& rho)
{
    const int nu = c.num_users();
    PowerPrimal x;
    x.rho = rho;
    x.theta.resize(nu);
    x.omega.resize(nu);
    x.s = Eigen::MatrixXd::Zero(nu, c.num_bss());
    for (int i = 0; i < nu; ++i) {
        const int j = c.serving[i];
        // ln(noise + interference), normalized by the serving gain
        double top = c.log_noise(i);
        for (int q = 0; q < c.num_bss(); ++q)
            if (q != j)
                top = std::max(top, rho(q) + c.log_cross_gain(i, q));
        double sum = std::exp(c.log_noise(i) - top);
        for (int q = 0; q < c.num_bss(); ++q)
            if (q != j)
                sum += std::exp(rho(q) + c.log_cross_gain(i, q) - top);
        const double log_denominator = top + std::log(sum);
        x.theta(i) = rho(j) - log_denominator;
        x.omega(i) = c.log_noise(i) - log_denominator;
        for (int q = 0; q < c.num_bss(); ++q)
            if (q != j)
                x.s(i, q) = rho(q) + c.log_cross_gain(i, q) - log_denominator;
    }
    return x;
}

PowerDual kkt_multipliers(const PowerPrimal& x, const PowerConstants& c)
{
    const int nu = c.num_users();
    PowerDual d;
    d.a.resize(nu);
    d.zeta.resize(nu);
    d.chi = Eigen::MatrixXd::Zero(nu, c.num_bss());
    d.b = Eigen::VectorXd::Zero(c.num_bss());
    for (int i = 0; i < nu; ++i) {
        const int j = c.serving[i];
        d.a(i) = f_eval(x.theta(i));
        d.zeta(i) = -d.a(i) * std::exp(x.omega(i));
        for (int q = 0; q < c.num_bss(); ++q)
            if (q != j)
                d.chi(i, q) = -d.a(i) * std::exp(x.s(i, q));
    }
    const Eigen::VectorXd price = power_price(d, c);
    for (int j = 0; j < c.num_bss(); ++j)
        d.b(j) = std::max(0.0, price(j) - c.eta * std::exp(c.log_max_power(j)));
    return d;
}

PowerResiduals residuals(const PowerPrimal& x, const PowerConstants& c)
{
    PowerResiduals r;
    for (int i = 0; i < c.num_users(); ++i) {
        const int j = c.serving[i];
        double share = std::exp(x.omega(i));
        r.equality = std::max(r.equality, std::abs(std::exp(x.omega(i)) -
                                                   std::exp(x.theta(i) - x.rho(j) + c.log_noise(i))));
        for (int q = 0; q < c.num_bss(); ++q) {
            if (q == j)
                continue;
            share += std::exp(x.s(i, q));
            const double target = x.theta(i) - x.rho(j) + x.rho(q) + c.log_cross_gain(i, q);
            r.equality = std::max(r.equality, std::abs(std::exp(x.s(i, q)) - std::exp(target)));
        }
        r.inequality = std::max(r.inequality, share - 1.0);
    }
    for (int j = 0; j < c.num_bss(); ++j)
        r.inequality = std::max(r.inequality, x.rho(j) - c.log_max_power(j));
    return r;
}

double power_objective(const Scenario& scenario, const Association& assoc,
                       const PowerAllocation& p, double eta)
{
    const double wu = scenario.utility_bandwidth();
    double total = 0.0;
    for (int i = 0; i < assoc.num_users(); ++i) {
        const int j = assoc.serving(i);
        const double spectral = std::log1p(sinr(scenario, i, j, p));
        if (!(spectral > 0.0))
            throw DomainError("power_objective: user " + std::to_string(i) +
                              " has zero SINR at its serving BS " + std::to_string(j));
        total += std::log(wu / assoc.load(j) * spectral);
    }
    return total - eta * p.total();
}

namespace {

PowerAllocation from_log(const Eigen::VectorXd& rho)
{
    return PowerAllocation{rho.array().exp()};
}

void solve_consistent(const Scenario& scenario, const Association& assoc,
                      const PowerConstants& c, const PowerOptions& opts,
                      const Eigen::VectorXd& log_floor, PowerResult& out)
{
    Eigen::VectorXd rho = out.power.watts.array().log();
    for (int j = 0; j < c.num_bss(); ++j)
        rho(j) = c.loads[j] > 0 ? std::clamp(rho(j), log_floor(j), c.log_max_power(j)) : log_floor(j);
    double objective = power_objective(scenario, assoc, from_log(rho), c.eta);
    double alpha = 1.0;

    for (int t = 1; t <= opts.max_iter; ++t) {
        const PowerPrimal x = primal_from_power(c, rho);
        const PowerDual d = kkt_multipliers(x, c);
        int clamps = 0;
        Eigen::VectorXd target = rho_update(d, c, &clamps);
        double gap = 0.0;
        for (int j = 0; j < c.num_bss(); ++j) {
            target(j) = c.loads[j] > 0 ? std::max(target(j), log_floor(j)) : log_floor(j);
            gap = std::max(gap, std::abs(target(j) - rho(j)));
        }
        const PowerResiduals r = residuals(x, c);
        out.trace.push_back({t, objective, r.equality, r.inequality, clamps});
        out.iterations = t;
        out.residuals = r;
        if (gap <= opts.tol) {
            out.converged = true;
            break;
        }

        const Eigen::VectorXd direction = target - rho;
        alpha = std::min(1.0, 2.0 * alpha);
        bool moved = false;
        while (alpha > 1e-12) {
            const Eigen::VectorXd candidate = rho + alpha * direction;
            const double value = power_objective(scenario, assoc, from_log(candidate), c.eta);
            if (value >= objective) {
                rho = candidate;
                objective = value;
                moved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!moved)
            break;
    }
    out.power = from_log(rho);
    out.objective = objective;
    out.residuals = residuals(primal_from_power(c, rho), c);
}

void solve_subgradient(const Scenario& scenario, const Association& assoc,
                       const PowerConstants& c, const PowerOptions& opts, PowerResult& out)
{
    const int nu = c.num_users();
    const int nb = c.num_bss();
    PowerDual d;
    d.a = Eigen::VectorXd::Ones(nu);
    d.b = Eigen::VectorXd::Zero(nb);
    d.zeta = Eigen::VectorXd::Constant(nu, -1.0);
    d.chi = Eigen::MatrixXd::Constant(nu, nb, -0.1);

    double best = -std::numeric_limits<double>::infinity();
    for (int t = 1; t <= opts.max_iter; ++t) {
        int clamps = 0;
        const PowerPrimal x = primal_update(d, c, &clamps);
        const PowerResiduals r = residuals(x, c);
        const PowerAllocation p = from_log(x.rho);
        double objective = -std::numeric_limits<double>::infinity();
        try {
            objective = power_objective(scenario, assoc, p, c.eta);
        } catch (const DomainError&) {
            // power underflowed to zero on a serving BS; not a usable iterate
        }
        out.trace.push_back({t, objective, r.equality, r.inequality, clamps});
        out.iterations = t;
        if (objective > best) {
            best = objective;
            out.power = p;
            out.objective = objective;
            out.residuals = r;
        }
        if (std::max(r.equality, r.inequality) <= opts.tol) {
            out.converged = true;
            break;
        }
        d = dual_update(x, d, c, opts.step0 / std::sqrt(static_cast<double>(t)));
    }
}

} // namespace

PowerResult solve_power(const Scenario& scenario, const Association& assoc, double eta,
                        const PowerAllocation& p0, const PowerOptions& opts)
{
    const Eigen::VectorXd pmax = scenario.max_powers();
    if (p0.size() != scenario.num_bss() || assoc.num_users() != scenario.num_users() ||
        assoc.num_bss() != scenario.num_bss())
        throw DomainError("solve_power: dimension mismatch between scenario, association and power");
    for (int j = 0; j < p0.size(); ++j)
        if (!(p0.watts(j) > 0.0) || p0.watts(j) > pmax(j) * (1.0 + 1e-12))
            throw DomainError("solve_power: warm start power of BS " + std::to_string(j) +
                              " is outside (0, P^m]");

    const double start_objective = power_objective(scenario, assoc, p0, eta);
    PowerResult out;

    if (eta <= opts.eta_floor) {
        out.bypassed = true;
        out.converged = true;
        out.power = PowerAllocation{pmax};
        out.objective = power_objective(scenario, assoc, out.power, eta);
    } else {
        const PowerConstants c = power_constants(scenario, assoc, eta);
        if (opts.method == PowerMethod::consistent) {
            out.power = p0;
            const Eigen::VectorXd log_floor = (pmax * opts.idle_power_fraction).array().log();
            solve_consistent(scenario, assoc, c, opts, log_floor, out);
        } else {
            out.objective = -std::numeric_limits<double>::infinity();
            solve_subgradient(scenario, assoc, c, opts, out);
        }
    }

    if (!(out.objective >= start_objective)) {
        out.power = p0;
        out.objective = start_objective;
        out.kept_warm_start = true;
    }
    return out;
}

void write_power_trace_csv(std::ostream& os, const std::vector<PowerTraceRow>& trace)
{
    csv::write_row(os, {"iteration", "objective", "max_equality_residual", "max_inequality_violation",
                        "clamp_count"});
    for (const auto& row : trace)
        csv::write_row(os, {std::to_string(row.iteration), csv::num(row.objective),
                            csv::num(row.equality_residual), csv::num(row.inequality_violation),
                            std::to_string(row.clamp_count)});
}

} // namespace uee
