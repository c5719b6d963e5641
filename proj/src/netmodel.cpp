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

#include "uee/netmodel.hpp"

#include <cmath>
#include <random>
#include <string>

#include "uee/errors.hpp"

namespace uee {

double distance_m(const Position& a, const Position& b)
{
    return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
}

Eigen::VectorXd Scenario::max_powers() const
{
    Eigen::VectorXd p(num_bss());
    for (int j = 0; j < num_bss(); ++j)
        p(j) = bss[j].max_power_w;
    return p;
}

const Eigen::MatrixXd& Scenario::gains(ChannelBasis basis) const
{
    switch (basis) {
    case ChannelBasis::largescale: return channel.largescale_gains;
    case ChannelBasis::pathloss: return channel.pathloss_gains;
    case ChannelBasis::full: break;
    }
    return channel.gains;
}

namespace {

void check_gain_matrix(const Eigen::MatrixXd& g, int nu, int nb, const char* name)
{
    if (g.rows() != nu || g.cols() != nb)
        throw DomainError(std::string("scenario: ") + name + " has wrong shape");
    for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nb; ++j)
            if (!(g(i, j) > 0.0) || !std::isfinite(g(i, j)))
                throw DomainError(std::string("scenario: ") + name + " entry (" + std::to_string(i) +
                                  ", " + std::to_string(j) + ") is not positive and finite");
}

} // namespace

void validate(const Scenario& s)
{
    if (s.num_bss() < 1)
        throw DomainError("scenario: needs at least one base station");
    if (s.num_users() < 1)
        throw DomainError("scenario: needs at least one user");
    if (!(s.bandwidth_hz > 0.0))
        throw DomainError("scenario: bandwidth must be positive");
    if (!(s.noise_power_w > 0.0))
        throw DomainError("scenario: noise power must be positive");
    if (!(s.circuit_power_w >= 0.0))
        throw DomainError("scenario: circuit power must be nonnegative");
    if (!(s.utility_rate_unit > 0.0))
        throw DomainError("scenario: utility rate unit must be positive");
    for (const auto& bs : s.bss)
        if (!(bs.max_power_w > 0.0))
            throw DomainError("scenario: BS " + std::to_string(bs.id) + " max power must be positive");
    check_gain_matrix(s.channel.gains, s.num_users(), s.num_bss(), "gains");
    check_gain_matrix(s.channel.largescale_gains, s.num_users(), s.num_bss(), "largescale_gains");
    check_gain_matrix(s.channel.pathloss_gains, s.num_users(), s.num_bss(), "pathloss_gains");
}

Scenario make_scenario(const Eigen::MatrixXd& gains, const Eigen::VectorXd& max_power_w,
                       double bandwidth_hz, double noise_power_w, double circuit_power_w)
{
    Scenario s;
    const int nb = static_cast<int>(gains.cols());
    for (int j = 0; j < nb; ++j) {
        BaseStation bs;
        bs.id = j;
        bs.kind = j == 0 ? BsKind::macro : BsKind::small;
        bs.max_power_w = max_power_w(j);
        s.bss.push_back(bs);
    }
    for (int i = 0; i < gains.rows(); ++i)
        s.users.push_back(User{i, {}});
    s.channel = {gains, gains, gains};
    s.bandwidth_hz = bandwidth_hz;
    s.noise_power_w = noise_power_w;
    s.circuit_power_w = circuit_power_w;
    validate(s);
    return s;
}

void validate(const NetworkConfig& c)
{
    if (!(c.bandwidth_hz > 0.0))
        throw ConfigError("bandwidth_hz must be positive");
    if (!(c.cell_radius_m > 0.0))
        throw ConfigError("cell_radius_m must be positive");
    if (c.n_macro < 1)
        throw ConfigError("n_macro must be at least 1");
    if (c.n_small < 0)
        throw ConfigError("n_small must be nonnegative");
    if (c.n_users < 1)
        throw ConfigError("n_users must be at least 1");
    if (!(c.circuit_power_w >= 0.0))
        throw ConfigError("circuit_power_w must be nonnegative");
    if (!(c.shadowing_std_db >= 0.0))
        throw ConfigError("shadowing_std_db must be nonnegative");
    if (!(c.small_bs_guard_m >= 0.0) || c.small_bs_guard_m >= c.cell_radius_m)
        throw ConfigError("small_bs_guard_m must lie in [0, cell_radius_m)");
    if (!(c.min_user_distance_m > 0.0) || c.min_user_distance_m >= c.cell_radius_m / 2)
        throw ConfigError("min_user_distance_m must lie in (0, cell_radius_m / 2)");
    if (!(c.utility_rate_unit > 0.0))
        throw ConfigError("utility rate unit must be positive");
}

double pathloss_db(double d_km)
{
    if (!(d_km > 0.0))
        throw DomainError("pathloss_db: distance must be positive, got " + std::to_string(d_km));
    return 128.1 + 37.6 * std::log10(d_km);
}

double power_from_density(double dbm_per_hz, double bandwidth_hz)
{
    if (!(bandwidth_hz > 0.0))
        throw DomainError("power_from_density: bandwidth must be positive");
    return std::pow(10.0, dbm_per_hz / 10.0) / 1000.0 * bandwidth_hz;
}

Scenario generate_scenario(const NetworkConfig& config, std::uint64_t seed)
{
    validate(config);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double radius = config.cell_radius_m;

    auto uniform_in_disc = [&] {
        const double r = radius * std::sqrt(unit(rng));
        const double phi = 2.0 * std::numbers::pi * unit(rng);
        return Position{r * std::cos(phi), r * std::sin(phi)};
    };

    Scenario s;
    s.seed = seed;
    s.bandwidth_hz = config.bandwidth_hz;
    s.noise_power_w = power_from_density(config.noise_density_dbm_per_hz, config.bandwidth_hz);
    s.circuit_power_w = config.circuit_power_w;
    s.utility_rate_unit = config.utility_rate_unit;

    const double macro_power = power_from_density(config.macro_power_dbm_per_hz, config.bandwidth_hz);
    const double small_power = power_from_density(config.small_power_dbm_per_hz, config.bandwidth_hz);

    for (int m = 0; m < config.n_macro; ++m) {
        Position pos;
        if (m > 0) {
            const double phi = 2.0 * std::numbers::pi * (m - 1) / (config.n_macro - 1);
            pos = {0.5 * radius * std::cos(phi), 0.5 * radius * std::sin(phi)};
        }
        s.bss.push_back({static_cast<int>(s.bss.size()), BsKind::macro, pos, macro_power,
                         config.macro_power_dbm_per_hz});
    }
    for (int k = 0; k < config.n_small; ++k) {
        Position pos;
        do {
            pos = uniform_in_disc();
        } while (distance_m(pos, Position{}) < config.small_bs_guard_m);
        s.bss.push_back({static_cast<int>(s.bss.size()), BsKind::small, pos, small_power,
                         config.small_power_dbm_per_hz});
    }

    for (int i = 0; i < config.n_users; ++i) {
        Position pos;
        bool ok = false;
        while (!ok) {
            pos = uniform_in_disc();
            ok = true;
            for (const auto& bs : s.bss)
                if (distance_m(pos, bs.position) < config.min_user_distance_m)
                    ok = false;
        }
        s.users.push_back({i, pos});
    }

    const int nu = s.num_users();
    const int nb = s.num_bss();
    s.channel.pathloss_gains.resize(nu, nb);
    s.channel.largescale_gains.resize(nu, nb);
    s.channel.gains.resize(nu, nb);

    std::normal_distribution<double> shadow(0.0, config.shadowing_std_db);
    std::exponential_distribution<double> rayleigh_power(1.0);
    for (int i = 0; i < nu; ++i) {
        for (int j = 0; j < nb; ++j) {
            const double d_km = distance_m(s.users[i].position, s.bss[j].position) / 1000.0;
            const double pl = pathloss_db(d_km);
            const double sh = shadow(rng);
            s.channel.pathloss_gains(i, j) = std::pow(10.0, -pl / 10.0);
            s.channel.largescale_gains(i, j) = std::pow(10.0, -(pl + sh) / 10.0);
            s.channel.gains(i, j) = s.channel.largescale_gains(i, j);
        }
    }
    if (config.fast_fading) {
        for (int i = 0; i < nu; ++i)
            for (int j = 0; j < nb; ++j)
                s.channel.gains(i, j) *= rayleigh_power(rng);
    }
    validate(s);
    return s;
}

Eigen::MatrixXd sinr_matrix(const Eigen::MatrixXd& gains, const Eigen::VectorXd& power_w,
                            double noise_power_w)
{
    const Eigen::MatrixXd rx = gains * power_w.asDiagonal();
    Eigen::MatrixXd out(gains.rows(), gains.cols());
    for (int i = 0; i < gains.rows(); ++i)
        for (int j = 0; j < gains.cols(); ++j) {
            // interference summed explicitly; total - rx loses precision when one term dominates
            double interference = 0.0;
            for (int q = 0; q < gains.cols(); ++q)
                if (q != j)
                    interference += rx(i, q);
            out(i, j) = rx(i, j) / (interference + noise_power_w);
        }
    return out;
}

double sinr(const Scenario& scenario, int user, int bs, const PowerAllocation& p)
{
    const auto& h = scenario.channel.gains;
    double interference = 0.0;
    for (int q = 0; q < scenario.num_bss(); ++q)
        if (q != bs)
            interference += h(user, q) * p.watts(q);
    return h(user, bs) * p.watts(bs) / (interference + scenario.noise_power_w);
}

double rate(int load, double sinr_value, double bandwidth_hz)
{
    if (load < 1)
        throw DomainError("rate: load must be at least 1, got " + std::to_string(load));
    if (!(sinr_value >= 0.0))
        throw DomainError("rate: sinr must be nonnegative");
    return bandwidth_hz / load * std::log1p(sinr_value);
}

} // namespace uee
