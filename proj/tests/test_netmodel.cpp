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

#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "uee/errors.hpp"
#include "uee/netmodel.hpp"

using namespace uee;

TEST_CASE("pathloss follows the urban macro law")
{
    CHECK(pathloss_db(1.0) == doctest::Approx(128.1).epsilon(1e-12));
    CHECK(pathloss_db(0.1) == doctest::Approx(90.5).epsilon(1e-12));
    const double half_km = 128.1 + 37.6 * std::log10(0.5);
    CHECK(pathloss_db(0.5) == doctest::Approx(half_km).epsilon(1e-12));
    CHECK(std::abs(pathloss_db(0.5) - 116.783) < 5e-3);
    CHECK_THROWS_AS(pathloss_db(0.0), DomainError);
    CHECK_THROWS_AS(pathloss_db(-1.0), DomainError);
}

TEST_CASE("power densities convert to Watts")
{
    CHECK(power_from_density(-27.0, 1e7) == doctest::Approx(std::pow(10.0, 1.3)).epsilon(1e-12));
    CHECK(power_from_density(-27.0, 1e7) == doctest::Approx(19.95).epsilon(1e-3));
    CHECK(power_from_density(-47.0, 1e7) == doctest::Approx(0.1995).epsilon(1e-3));
    CHECK(power_from_density(0.0, 1000.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(power_from_density(0.0, 0.0), DomainError);
}

TEST_CASE("generated scenarios are deterministic and well formed")
{
    const NetworkConfig cfg;
    const Scenario a = generate_scenario(cfg, 42);
    const Scenario b = generate_scenario(cfg, 42);
    CHECK(a.channel.gains == b.channel.gains);
    CHECK(a.channel.largescale_gains == b.channel.largescale_gains);
    CHECK(a.channel.pathloss_gains == b.channel.pathloss_gains);
    for (int i = 0; i < a.num_users(); ++i) {
        CHECK(a.users[i].position.x_m == b.users[i].position.x_m);
        CHECK(a.users[i].position.y_m == b.users[i].position.y_m);
    }
    CHECK_FALSE(generate_scenario(cfg, 43).channel.gains == a.channel.gains);

    REQUIRE(a.num_users() == 30);
    REQUIRE(a.num_bss() == 4);
    CHECK(a.channel.gains.rows() == 30);
    CHECK(a.channel.gains.cols() == 4);
    CHECK((a.channel.gains.array() > 0.0).all());
    CHECK(a.channel.gains.allFinite());
    CHECK(a.channel.gains == a.channel.largescale_gains);

    CHECK(a.bss[0].kind == BsKind::macro);
    CHECK(a.bss[0].position.x_m == 0.0);
    CHECK(a.bss[0].position.y_m == 0.0);
    CHECK(a.bss[0].max_power_w > a.bss[1].max_power_w);
    for (int j = 1; j < 4; ++j) {
        CHECK(a.bss[j].kind == BsKind::small);
        CHECK(distance_m(a.bss[j].position, {}) >= cfg.small_bs_guard_m);
        CHECK(distance_m(a.bss[j].position, {}) <= cfg.cell_radius_m);
    }
    for (const auto& u : a.users) {
        CHECK(distance_m(u.position, {}) <= cfg.cell_radius_m);
        for (const auto& bs : a.bss)
            CHECK(distance_m(u.position, bs.position) >= cfg.min_user_distance_m);
    }
    CHECK(a.noise_power_w == doctest::Approx(std::pow(10.0, -17.4) / 1000.0 * 1e7).epsilon(1e-12));
}

TEST_CASE("shadowing matches the configured log-normal law")
{
    const NetworkConfig cfg;
    double sum = 0.0, sum2 = 0.0;
    int n = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const Scenario s = generate_scenario(cfg, seed);
        for (int i = 0; i < s.num_users(); ++i)
            for (int j = 0; j < s.num_bss(); ++j) {
                const double db = 10.0 * std::log10(s.channel.pathloss_gains(i, j) /
                                                    s.channel.largescale_gains(i, j));
                sum += db;
                sum2 += db * db;
                ++n;
            }
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sum2 / n - mean * mean);
    CHECK(std::abs(mean) < 1.0);
    CHECK(std::abs(sd - 8.0) < 1.0);
}

TEST_CASE("fast fading only touches the full gain matrix")
{
    NetworkConfig cfg;
    cfg.fast_fading = true;
    const Scenario s = generate_scenario(cfg, 5);
    CHECK_FALSE(s.channel.gains == s.channel.largescale_gains);
    NetworkConfig plain;
    CHECK(generate_scenario(plain, 5).channel.largescale_gains == s.channel.largescale_gains);
}

TEST_CASE("invalid network configs are rejected")
{
    NetworkConfig cfg;
    cfg.n_users = 0;
    CHECK_THROWS_AS(generate_scenario(cfg, 1), ConfigError);
    cfg = {};
    cfg.cell_radius_m = -1.0;
    CHECK_THROWS_AS(generate_scenario(cfg, 1), ConfigError);
    cfg = {};
    cfg.n_macro = 0;
    CHECK_THROWS_AS(generate_scenario(cfg, 1), ConfigError);
}

TEST_CASE("sinr")
{
    SUBCASE("single BS has no interference")
    {
        const Scenario s = make_scenario(Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Ones(1), 1.0, 1.0, 0.0);
        CHECK(sinr(s, 0, 0, PowerAllocation{Eigen::VectorXd::Ones(1)}) == 1.0);
    }
    SUBCASE("symmetric interference")
    {
        const Scenario s = make_scenario(Eigen::MatrixXd::Ones(1, 2), Eigen::VectorXd::Ones(2), 1.0, 1.0, 0.0);
        CHECK(sinr(s, 0, 0, PowerAllocation{Eigen::VectorXd::Ones(2)}) == 0.5);
    }
    SUBCASE("random instances match the summation oracle")
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> pw(0.01, 20.0);
        for (int rep = 0; rep < 20; ++rep) {
            const Eigen::MatrixXd h = oracle::random_gains(rng, 6, 4, -130.0, -70.0);
            Eigen::VectorXd p(4);
            for (int j = 0; j < 4; ++j)
                p(j) = pw(rng);
            const double noise = 1e-13;
            const Scenario s = make_scenario(h, p, 1e7, noise, 1.0);
            const Eigen::MatrixXd table = sinr_matrix(h, p, noise);
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 4; ++j) {
                    const double ref = oracle::sinr(h, p, noise, i, j);
                    CHECK(sinr(s, i, j, PowerAllocation{p}) == doctest::Approx(ref).epsilon(1e-13));
                    CHECK(table(i, j) == doctest::Approx(ref).epsilon(1e-13));
                }
        }
    }
    SUBCASE("scaling every gain of a user and the noise leaves sinr unchanged")
    {
        std::mt19937_64 rng(3);
        const Eigen::MatrixXd h = oracle::random_gains(rng, 3, 4, -120.0, -80.0);
        const Eigen::VectorXd p = Eigen::VectorXd::LinSpaced(4, 0.5, 3.0);
        for (double c : {1e-3, 0.7, 2.0, 1e5}) {
            const Eigen::MatrixXd base = sinr_matrix(h, p, 1e-12);
            const Eigen::MatrixXd scaled = sinr_matrix(c * h, p, c * 1e-12);
            CHECK(((base - scaled).array().abs() <= 1e-14 * base.array().abs().max(1e-300)).all());
        }
    }
}

TEST_CASE("rate")
{
    const double e = std::exp(1.0);
    CHECK(rate(1, e - 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rate(2, e - 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rate(3, 7.389, 1e7) == doctest::Approx(std::log(8.389) / 3.0 * 1e7).epsilon(1e-13));
    CHECK(rate(3, 7.389, 1e7) == doctest::Approx(7.09e6).epsilon(1e-3));
    CHECK_THROWS_AS(rate(0, 1.0, 1.0), DomainError);

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> s(1e-3, 1e3);
    for (int rep = 0; rep < 200; ++rep) {
        const double a = s(rng), b = s(rng);
        if (a != b)
            CHECK((rate(2, std::min(a, b), 1e7) < rate(2, std::max(a, b), 1e7)));
        CHECK(rate(3, a, 1e7) < rate(2, a, 1e7));
    }
}
