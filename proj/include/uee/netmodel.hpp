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

#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace uee {

struct Position
{
    double x_m = 0.0;
    double y_m = 0.0;
};

double distance_m(const Position& a, const Position& b);

enum class BsKind { macro, small };

struct BaseStation
{
    int id = 0;
    BsKind kind = BsKind::small;
    Position position;
    double max_power_w = 0.0;
    double power_density_dbm_per_hz = 0.0; // as configured; informational once max_power_w is set
};

struct User
{
    int id = 0;
    Position position;
};

/// Linear power gains h_ij, users in rows and base stations in columns.
///
/// `gains` is what every rate and SINR is computed from. `largescale_gains`
/// drops the optional Rayleigh multiplier, `pathloss_gains` drops shadowing
/// as well. With fast fading off (the default) gains == largescale_gains.
struct ChannelMatrix
{
    Eigen::MatrixXd gains;
    Eigen::MatrixXd largescale_gains;
    Eigen::MatrixXd pathloss_gains;
};

enum class ChannelBasis { full, largescale, pathloss };

/// Unit conversions for the rate inside the log utility, in nats/s per unit.
namespace rate_units {
inline constexpr double nats_per_s = 1.0;
inline constexpr double bits_per_s = std::numbers::ln2;
inline constexpr double mnats_per_s = 1e6;
inline constexpr double mbits_per_s = 1e6 * std::numbers::ln2;
} // namespace rate_units

/// One solvable problem instance.
struct Scenario
{
    std::vector<BaseStation> bss;
    std::vector<User> users;
    ChannelMatrix channel;
    double bandwidth_hz = 0.0;
    double noise_power_w = 0.0;
    double circuit_power_w = 0.0;
    /// Rates enter the utility as ln(c / utility_rate_unit), c in nats/s.
    double utility_rate_unit = rate_units::nats_per_s;
    std::uint64_t seed = 0;

    int num_users() const { return static_cast<int>(users.size()); }
    int num_bss() const { return static_cast<int>(bss.size()); }
    Eigen::VectorXd max_powers() const;
    const Eigen::MatrixXd& gains(ChannelBasis basis) const;
    /// Bandwidth measured in utility-rate units per nat, i.e. W / utility_rate_unit.
    double utility_bandwidth() const { return bandwidth_hz / utility_rate_unit; }
};

/// Throws DomainError when a scenario breaks its invariants.
void validate(const Scenario& scenario);

/// Hand-built scenario from a gain matrix; BS 0 is tagged macro, the rest small.
/// All three channel copies are set to `gains`.
Scenario make_scenario(const Eigen::MatrixXd& gains, const Eigen::VectorXd& max_power_w,
                       double bandwidth_hz, double noise_power_w, double circuit_power_w);

/// Per-BS transmit power in Watts.
struct PowerAllocation
{
    Eigen::VectorXd watts;

    double total() const { return watts.sum(); }
    int size() const { return static_cast<int>(watts.size()); }
};

/// Topology and channel parameters for generate_scenario.
struct NetworkConfig
{
    double bandwidth_hz = 10e6;
    double cell_radius_m = 500.0;
    int n_macro = 1;
    int n_small = 3;
    int n_users = 30;
    double macro_power_dbm_per_hz = -27.0;
    double small_power_dbm_per_hz = -47.0;
    double circuit_power_w = 1.0;
    double noise_density_dbm_per_hz = -174.0;
    double shadowing_std_db = 8.0;
    double small_bs_guard_m = 40.0;
    double min_user_distance_m = 10.0;
    bool fast_fading = false;
    double utility_rate_unit = rate_units::mbits_per_s;
};

void validate(const NetworkConfig& config);

/// Urban macro pathloss 128.1 + 37.6 log10(d), d in km.
double pathloss_db(double d_km);

/// Converts a dBm/Hz density over `bandwidth_hz` to Watts.
double power_from_density(double dbm_per_hz, double bandwidth_hz);

/// Drops one network realization. Deterministic in (config, seed).
///
/// Macro BS 0 sits at the origin; further macros (if any) are spread evenly
/// on a ring at half the cell radius. Small BSs are uniform in the disc
/// outside the guard radius around the origin, users uniform in the disc
/// with a minimum distance to every BS. Shadowing is i.i.d. N(0, std) dB
/// per link.
Scenario generate_scenario(const NetworkConfig& config, std::uint64_t seed);

/// SINR of user i served by BS j under power p.
double sinr(const Scenario& scenario, int user, int bs, const PowerAllocation& p);

/// Full N_u x N_B SINR table for the given gain matrix.
Eigen::MatrixXd sinr_matrix(const Eigen::MatrixXd& gains, const Eigen::VectorXd& power_w,
                            double noise_power_w);

/// Shannon rate (W/k) ln(1 + sinr), in nats/s.
double rate(int load, double sinr, double bandwidth_hz);

} // namespace uee
