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

#include "uee/config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "uee/errors.hpp"

namespace uee {

using nlohmann::json;

double rate_unit_value(const std::string& name)
{
    if (name == "mbit_per_s")
        return rate_units::mbits_per_s;
    if (name == "bit_per_s")
        return rate_units::bits_per_s;
    if (name == "mnat_per_s")
        return rate_units::mnats_per_s;
    if (name == "nat_per_s")
        return rate_units::nats_per_s;
    throw ConfigError("unknown utility_rate_unit '" + name +
                      "' (expected mbit_per_s, bit_per_s, mnat_per_s or nat_per_s)");
}

ChannelBasis channel_basis_from_name(const std::string& name)
{
    if (name == "full")
        return ChannelBasis::full;
    if (name == "largescale")
        return ChannelBasis::largescale;
    if (name == "pathloss")
        return ChannelBasis::pathloss;
    throw ConfigError("unknown maxsinr_basis '" + name + "' (expected full, largescale or pathloss)");
}

NetworkConfig network_config(const ExperimentConfig& config)
{
    NetworkConfig n = config.network;
    n.utility_rate_unit = rate_unit_value(config.utility_rate_unit);
    return n;
}

AssociationOptions association_options(const SolverConfig& s)
{
    AssociationOptions o;
    o.tol = s.assoc_tol;
    o.max_iter = s.assoc_max_iter;
    o.step0 = s.assoc_step0;
    o.nu_rule = s.nu_rule == "log_mean_exp" ? NuRule::log_mean_exp : NuRule::stationarity;
    o.exact_polish = s.assoc_exact_polish;
    return o;
}

PowerOptions power_options(const SolverConfig& s)
{
    PowerOptions o;
    o.method = s.power_method == "dual_subgradient" ? PowerMethod::dual_subgradient
                                                    : PowerMethod::consistent;
    o.tol = s.power_tol;
    o.max_iter = s.power_max_iter;
    o.step0 = s.power_step0;
    o.eta_floor = s.eta_floor;
    return o;
}

void validate(const ExperimentConfig& c)
{
    validate(network_config(c));
    if (c.n_drops < 1)
        throw ConfigError("n_drops must be at least 1");
    if (c.algorithms.empty())
        throw ConfigError("algorithms must name at least one algorithm");
    for (const auto& a : c.algorithms)
        if (std::find(known_algorithms.begin(), known_algorithms.end(), a) == known_algorithms.end())
            throw ConfigError("unknown algorithm '" + a +
                              "' (expected proposed, maxsinr_pc or maxsinr_maxpower)");
    for (std::size_t i = 0; i < c.algorithms.size(); ++i)
        for (std::size_t k = i + 1; k < c.algorithms.size(); ++k)
            if (c.algorithms[i] == c.algorithms[k])
                throw ConfigError("algorithm '" + c.algorithms[i] + "' listed twice");
    channel_basis_from_name(c.maxsinr_basis);
    if (c.report_rates_in != "nats_per_s" && c.report_rates_in != "bits_per_s")
        throw ConfigError("report_rates_in must be nats_per_s or bits_per_s");
    if (c.threads < 1)
        throw ConfigError("threads must be at least 1");
    if (c.oracle_instances < 1)
        throw ConfigError("oracle_instances must be at least 1");
    if (c.oracle_levels < 2)
        throw ConfigError("oracle_levels must be at least 2");

    const auto& s = c.solver;
    if (!(s.assoc_tol > 0.0) || !(s.power_tol > 0.0) || !(s.inner_tol >= 0.0))
        throw ConfigError("solver tolerances must be positive");
    if (s.assoc_max_iter < 1 || s.power_max_iter < 1 || s.max_outer < 1 || s.max_inner < 1)
        throw ConfigError("solver iteration limits must be at least 1");
    if (!(s.assoc_step0 > 0.0) || !(s.power_step0 > 0.0))
        throw ConfigError("solver step sizes must be positive");
    if (s.nu_rule != "stationarity" && s.nu_rule != "log_mean_exp")
        throw ConfigError("solver.nu_rule must be stationarity or log_mean_exp");
    if (s.power_method != "consistent" && s.power_method != "dual_subgradient")
        throw ConfigError("solver.power_method must be consistent or dual_subgradient");
}

namespace {

using Setter = std::function<void(const json&)>;

template <typename T>
Setter bind(T& field)
{
    return [&field](const json& v) { field = v.get<T>(); };
}

void apply(const json& obj, const std::map<std::string, Setter>& setters, const std::string& where)
{
    if (!obj.is_object())
        throw ConfigError(where + " must be a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const auto found = setters.find(it.key());
        if (found == setters.end())
            throw ConfigError("unknown config key '" + (where == "config" ? "" : where + ".") + it.key() + "'");
        try {
            found->second(it.value());
        } catch (const json::exception&) {
            throw ConfigError("config key '" + it.key() + "' has the wrong type");
        }
    }
}

} // namespace

ExperimentConfig config_from_json(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    ExperimentConfig c;
    auto& n = c.network;
    auto& s = c.solver;
    const std::map<std::string, Setter> solver_keys{
        {"assoc_tol", bind(s.assoc_tol)},
        {"assoc_max_iter", bind(s.assoc_max_iter)},
        {"assoc_step0", bind(s.assoc_step0)},
        {"nu_rule", bind(s.nu_rule)},
        {"assoc_exact_polish", bind(s.assoc_exact_polish)},
        {"power_method", bind(s.power_method)},
        {"power_tol", bind(s.power_tol)},
        {"power_max_iter", bind(s.power_max_iter)},
        {"power_step0", bind(s.power_step0)},
        {"eta_floor", bind(s.eta_floor)},
        {"varsigma", bind(s.varsigma)},
        {"max_outer", bind(s.max_outer)},
        {"max_inner", bind(s.max_inner)},
        {"inner_tol", bind(s.inner_tol)},
    };
    const std::map<std::string, Setter> top_keys{
        {"bandwidth_hz", bind(n.bandwidth_hz)},
        {"cell_radius_m", bind(n.cell_radius_m)},
        {"n_macro", bind(n.n_macro)},
        {"n_small", bind(n.n_small)},
        {"n_users", bind(n.n_users)},
        {"macro_power_dbm_per_hz", bind(n.macro_power_dbm_per_hz)},
        {"small_power_dbm_per_hz", bind(n.small_power_dbm_per_hz)},
        {"circuit_power_w", bind(n.circuit_power_w)},
        {"noise_density_dbm_per_hz", bind(n.noise_density_dbm_per_hz)},
        {"shadowing_std_db", bind(n.shadowing_std_db)},
        {"small_bs_guard_m", bind(n.small_bs_guard_m)},
        {"min_user_distance_m", bind(n.min_user_distance_m)},
        {"fast_fading", bind(n.fast_fading)},
        {"utility_rate_unit", bind(c.utility_rate_unit)},
        {"n_drops", bind(c.n_drops)},
        {"seed", bind(c.seed)},
        {"algorithms", bind(c.algorithms)},
        {"maxsinr_basis", bind(c.maxsinr_basis)},
        {"report_rates_in", bind(c.report_rates_in)},
        {"output_dir", bind(c.output_dir)},
        {"threads", bind(c.threads)},
        {"oracle_instances", bind(c.oracle_instances)},
        {"oracle_levels", bind(c.oracle_levels)},
        {"solver", [&](const json& v) { apply(v, solver_keys, "solver"); }},
    };
    apply(doc, top_keys, "config");
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open config " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str());
}

std::string config_to_json(const ExperimentConfig& c)
{
    const auto& n = c.network;
    const auto& s = c.solver;
    json doc{
        {"bandwidth_hz", n.bandwidth_hz},
        {"cell_radius_m", n.cell_radius_m},
        {"n_macro", n.n_macro},
        {"n_small", n.n_small},
        {"n_users", n.n_users},
        {"macro_power_dbm_per_hz", n.macro_power_dbm_per_hz},
        {"small_power_dbm_per_hz", n.small_power_dbm_per_hz},
        {"circuit_power_w", n.circuit_power_w},
        {"noise_density_dbm_per_hz", n.noise_density_dbm_per_hz},
        {"shadowing_std_db", n.shadowing_std_db},
        {"small_bs_guard_m", n.small_bs_guard_m},
        {"min_user_distance_m", n.min_user_distance_m},
        {"fast_fading", n.fast_fading},
        {"utility_rate_unit", c.utility_rate_unit},
        {"n_drops", c.n_drops},
        {"seed", c.seed},
        {"algorithms", c.algorithms},
        {"maxsinr_basis", c.maxsinr_basis},
        {"report_rates_in", c.report_rates_in},
        {"output_dir", c.output_dir},
        {"threads", c.threads},
        {"oracle_instances", c.oracle_instances},
        {"oracle_levels", c.oracle_levels},
        {"solver",
         {
             {"assoc_tol", s.assoc_tol},
             {"assoc_max_iter", s.assoc_max_iter},
             {"assoc_step0", s.assoc_step0},
             {"nu_rule", s.nu_rule},
             {"assoc_exact_polish", s.assoc_exact_polish},
             {"power_method", s.power_method},
             {"power_tol", s.power_tol},
             {"power_max_iter", s.power_max_iter},
             {"power_step0", s.power_step0},
             {"eta_floor", s.eta_floor},
             {"varsigma", s.varsigma},
             {"max_outer", s.max_outer},
             {"max_inner", s.max_inner},
             {"inner_tol", s.inner_tol},
         }},
    };
    return doc.dump(2) + "\n";
}

} // namespace uee
