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

#include "uee/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "uee/errors.hpp"

namespace uee {

using nlohmann::json;

namespace {

constexpr const char* format_tag = "uee-scenario/1";

json matrix_to_json(const Eigen::MatrixXd& m)
{
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& rows, int nu, int nb, const char* name)
{
    if (!rows.is_array() || static_cast<int>(rows.size()) != nu)
        throw DomainError(std::string("scenario file: ") + name + " must have one row per user");
    Eigen::MatrixXd m(nu, nb);
    for (int i = 0; i < nu; ++i) {
        if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != nb)
            throw DomainError(std::string("scenario file: ") + name + " row " + std::to_string(i) +
                              " must have one entry per BS");
        for (int j = 0; j < nb; ++j)
            m(i, j) = rows[i][j].get<double>();
    }
    return m;
}

} // namespace

std::string scenario_to_json(const Scenario& s)
{
    json doc;
    doc["format"] = format_tag;
    doc["seed"] = s.seed;
    doc["bandwidth_hz"] = s.bandwidth_hz;
    doc["noise_power_w"] = s.noise_power_w;
    doc["circuit_power_w"] = s.circuit_power_w;
    doc["utility_rate_unit"] = s.utility_rate_unit;
    json bss = json::array();
    for (const auto& bs : s.bss)
        bss.push_back({{"id", bs.id},
                       {"kind", bs.kind == BsKind::macro ? "macro" : "small"},
                       {"x_m", bs.position.x_m},
                       {"y_m", bs.position.y_m},
                       {"max_power_w", bs.max_power_w},
                       {"power_density_dbm_per_hz", bs.power_density_dbm_per_hz}});
    doc["base_stations"] = std::move(bss);
    json users = json::array();
    for (const auto& u : s.users)
        users.push_back({{"id", u.id}, {"x_m", u.position.x_m}, {"y_m", u.position.y_m}});
    doc["users"] = std::move(users);
    doc["gains"] = matrix_to_json(s.channel.gains);
    doc["largescale_gains"] = matrix_to_json(s.channel.largescale_gains);
    doc["pathloss_gains"] = matrix_to_json(s.channel.pathloss_gains);
    return doc.dump(1) + "\n";
}

Scenario scenario_from_json(const std::string& text)
{
    Scenario s;
    try {
        const json doc = json::parse(text);
        if (doc.value("format", std::string{}) != format_tag)
            throw DomainError(std::string("scenario file: missing or unknown format tag, expected ") +
                              format_tag);
        s.seed = doc.at("seed").get<std::uint64_t>();
        s.bandwidth_hz = doc.at("bandwidth_hz").get<double>();
        s.noise_power_w = doc.at("noise_power_w").get<double>();
        s.circuit_power_w = doc.at("circuit_power_w").get<double>();
        s.utility_rate_unit = doc.at("utility_rate_unit").get<double>();
        for (const auto& b : doc.at("base_stations")) {
            BaseStation bs;
            bs.id = b.at("id").get<int>();
            const auto kind = b.at("kind").get<std::string>();
            if (kind != "macro" && kind != "small")
                throw DomainError("scenario file: BS kind must be macro or small, got " + kind);
            bs.kind = kind == "macro" ? BsKind::macro : BsKind::small;
            bs.position = {b.at("x_m").get<double>(), b.at("y_m").get<double>()};
            bs.max_power_w = b.at("max_power_w").get<double>();
            bs.power_density_dbm_per_hz = b.at("power_density_dbm_per_hz").get<double>();
            s.bss.push_back(bs);
        }
        for (const auto& u : doc.at("users"))
            s.users.push_back({u.at("id").get<int>(), {u.at("x_m").get<double>(), u.at("y_m").get<double>()}});
        const int nu = s.num_users();
        const int nb = s.num_bss();
        s.channel.gains = matrix_from_json(doc.at("gains"), nu, nb, "gains");
        s.channel.largescale_gains = matrix_from_json(doc.at("largescale_gains"), nu, nb, "largescale_gains");
        s.channel.pathloss_gains = matrix_from_json(doc.at("pathloss_gains"), nu, nb, "pathloss_gains");
    } catch (const json::exception& e) {
        throw DomainError(std::string("scenario file: ") + e.what());
    }
    validate(s);
    return s;
}

void save_scenario(const Scenario& scenario, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << scenario_to_json(scenario);
    if (!out)
        throw IoError("failed writing " + path);
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path + " for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

} // namespace uee
