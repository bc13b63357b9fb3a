// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "d2dmimo/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "d2dmimo/errors.hpp"

namespace d2dmimo {

namespace {

bool is_prime(int n) {
    if (n < 2)
        return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

void require(bool ok, const std::string &what) {
    if (!ok)
        throw ConfigError(what);
}

} // namespace

std::string to_string(PilotModel model) {
    switch (model) {
    case PilotModel::ZadoffChu:
        return "zadoff_chu";
    case PilotModel::Diagonal:
        return "diagonal";
    }
    return "unknown";
}

PilotModel pilot_model_from_string(const std::string &name) {
    if (name == "zadoff_chu")
        return PilotModel::ZadoffChu;
    if (name == "diagonal")
        return PilotModel::Diagonal;
    throw ConfigError("pilot_model must be \"zadoff_chu\" or \"diagonal\", got \"" + name + "\"");
}

double dbm_to_watts(double p_dbm) { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }

double watts_to_dbm(double p_w) { return 10.0 * std::log10(p_w) + 30.0; }

double ScenarioConfig::pb_w() const { return dbm_to_watts(pb_dbm); }
double ScenarioConfig::pd_w() const { return dbm_to_watts(pd_dbm); }
double ScenarioConfig::pu_w() const { return dbm_to_watts(pu_dbm); }
double ScenarioConfig::inradius_m() const { return std::sqrt(3.0) / 2.0 * radius_m; }

void ScenarioConfig::validate() const {
    require(cells == 1 || cells == 7 || cells == 19, "cells must be one of 1, 7, 19 (ring-complete layouts)");
    require(radius_m > 0.0, "radius_m must be positive");
    require(users_per_cell >= 1, "users_per_cell must be >= 1");
    require(d2d_per_cell >= 0, "d2d_per_cell must be >= 0");
    require(antennas >= users_per_cell, "antennas (M) must be >= users_per_cell (K)");
    require(pilot_length >= 1, "pilot_length must be >= 1");
    require(symbols_per_frame >= 1, "symbols_per_frame must be >= 1");
    require(sigma_bs > 2.0, "sigma_bs must exceed 2");
    require(kappa_ue > 2.0, "kappa_ue must exceed 2");
    require(epsilon > 0.0 && epsilon < 1.0, "epsilon must lie in the open interval (0, 1)");
    require(std::isfinite(pb_dbm) && std::isfinite(pd_dbm) && std::isfinite(pu_dbm), "powers must be finite");
    require(d2d_link_distance_m > 0.0, "d2d_link_distance_m must be positive");
    require(min_bs_distance_m > 0.0 && min_bs_distance_m < 0.5 * inradius_m(),
            "min_bs_distance_m must be positive and well inside the cell");
    require(min_device_distance_m > 0.0 && min_device_distance_m < d2d_link_distance_m,
            "min_device_distance_m must be positive and below d2d_link_distance_m");
    require(zeta > 1.0, "zeta must exceed 1");
    require(n_drops >= 0 && n_fading_per_drop >= 1, "n_drops must be >= 0 and n_fading_per_drop >= 1");
    require(distance_bins >= 1, "distance_bins must be >= 1");
    if (pilot_model == PilotModel::ZadoffChu) {
        require(is_prime(pilot_length) && pilot_length > 2, "zadoff_chu pilots need an odd prime pilot_length");
        require(users_per_cell <= pilot_length, "zadoff_chu pilots need users_per_cell <= pilot_length");
        require(cells <= pilot_length - 1, "zadoff_chu pilots need cells <= pilot_length - 1 distinct roots");
    }
}

void to_json(nlohmann::json &j, const ScenarioConfig &c) {
    j = nlohmann::json{
        {"cells", c.cells},
        {"radius_m", c.radius_m},
        {"antennas", c.antennas},
        {"users_per_cell", c.users_per_cell},
        {"d2d_per_cell", c.d2d_per_cell},
        {"pilot_length", c.pilot_length},
        {"symbols_per_frame", c.symbols_per_frame},
        {"sigma_bs", c.sigma_bs},
        {"kappa_ue", c.kappa_ue},
        {"pb_dbm", c.pb_dbm},
        {"pd_dbm", c.pd_dbm},
        {"pu_dbm", c.pu_dbm},
        {"epsilon", c.epsilon},
        {"d2d_link_distance_m", c.d2d_link_distance_m},
        {"min_bs_distance_m", c.min_bs_distance_m},
        {"min_device_distance_m", c.min_device_distance_m},
        {"zeta", c.zeta},
        {"n_drops", c.n_drops},
        {"n_fading_per_drop", c.n_fading_per_drop},
        {"distance_bins", c.distance_bins},
        {"master_seed", c.master_seed},
        {"pilot_model", to_string(c.pilot_model)},
    };
}

void from_json(const nlohmann::json &j, ScenarioConfig &c) {
    if (!j.is_object())
        throw ConfigError("config must be a JSON object");
    nlohmann::json defaults = c;
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!defaults.contains(it.key()))
            throw ConfigError("unknown config key \"" + it.key() + "\"");

    auto get = [&](const char *key, auto &field) {
        if (!j.contains(key))
            return;
        try {
            j.at(key).get_to(field);
        } catch (const nlohmann::json::exception &e) {
            throw ConfigError(std::string("config key \"") + key + "\": " + e.what());
        }
    };
    get("cells", c.cells);
    get("radius_m", c.radius_m);
    get("antennas", c.antennas);
    get("users_per_cell", c.users_per_cell);
    get("d2d_per_cell", c.d2d_per_cell);
    get("pilot_length", c.pilot_length);
    get("symbols_per_frame", c.symbols_per_frame);
    get("sigma_bs", c.sigma_bs);
    get("kappa_ue", c.kappa_ue);
    get("pb_dbm", c.pb_dbm);
    get("pd_dbm", c.pd_dbm);
    get("pu_dbm", c.pu_dbm);
    get("epsilon", c.epsilon);
    get("d2d_link_distance_m", c.d2d_link_distance_m);
    get("min_bs_distance_m", c.min_bs_distance_m);
    get("min_device_distance_m", c.min_device_distance_m);
    get("zeta", c.zeta);
    get("n_drops", c.n_drops);
    get("n_fading_per_drop", c.n_fading_per_drop);
    get("distance_bins", c.distance_bins);
    get("master_seed", c.master_seed);
    if (j.contains("pilot_model")) {
        std::string name;
        get("pilot_model", name);
        c.pilot_model = pilot_model_from_string(name);
    }
}

ScenarioConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    ScenarioConfig c = j.get<ScenarioConfig>();
    c.validate();
    return c;
}

} // namespace d2dmimo
