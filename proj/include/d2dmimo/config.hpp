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

#ifndef D2DMIMO_CONFIG_HPP
#define D2DMIMO_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

namespace d2dmimo {

enum class PilotModel {
    // Cyclic shifts of one Zadoff-Chu root per cell: orthogonal inside a cell,
    // cross-correlation magnitude exactly 1/sqrt(L_p) between any two users of
    // different cells.
    ZadoffChu,
    // Contamination only between equal user indices, factor 1/sqrt(L_p).
    Diagonal,
};

std::string to_string(PilotModel model);
PilotModel pilot_model_from_string(const std::string &name);

// Every physical and numerical parameter of a scenario. Defaults are the
// 19-cell evaluation setup.
struct ScenarioConfig {
    int cells = 19;
    double radius_m = 300.0;
    int antennas = 250;
    int users_per_cell = 10;
    int d2d_per_cell = 10;
    int pilot_length = 31;
    int symbols_per_frame = 50;
    double sigma_bs = 3.76;
    double kappa_ue = 4.37;
    double pb_dbm = 46.0;
    double pd_dbm = 23.0;
    double pu_dbm = 23.0;
    double epsilon = 0.1;
    double d2d_link_distance_m = 10.0;
    double min_bs_distance_m = 10.0;
    // Hard-core radius between a D2D transmitter and any receiver it interferes with.
    double min_device_distance_m = 1.0;
    double zeta = 8.0;
    int n_drops = 100;
    int n_fading_per_drop = 10;
    int distance_bins = 10;
    std::uint64_t master_seed = 20180501;
    PilotModel pilot_model = PilotModel::ZadoffChu;

    double pb_w() const;
    double pd_w() const;
    double pu_w() const;
    double inradius_m() const;

    // Throws ConfigError naming the first violated constraint.
    void validate() const;
};

double dbm_to_watts(double p_dbm);
double watts_to_dbm(double p_w);

void to_json(nlohmann::json &j, const ScenarioConfig &c);
// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json &j, ScenarioConfig &c);

ScenarioConfig load_config(const std::filesystem::path &path);

} // namespace d2dmimo

#endif
