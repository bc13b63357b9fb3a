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

#ifndef D2DMIMO_REPORT_HPP
#define D2DMIMO_REPORT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "d2dmimo/analytic.hpp"
#include "d2dmimo/config.hpp"
#include "d2dmimo/montecarlo.hpp"
#include "d2dmimo/validation.hpp"

namespace d2dmimo {

inline constexpr const char *distance_csv_header =
    "entity_type,bin_center_m,analytic_goodput_bits,empirical_goodput_bits,n_samples,rel_gap";
inline constexpr const char *d2d_csv_header = "d2d_per_cell,overall_goodput_bits,downlink_sum_bits,d2d_sum_bits,source";

const char *version_string();

// Shortest round-trip decimal form, locale independent.
std::string format_number(double value);

std::string distance_csv(const Comparison &comparison);

struct D2dSweepRow {
    int d2d_per_cell = 0;
    double overall_goodput_bits = 0.0;
    double downlink_sum_bits = 0.0;
    double d2d_sum_bits = 0.0;
    std::string source; // "analytic" or "empirical"
};

std::vector<D2dSweepRow> analytic_d2d_sweep(const ScenarioConfig &config, const std::vector<int> &d_values);
// Cell-0 goodput K mean(downlink) + D mean(d2d) from a Monte Carlo batch per D.
std::vector<D2dSweepRow> empirical_d2d_sweep(const ScenarioConfig &config, const std::vector<int> &d_values,
                                             int threads = 0);
std::string d2d_csv(const std::vector<D2dSweepRow> &rows);

std::string validation_csv(const std::vector<PropertyResult> &results);

// Throws IoError naming the path.
void write_text_file(const std::filesystem::path &path, const std::string &content);

struct RunManifest {
    ScenarioConfig config;
    std::string version;
    std::string command;
    std::string started_utc;
    std::string finished_utc;
    std::vector<std::string> outputs;
    std::uint64_t master_seed = 0;
    std::vector<std::string> diagnostics;
};

std::string utc_timestamp();
nlohmann::json to_json(const RunManifest &manifest);

} // namespace d2dmimo

#endif
