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

#include "d2dmimo/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <system_error>

#include "d2dmimo/errors.hpp"
#include "d2dmimo/goodput.hpp"

#ifndef D2DMIMO_VERSION
#define D2DMIMO_VERSION "0.0.0"
#endif

namespace d2dmimo {

const char *version_string() { return D2DMIMO_VERSION; }

std::string format_number(double value) {
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string distance_csv(const Comparison &comparison) {
    std::string out = distance_csv_header;
    out += '\n';
    for (const auto &r : comparison.rows) {
        out += to_string(r.kind);
        out += ',' + format_number(r.center_m);
        out += ',' + format_number(r.analytic_goodput_bits);
        out += ',' + format_number(r.empirical_goodput_bits);
        out += ',' + std::to_string(r.n_samples);
        out += ',' + format_number(r.rel_gap);
        out += '\n';
    }
    return out;
}

std::vector<D2dSweepRow> analytic_d2d_sweep(const ScenarioConfig &config, const std::vector<int> &d_values) {
    for (int d : d_values)
        if (d < 1)
            throw ConfigError("every D2D count must be >= 1");
    const CellGoodputModel model(config);
    std::vector<D2dSweepRow> rows;
    for (int d : d_values) {
        const CellGoodput g = model.evaluate(d);
        rows.push_back({d, g.overall_bits, g.downlink_sum_bits, g.d2d_sum_bits, "analytic"});
    }
    return rows;
}

std::vector<D2dSweepRow> empirical_d2d_sweep(const ScenarioConfig &config, const std::vector<int> &d_values,
                                             int threads) {
    std::vector<D2dSweepRow> rows;
    for (int d : d_values) {
        if (d < 1)
            throw ConfigError("every D2D count must be >= 1");
        ScenarioConfig cfg = config;
        cfg.d2d_per_cell = d;
        const TrialBatch batch = run_batch(cfg, threads);
        const int K = cfg.users_per_cell;
        std::vector<GoodputResult> users;
        std::vector<GoodputResult> links;
        for (int kind = 0; kind < 2; ++kind) {
            const EntityKind ek = kind == 0 ? EntityKind::Downlink : EntityKind::D2D;
            const int n = kind == 0 ? K : d;
            const auto exact = batch.select(ek, SirVariant::Exact);
            for (int k = 0; k < n; ++k) {
                std::vector<SirSample> mine;
                for (const auto &s : exact)
                    if (s.entity.index == k)
                        mine.push_back(s);
                auto g = empirical_goodput(mine, cfg.epsilon, cfg.symbols_per_frame);
                (kind == 0 ? users : links).push_back(g);
            }
        }
        D2dSweepRow row;
        row.d2d_per_cell = d;
        row.downlink_sum_bits = cell_overall_goodput(users, {}, K, 0);
        row.d2d_sum_bits = cell_overall_goodput({}, links, 0, d);
        row.overall_goodput_bits = row.downlink_sum_bits + row.d2d_sum_bits;
        row.source = "empirical";
        rows.push_back(row);
    }
    return rows;
}

std::string d2d_csv(const std::vector<D2dSweepRow> &rows) {
    std::string out = d2d_csv_header;
    out += '\n';
    for (const auto &r : rows) {
        out += std::to_string(r.d2d_per_cell);
        out += ',' + format_number(r.overall_goodput_bits);
        out += ',' + format_number(r.downlink_sum_bits);
        out += ',' + format_number(r.d2d_sum_bits);
        out += ',' + r.source;
        out += '\n';
    }
    return out;
}

std::string validation_csv(const std::vector<PropertyResult> &results) {
    std::string out = "property,pass,statistic,threshold,detail\n";
    for (const auto &r : results) {
        std::string detail = r.detail;
        for (char &c : detail)
            if (c == ',' || c == '\n')
                c = ';';
        out += r.name + ',' + (r.pass ? "true" : "false") + ',' + format_number(r.statistic) + ',' +
               format_number(r.threshold) + ',' + detail + '\n';
    }
    return out;
}

void write_text_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot open " + path.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.close();
    if (!f)
        throw IoError("failed writing " + path.string());
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json to_json(const RunManifest &m) {
    nlohmann::json j;
    j["config"] = m.config;
    j["version"] = m.version;
    j["command"] = m.command;
    j["started_utc"] = m.started_utc;
    j["finished_utc"] = m.finished_utc;
    j["outputs"] = m.outputs;
    j["master_seed"] = m.master_seed;
    j["diagnostics"] = m.diagnostics;
    return j;
}

} // namespace d2dmimo
