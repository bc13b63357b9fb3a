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

#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "d2dmimo/errors.hpp"
#include "d2dmimo/report.hpp"

using namespace d2dmimo;

TEST_SUITE("report") {

TEST_CASE("frozen CSV headers") {
    CHECK(std::string(distance_csv_header) ==
          "entity_type,bin_center_m,analytic_goodput_bits,empirical_goodput_bits,n_samples,rel_gap");
    CHECK(std::string(d2d_csv_header) == "d2d_per_cell,overall_goodput_bits,downlink_sum_bits,d2d_sum_bits,source");
}

TEST_CASE("number formatting round trips") {
    for (double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 271.6512345678901, 1e-300, 6.02e23}) {
        const std::string s = format_number(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
    }
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-1.0 / 0.0) == "-inf");
}

TEST_CASE("distance CSV") {
    CHECK(distance_csv({}) == std::string(distance_csv_header) + "\n");
    Comparison c;
    ComparisonRow r;
    r.kind = EntityKind::D2D;
    r.center_m = 24.5;
    r.analytic_goodput_bits = 2.0;
    r.empirical_goodput_bits = 1.5;
    r.n_samples = 120;
    r.rel_gap = 1.0 / 3.0;
    c.rows.push_back(r);
    CHECK(distance_csv(c) == std::string(distance_csv_header) + "\nd2d,24.5,2,1.5,120," + format_number(1.0 / 3.0) + "\n");
}

TEST_CASE("d2d sweep") {
    const ScenarioConfig cfg;
    const auto rows = analytic_d2d_sweep(cfg, {4});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].d2d_per_cell == 4);
    CHECK(rows[0].source == "analytic");
    CHECK(rows[0].overall_goodput_bits == doctest::Approx(rows[0].downlink_sum_bits + rows[0].d2d_sum_bits));
    const std::string csv = d2d_csv(rows);
    CHECK(csv.rfind(std::string(d2d_csv_header) + "\n4,", 0) == 0);
    CHECK(csv.substr(csv.size() - 10) == ",analytic\n");
    CHECK_THROWS_AS(analytic_d2d_sweep(cfg, {2, 0}), ConfigError);
}

TEST_CASE("validation CSV escapes separators") {
    const std::string s = validation_csv({{"p", true, 0.5, 1.0, "a,b\nc"}});
    CHECK(s == "property,pass,statistic,threshold,detail\np,true,0.5,1,a;b;c\n");
}

TEST_CASE("file output and manifest") {
    const auto dir = std::filesystem::temp_directory_path() / "d2dmimo_report_test";
    std::filesystem::create_directories(dir);
    write_text_file(dir / "x.txt", "abc\n");
    std::ifstream f(dir / "x.txt");
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == "abc\n");
    CHECK_THROWS_AS(write_text_file(dir / "missing" / "x.txt", "y"), IoError);
    std::filesystem::remove_all(dir);

    RunManifest m;
    m.command = "sweep-distance";
    m.master_seed = 7;
    m.outputs = {"distance.csv"};
    const auto j = to_json(m);
    CHECK(j.at("command") == "sweep-distance");
    CHECK(j.at("master_seed") == 7);
    CHECK(j.at("config").at("antennas") == 250);
    CHECK(utc_timestamp().size() == 20);
}

}
