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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "d2dmimo/errors.hpp"
#include "d2dmimo/geometry.hpp"
#include "oracles.hpp"

using namespace d2dmimo;

TEST_SUITE("geometry") {

TEST_CASE("single cell layout") {
    const HexLayout l = build_layout(1, 300.0);
    REQUIRE(l.centers.size() == 1);
    CHECK(l.centers[0].norm() == 0.0);
}

TEST_CASE("nineteen cell layout matches the lattice") {
    const double R = 300.0;
    const HexLayout l = build_layout(19, R);
    REQUIRE(l.centers.size() == 19);
    CHECK(l.centers[0].norm() == 0.0);
    const double adj = std::sqrt(3.0) * R;
    int near = 0;
    for (const auto &c : l.centers)
        if (std::abs(c.norm() - adj) < 1e-9)
            ++near;
    CHECK(near == 6);
    CHECK(adj == doctest::Approx(519.6152422706632));

    // Rings 1, 6, 12 in order.
    for (int i = 1; i < 7; ++i)
        CHECK(l.centers[i].norm() == doctest::Approx(adj));
    for (int i = 7; i < 19; ++i)
        CHECK(l.centers[i].norm() > adj + 1.0);

    // Same point set as the lattice oracle.
    auto lattice = oracle::lattice_centers(R);
    REQUIRE(lattice.size() == 19);
    for (const auto &c : l.centers) {
        const bool found = std::any_of(lattice.begin(), lattice.end(),
                                       [&](const Eigen::Vector2d &o) { return (o - c).norm() < 1e-9; });
        CHECK(found);
    }

    // Every center's nearest neighbour is exactly sqrt(3) R away.
    for (const auto &a : l.centers) {
        double best = 1e300;
        for (const auto &b : l.centers)
            if (&a != &b)
                best = std::min(best, distance(a, b));
        CHECK(best == doctest::Approx(adj).epsilon(1e-12));
    }
}

TEST_CASE("non ring-complete sizes are rejected") {
    CHECK_THROWS_AS(build_layout(2, 300.0), ConfigError);
    CHECK_THROWS_AS(build_layout(18, 300.0), ConfigError);
    CHECK_THROWS_AS(build_layout(7, 0.0), ConfigError);
    CHECK_NOTHROW(build_layout(7, 300.0));
}

TEST_CASE("distance") {
    CHECK(distance(Point(0, 0), Point(3, 4)) == 5.0);
    CHECK(distance(Point(0, 0), Point(0, 0)) == 0.0);
    CHECK(distance(Point(1, 1), Point(4, 5)) == 5.0);
}

TEST_CASE("hexagon membership agrees with the oracle") {
    Engine rng(7);
    std::uniform_real_distribution<double> u(-320.0, 320.0);
    for (int i = 0; i < 100000; ++i) {
        const double x = u(rng), y = u(rng);
        CHECK(in_hexagon(Point(x, y), Point(0, 0), 300.0) == oracle::in_hex(x, y, 0, 0, 300.0));
    }
    for (const auto &v : hexagon_vertices(Point(5, -2), 300.0))
        CHECK(in_hexagon(v, Point(5, -2), 300.0));
}

TEST_CASE("uniform hexagon sampling") {
    const double R = 300.0;
    const Point c(100.0, -50.0);
    const int n = 1000000;
    Engine rng(20180501);
    double sx = 0, sy = 0, sxx = 0, syy = 0;
    int inner = 0;
    int inside = 0;
    std::array<long, 6> tri{};
    for (int i = 0; i < n; ++i) {
        const Point p = sample_uniform_hexagon(c, R, rng);
        const Point d = p - c;
        inside += in_hexagon(p, c, R);
        sx += d.x();
        sy += d.y();
        sxx += d.x() * d.x();
        syy += d.y() * d.y();
        inner += d.norm() <= std::sqrt(3.0) / 2.0 * R;
        double a = std::atan2(d.y(), d.x());
        if (a < 0)
            a += 2 * std::numbers::pi;
        tri[static_cast<std::size_t>(std::min(5, static_cast<int>(a / (std::numbers::pi / 3.0))))]++;
    }
    CHECK(inside == n);
    const double mx = sx / n, my = sy / n;
    CHECK(std::abs(mx) < 3.0 * std::sqrt((sxx / n - mx * mx) / n));
    CHECK(std::abs(my) < 3.0 * std::sqrt((syy / n - my * my) / n));

    const double frac = static_cast<double>(inner) / n;
    const double expect = std::numbers::pi * 0.75 / (1.5 * std::sqrt(3.0));
    CHECK(expect == doctest::Approx(0.9069).epsilon(1e-4));
    CHECK(frac == doctest::Approx(expect).epsilon(0.01));

    // Chi-square over the six triangles, 5 degrees of freedom, 1% critical value 15.086.
    double chi2 = 0.0;
    for (long k : tri) {
        const double e = n / 6.0;
        chi2 += (k - e) * (k - e) / e;
    }
    CHECK(chi2 < 15.086);
}

TEST_CASE("sampled points are closest to their own center") {
    const HexLayout l = build_layout(19, 300.0);
    Engine rng(3);
    for (int cell : {0, 4, 13}) {
        for (int i = 0; i < 100000; ++i) {
            const Point p = sample_uniform_hexagon(l.centers[cell], 300.0, rng);
            int best = 0;
            for (int j = 1; j < 19; ++j)
                if (distance(p, l.centers[j]) < distance(p, l.centers[best]))
                    best = j;
            const double own = distance(p, l.centers[cell]);
            const double other = distance(p, l.centers[best]);
            // Boundary ties have measure zero; allow them at round-off level.
            CHECK((best == cell || std::abs(own - other) < 1e-9));
        }
    }
}

TEST_CASE("drop_network populations and constraints") {
    ScenarioConfig cfg;
    const HexLayout l = build_layout(19, cfg.radius_m);
    const NetworkRealization net = drop_network(cfg, l, SeedSequence(11));
    CHECK(net.users_per_cell() == 10);
    CHECK(net.d2d_per_cell() == 10);
    std::size_t users = 0, pairs = 0;
    for (int c = 0; c < 19; ++c) {
        users += net.user_pos[c].size();
        pairs += net.d2d_tx_pos[c].size();
        CHECK(net.d2d_rx_pos[c].size() == net.d2d_tx_pos[c].size());
        for (const auto &p : net.user_pos[c]) {
            CHECK(in_hexagon(p, l.centers[c], cfg.radius_m));
            for (const auto &b : l.centers)
                CHECK(distance(p, b) >= cfg.min_bs_distance_m);
        }
        for (std::size_t k = 0; k < net.d2d_tx_pos[c].size(); ++k) {
            const Point &t = net.d2d_tx_pos[c][k];
            CHECK(in_hexagon(t, l.centers[c], cfg.radius_m));
            for (const auto &b : l.centers)
                CHECK(distance(t, b) >= cfg.min_bs_distance_m);
            CHECK(distance(t, net.d2d_rx_pos[c][k]) == doctest::Approx(10.0).epsilon(1e-14));
        }
    }
    CHECK(users == 190);
    CHECK(pairs == 190);
}

TEST_CASE("drop_network degenerate and deterministic") {
    ScenarioConfig cfg;
    cfg.cells = 1;
    cfg.users_per_cell = 1;
    cfg.d2d_per_cell = 0;
    const HexLayout l = build_layout(1, cfg.radius_m);
    const auto net = drop_network(cfg, l, SeedSequence(5));
    CHECK(net.user_pos[0].size() == 1);
    CHECK(net.d2d_tx_pos[0].empty());

    ScenarioConfig def;
    const HexLayout l19 = build_layout(19, def.radius_m);
    const auto a = drop_network(def, l19, SeedSequence(99));
    const auto b = drop_network(def, l19, SeedSequence(99));
    const auto c = drop_network(def, l19, SeedSequence(100));
    bool same = true, differs = false;
    for (int i = 0; i < 19; ++i)
        for (int k = 0; k < 10; ++k) {
            same = same && a.user_pos[i][k] == b.user_pos[i][k] && a.d2d_rx_pos[i][k] == b.d2d_rx_pos[i][k];
            differs = differs || a.user_pos[i][k] != c.user_pos[i][k];
        }
    CHECK(same);
    CHECK(differs);
}

}
