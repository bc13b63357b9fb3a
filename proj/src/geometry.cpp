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

#include "d2dmimo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "d2dmimo/errors.hpp"

namespace d2dmimo {

namespace {

constexpr int max_placement_attempts = 1 << 20;
constexpr int max_angle_attempts = 64;

bool far_from_all(const Point &p, const std::vector<Point> &others, double min_distance) {
    for (const auto &o : others)
        if ((p - o).norm() < min_distance)
            return false;
    return true;
}

} // namespace

double HexLayout::inradius_m() const { return std::sqrt(3.0) / 2.0 * circumradius_m; }

double HexLayout::area_m2() const { return 1.5 * std::sqrt(3.0) * circumradius_m * circumradius_m; }

HexLayout build_layout(int num_cells, double circumradius_m) {
    int rings = 0;
    switch (num_cells) {
    case 1:
        rings = 0;
        break;
    case 7:
        rings = 1;
        break;
    case 19:
        rings = 2;
        break;
    default:
        throw ConfigError("num_cells must be 1, 7 or 19 (ring-complete layouts), got " + std::to_string(num_cells));
    }
    if (!(circumradius_m > 0.0))
        throw ConfigError("circumradius_m must be positive");

    struct Cell {
        int ring;
        double angle;
        Point center;
    };
    std::vector<Cell> cells;
    const double R = circumradius_m;
    for (int q = -rings; q <= rings; ++q) {
        for (int r = -rings; r <= rings; ++r) {
            const int s = -q - r;
            const int ring = std::max({std::abs(q), std::abs(r), std::abs(s)});
            if (ring > rings)
                continue;
            Point c(1.5 * R * q, std::sqrt(3.0) * R * (r + 0.5 * q));
            double angle = std::atan2(c.y(), c.x());
            if (angle < 0.0)
                angle += 2.0 * std::numbers::pi;
            cells.push_back({ring, ring == 0 ? 0.0 : angle, c});
        }
    }
    std::sort(cells.begin(), cells.end(), [](const Cell &a, const Cell &b) {
        if (a.ring != b.ring)
            return a.ring < b.ring;
        return a.angle < b.angle;
    });

    HexLayout layout;
    layout.num_cells = num_cells;
    layout.circumradius_m = circumradius_m;
    for (const auto &c : cells)
        layout.centers.push_back(c.center);
    layout.centers[0] = Point::Zero();
    return layout;
}

double distance(const Point &a, const Point &b) { return (a - b).norm(); }

bool in_hexagon(const Point &p, const Point &center, double circumradius_m) {
    const double x = std::abs(p.x() - center.x());
    const double y = std::abs(p.y() - center.y());
    const double tol = 1e-12 * circumradius_m;
    const double s3 = std::sqrt(3.0);
    return y <= s3 / 2.0 * circumradius_m + tol && s3 * x + y <= s3 * circumradius_m + tol;
}

std::array<Point, 6> hexagon_vertices(const Point &center, double circumradius_m) {
    std::array<Point, 6> v;
    for (int k = 0; k < 6; ++k) {
        const double a = k * std::numbers::pi / 3.0;
        v[k] = center + circumradius_m * Point(std::cos(a), std::sin(a));
    }
    return v;
}

Point sample_uniform_hexagon(const Point &center, double circumradius_m, Engine &rng) {
    const double a = std::sqrt(3.0) / 2.0 * circumradius_m;
    std::uniform_real_distribution<double> ux(-circumradius_m, circumradius_m);
    std::uniform_real_distribution<double> uy(-a, a);
    for (;;) {
        Point p(center.x() + ux(rng), center.y() + uy(rng));
        if (in_hexagon(p, center, circumradius_m))
            return p;
    }
}

int NetworkRealization::users_per_cell() const { return user_pos.empty() ? 0 : static_cast<int>(user_pos[0].size()); }

int NetworkRealization::d2d_per_cell() const {
    return d2d_tx_pos.empty() ? 0 : static_cast<int>(d2d_tx_pos[0].size());
}

NetworkRealization drop_network(const ScenarioConfig &config, const HexLayout &layout, const SeedSequence &seed) {
    const int C = layout.num_cells;
    const int K = config.users_per_cell;
    const int D = config.d2d_per_cell;
    if (K < 1 || D < 0)
        throw ConfigError("drop_network needs users_per_cell >= 1 and d2d_per_cell >= 0");
    const double R = layout.circumradius_m;
    const double min_bs = config.min_bs_distance_m;
    const double d0 = config.min_device_distance_m;
    const double link = config.d2d_link_distance_m;

    NetworkRealization net;
    net.layout = layout;
    net.d2d_link_distance_m = link;
    net.user_pos.assign(C, {});
    net.d2d_tx_pos.assign(C, {});
    net.d2d_rx_pos.assign(C, {});

    std::vector<Point> all_users;
    const SeedSequence user_seed = seed.child(stream::users);
    for (int c = 0; c < C; ++c) {
        for (int k = 0; k < K; ++k) {
            Engine rng = user_seed.child(c).child(k).engine();
            Point p;
            int attempts = 0;
            do {
                if (++attempts > max_placement_attempts)
                    throw ConfigError("cannot place downlink user outside the minimum BS distance");
                p = sample_uniform_hexagon(layout.centers[c], R, rng);
            } while (!far_from_all(p, layout.centers, min_bs));
            net.user_pos[c].push_back(p);
            all_users.push_back(p);
        }
    }

    std::vector<Point> placed_tx;
    std::vector<Point> placed_rx;
    const SeedSequence d2d_seed = seed.child(stream::d2d);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int c = 0; c < C; ++c) {
        for (int k = 0; k < D; ++k) {
            Engine rng = d2d_seed.child(c).child(k).engine();
            bool done = false;
            for (int attempt = 0; attempt < max_placement_attempts && !done; ++attempt) {
                const Point tx = sample_uniform_hexagon(layout.centers[c], R, rng);
                if (!far_from_all(tx, layout.centers, min_bs) || !far_from_all(tx, all_users, d0) ||
                    !far_from_all(tx, placed_rx, d0))
                    continue;
                for (int a = 0; a < max_angle_attempts; ++a) {
                    const double theta = angle(rng);
                    const Point rx = tx + link * Point(std::cos(theta), std::sin(theta));
                    if (!far_from_all(rx, layout.centers, min_bs) || !far_from_all(rx, placed_tx, d0))
                        continue;
                    net.d2d_tx_pos[c].push_back(tx);
                    net.d2d_rx_pos[c].push_back(rx);
                    placed_tx.push_back(tx);
                    placed_rx.push_back(rx);
                    done = true;
                    break;
                }
            }
            if (!done)
                throw ConfigError("cannot place D2D link under the minimum distance constraints");
        }
    }
    return net;
}

} // namespace d2dmimo
