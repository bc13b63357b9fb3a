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

#ifndef D2DMIMO_GEOMETRY_HPP
#define D2DMIMO_GEOMETRY_HPP

#include <array>
#include <vector>

#include "d2dmimo/config.hpp"
#include "d2dmimo/random.hpp"
#include "d2dmimo/types.hpp"

namespace d2dmimo {

// Flat-topped hexagons: vertices at 0, 60, ..., 300 degrees, circumradius R,
// inradius sqrt(3)/2 R. Adjacent centers are sqrt(3) R apart.
struct HexLayout {
    int num_cells = 0;
    double circumradius_m = 0.0;
    std::vector<Point> centers;

    double inradius_m() const;
    double area_m2() const;
};

// Centers ordered ring by ring, counter-clockwise from the positive x axis
// inside each ring. Only ring-complete sizes 1, 7 and 19 are accepted.
HexLayout build_layout(int num_cells, double circumradius_m);

double distance(const Point &a, const Point &b);

// Closed hexagon test with a small relative tolerance on the boundary.
bool in_hexagon(const Point &p, const Point &center, double circumradius_m);

std::array<Point, 6> hexagon_vertices(const Point &center, double circumradius_m);

// Rejection sampling from the bounding box; acceptance ratio 3 sqrt(3) / 8.
Point sample_uniform_hexagon(const Point &center, double circumradius_m, Engine &rng);

struct NetworkRealization {
    HexLayout layout;
    // [cell][index]
    std::vector<std::vector<Point>> user_pos;
    std::vector<std::vector<Point>> d2d_tx_pos;
    std::vector<std::vector<Point>> d2d_rx_pos;
    double d2d_link_distance_m = 0.0;

    int users_per_cell() const;
    int d2d_per_cell() const;
};

// Users and D2D transmitters are uniform in their hexagon at least
// min_bs_distance_m from the serving BS. D2D receivers sit at the link distance
// from their transmitter in a uniform direction and keep min_bs_distance_m from
// every BS. Each D2D transmitter is at least min_device_distance_m from every
// downlink user and from every other link's receiver; violating draws are
// resampled. Each entity draws from its own stream derived from seed.
NetworkRealization drop_network(const ScenarioConfig &config, const HexLayout &layout, const SeedSequence &seed);

} // namespace d2dmimo

#endif
