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

#ifndef D2DMIMO_TESTS_FIXTURES_HPP
#define D2DMIMO_TESTS_FIXTURES_HPP

#include <vector>

#include "d2dmimo/geometry.hpp"

namespace fixture {

// Network with hand-placed entities; centers need not form a ring-complete layout.
inline d2dmimo::NetworkRealization network(const std::vector<d2dmimo::Point> &centers,
                                           const std::vector<std::vector<d2dmimo::Point>> &users,
                                           const std::vector<std::vector<d2dmimo::Point>> &tx = {},
                                           double link = 10.0) {
    d2dmimo::NetworkRealization net;
    net.layout.num_cells = static_cast<int>(centers.size());
    net.layout.circumradius_m = 300.0;
    net.layout.centers = centers;
    net.user_pos = users;
    net.d2d_link_distance_m = link;
    net.d2d_tx_pos = tx.empty() ? std::vector<std::vector<d2dmimo::Point>>(centers.size()) : tx;
    net.d2d_rx_pos = net.d2d_tx_pos;
    for (auto &cell : net.d2d_rx_pos)
        for (auto &p : cell)
            p += d2dmimo::Point(link, 0.0);
    return net;
}

} // namespace fixture

#endif
