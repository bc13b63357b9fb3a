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

#ifndef D2DMIMO_ANALYTIC_HPP
#define D2DMIMO_ANALYTIC_HPP

#include <vector>

#include "d2dmimo/goodput.hpp"
#include "d2dmimo/moments.hpp"

namespace d2dmimo {

// Receiver positions in cell 0 with area weights. The 19-, 7- and 1-cell
// layouts are invariant under the dihedral group of the hexagon, so positions
// are drawn from the fundamental wedge 0..30 degrees only.
struct WeightedPartials {
    std::vector<double> weights; // sum to 1
    std::vector<MomentSet> partials;
};

struct PolarGrid {
    int angular_nodes = 8;
    int radial_nodes = 6;
};

// Gauss-Legendre grid over {r_lo <= |x| <= r_hi} inside the hexagon, clipped
// to the wedge.
WeightedPartials wedge_partials(const MomentModel &model, double r_lo, double r_hi, const PolarGrid &grid = {});

// epsilon-quantile of the area mixture of per-position outage CDFs.
double mixture_downlink_threshold(const WeightedPartials &wp, int K, int D, double epsilon);
double mixture_d2d_threshold(const WeightedPartials &wp, int K, int D, double rho_signal, double epsilon);

// Area average of the per-position goodput.
double mean_downlink_goodput(const WeightedPartials &wp, int K, int D, double epsilon, int symbols_per_frame);
double mean_d2d_goodput(const WeightedPartials &wp, int K, int D, double rho_signal, double epsilon,
                        int symbols_per_frame);

struct CellGoodput {
    int d2d_per_cell = 0;
    double downlink_sum_bits = 0.0;
    double d2d_sum_bits = 0.0;
    double overall_bits = 0.0;
};

// Location-averaged closed-form goodput of cell 0: K E[g_user] + D E[g_d2d],
// with receivers uniform over the cell outside the minimum BS distance.
class CellGoodputModel {
  public:
    explicit CellGoodputModel(const ScenarioConfig &config, const PolarGrid &grid = {8, 24});

    CellGoodput evaluate(int D) const;
    const WeightedPartials &positions() const { return cell_; }

  private:
    ScenarioConfig config_;
    WeightedPartials cell_;
};

} // namespace d2dmimo

#endif
