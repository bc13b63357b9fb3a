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

#ifndef D2DMIMO_MONTECARLO_HPP
#define D2DMIMO_MONTECARLO_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "d2dmimo/analytic.hpp"
#include "d2dmimo/channel.hpp"
#include "d2dmimo/config.hpp"
#include "d2dmimo/geometry.hpp"
#include "d2dmimo/sir.hpp"

namespace d2dmimo {

// A fading realization dropped because a precoder could not be formed.
struct ExcludedRealization {
    int drop = 0;
    int fading = 0;
    int cell = 0;
    double condition = 0.0;
    std::string reason;
};

struct TrialBatch {
    ScenarioConfig config;
    std::uint64_t master_seed = 0;
    int n_drops = 0;
    int n_fading_per_drop = 0;
    // Ordered by drop, fading, then downlink exact, downlink asymptotic,
    // D2D exact, D2D asymptotic, each by entity index.
    std::vector<SirSample> samples;
    std::vector<ExcludedRealization> excluded;

    std::vector<SirSample> select(EntityKind kind, SirVariant variant) const;
};

// Exact and asymptotic SIRs of every cell-0 receiver for one fading draw.
// Throws SingularityError from the precoders.
std::vector<SirSample> simulate_realization(const ScenarioConfig &config, const NetworkRealization &net,
                                            const LinkGains &gains, const PilotCorrelation &phi, Engine &rng);

PilotCorrelation make_pilots(const ScenarioConfig &config);

// Seeds: geometry of drop d from master/geometry/d, fading f of drop d from
// master/fading/d/f. Output is identical for any thread count; threads <= 0
// uses the hardware concurrency.
TrialBatch run_batch(const ScenarioConfig &config, int threads = 0);

// Runs body(index) for index in [0, count) on a pool of threads.
void parallel_for(int count, int threads, const std::function<void(int)> &body);

// Uniform bins over [lo, hi]; the last bin includes hi.
struct DistanceBins {
    double lo = 0.0;
    double hi = 0.0;
    int count = 0;

    static DistanceBins from_config(const ScenarioConfig &config);
    double width() const { return (hi - lo) / count; }
    double edge(int b) const { return lo + b * width(); }
    double center(int b) const { return lo + (b + 0.5) * width(); }
    // -1 when d lies outside [lo, hi].
    int index(double d) const;
};

struct ComparisonRow {
    EntityKind kind = EntityKind::Downlink;
    int bin = 0;
    double lo_m = 0.0;
    double hi_m = 0.0;
    double center_m = 0.0;
    double analytic_threshold = 0.0;
    double empirical_threshold = 0.0;
    double analytic_goodput_bits = 0.0;
    double empirical_goodput_bits = 0.0;
    std::size_t n_samples = 0;
    double abs_gap = 0.0;
    // (analytic - empirical) / empirical
    double rel_gap = 0.0;
    // Median of |exact - asymptotic| / exact over the bin's realizations.
    double median_asymptotic_gap = 0.0;
};

struct Comparison {
    std::vector<ComparisonRow> rows;
    std::vector<std::string> diagnostics;
};

// Analytic side: epsilon-quantile of the area mixture of closed-form outage
// CDFs over each bin's annulus inside cell 0. Empirical side: epsilon-quantile
// of exact SIRs whose receiver distance falls in the bin. Bins with fewer than
// min_empirical_samples samples are skipped with a diagnostic.
Comparison compare(const TrialBatch &batch, const MomentModel &model, const PolarGrid &grid = {});

} // namespace d2dmimo

#endif
