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

#include <cmath>
#include <set>

#include "d2dmimo/errors.hpp"
#include "d2dmimo/goodput.hpp"
#include "d2dmimo/montecarlo.hpp"

using namespace d2dmimo;

namespace {

ScenarioConfig small(int drops, int fading) {
    ScenarioConfig cfg;
    cfg.n_drops = drops;
    cfg.n_fading_per_drop = fading;
    return cfg;
}

bool same_samples(const TrialBatch &a, const TrialBatch &b) {
    if (a.samples.size() != b.samples.size())
        return false;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const auto &x = a.samples[i], &y = b.samples[i];
        if (!(x.entity == y.entity) || x.sir_linear != y.sir_linear || x.distance_to_bs_m != y.distance_to_bs_m ||
            x.variant != y.variant || x.drop != y.drop || x.fading != y.fading)
            return false;
    }
    return true;
}

}

TEST_SUITE("montecarlo") {

TEST_CASE("empty batch") {
    const auto b = run_batch(small(0, 10), 2);
    CHECK(b.samples.empty());
    CHECK(b.excluded.empty());
    const auto c = compare(b, MomentModel(b.config));
    CHECK(c.rows.empty());
}

TEST_CASE("sample accounting and ordering") {
    const auto cfg = small(3, 2);
    const auto b = run_batch(cfg, 2);
    const int K = cfg.users_per_cell, D = cfg.d2d_per_cell;
    REQUIRE(b.samples.size() == static_cast<std::size_t>(3 * 2 * 2 * (K + D)));
    CHECK(b.select(EntityKind::Downlink, SirVariant::Exact).size() == static_cast<std::size_t>(6 * K));
    CHECK(b.select(EntityKind::D2D, SirVariant::Asymptotic).size() == static_cast<std::size_t>(6 * D));
    std::size_t i = 0;
    for (int d = 0; d < 3; ++d)
        for (int f = 0; f < 2; ++f)
            for (int part = 0; part < 4; ++part) {
                const int n = part < 2 ? K : D;
                for (int k = 0; k < n; ++k, ++i) {
                    const auto &s = b.samples[i];
                    CHECK(s.drop == d);
                    CHECK(s.fading == f);
                    CHECK(s.entity.cell == 0);
                    CHECK(s.entity.index == k);
                    CHECK(s.entity.kind == (part < 2 ? EntityKind::Downlink : EntityKind::D2D));
                    CHECK(s.variant == (part % 2 ? SirVariant::Asymptotic : SirVariant::Exact));
                    CHECK(s.sir_linear > 0.0);
                    CHECK(s.distance_to_bs_m >= cfg.min_bs_distance_m);
                }
            }
    // Exact and asymptotic share the geometry.
    CHECK(b.samples[0].distance_to_bs_m == b.samples[static_cast<std::size_t>(K)].distance_to_bs_m);
}

TEST_CASE("deterministic across runs and thread counts") {
    const auto cfg = small(4, 2);
    const auto a = run_batch(cfg, 1);
    const auto b = run_batch(cfg, 3);
    const auto c = run_batch(cfg, 1);
    CHECK(same_samples(a, b));
    CHECK(same_samples(a, c));
    auto other = cfg;
    other.master_seed += 1;
    CHECK_FALSE(same_samples(a, run_batch(other, 2)));
}

TEST_CASE("distance bins") {
    const auto bins = DistanceBins::from_config(ScenarioConfig{});
    CHECK(bins.lo == 10.0);
    CHECK(bins.hi == 300.0);
    CHECK(bins.count == 10);
    CHECK(bins.center(0) == doctest::Approx(24.5));
    CHECK(bins.index(10.0) == 0);
    CHECK(bins.index(300.0) == 9);
    CHECK(bins.index(38.99) == 0);
    CHECK(bins.index(39.0) == 1);
    CHECK(bins.index(9.99) == -1);
    CHECK(bins.index(300.01) == -1);
    CHECK(bins.index(std::nan("")) == -1);
}

TEST_CASE("empirical side of the comparison on a constant bin") {
    ScenarioConfig cfg;
    cfg.d2d_per_cell = 0;
    TrialBatch b;
    b.config = cfg;
    const int K = cfg.users_per_cell;
    for (int r = 0; r < 20; ++r)
        for (int part = 0; part < 2; ++part)
            for (int k = 0; k < K; ++k) {
                SirSample s;
                s.entity = {EntityKind::Downlink, 0, k};
                s.variant = part ? SirVariant::Asymptotic : SirVariant::Exact;
                s.sir_linear = part ? 4.0 : 5.0;
                s.distance_to_bs_m = 100.0 + r;
                s.drop = r;
                b.samples.push_back(s);
            }
    const auto c = compare(b, MomentModel(cfg));
    REQUIRE(c.rows.size() == 1);
    const auto &row = c.rows[0];
    CHECK(row.bin == 3);
    CHECK(row.n_samples == 200);
    CHECK(row.empirical_threshold == 5.0);
    CHECK(row.median_asymptotic_gap == doctest::Approx(0.2));
    const double g = goodput_bits(5.0, cfg.epsilon, cfg.symbols_per_frame);
    CHECK(row.empirical_goodput_bits == doctest::Approx(g).epsilon(1e-14));
    CHECK(row.rel_gap == doctest::Approx((row.analytic_goodput_bits - g) / g).epsilon(1e-14));
    CHECK(row.analytic_threshold > 0.0);
    CHECK_FALSE(c.diagnostics.empty()); // other bins are empty
}

TEST_CASE("20 x 20 batch fills the downlink bins") {
    const auto b = run_batch(small(20, 20), 0);
    CHECK(b.select(EntityKind::Downlink, SirVariant::Exact).size() >= 4000);
    const auto c = compare(b, MomentModel(b.config));
    std::set<int> bins;
    for (const auto &r : c.rows) {
        CHECK(r.n_samples >= min_empirical_samples);
        CHECK(std::isfinite(r.rel_gap));
        if (r.kind == EntityKind::Downlink)
            bins.insert(r.bin);
    }
    CHECK(bins.size() >= 8);
}

TEST_CASE("parallel_for") {
    std::vector<int> hit(100, 0);
    parallel_for(100, 4, [&](int i) { hit[i] += 1; });
    for (int h : hit)
        CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, 3, [](int i) { if (i == 7) throw DomainError("x"); }), DomainError);
}

}
