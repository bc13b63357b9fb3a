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

#include "d2dmimo/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "d2dmimo/errors.hpp"
#include "d2dmimo/goodput.hpp"
#include "d2dmimo/precoding.hpp"

namespace d2dmimo {

std::vector<SirSample> TrialBatch::select(EntityKind kind, SirVariant variant) const {
    std::vector<SirSample> out;
    for (const auto &s : samples)
        if (s.entity.kind == kind && s.variant == variant)
            out.push_back(s);
    return out;
}

PilotCorrelation make_pilots(const ScenarioConfig &config) {
    PilotConfig pilot;
    pilot.pilot_length = config.pilot_length;
    pilot.uplink_power_w = config.pu_w();
    pilot.model = config.pilot_model;
    return PilotCorrelation(pilot, config.cells, config.users_per_cell);
}

std::vector<SirSample> simulate_realization(const ScenarioConfig &config, const NetworkRealization &net,
                                            const LinkGains &gains, const PilotCorrelation &phi, Engine &rng) {
    auto ch = draw_channels<double>(gains, config.antennas, rng);
    estimate_channels(ch, phi);
    const auto precoders = zf_precoders<double>(ch.h_hat);
    const SirPowers powers{config.pb_w(), config.pd_w()};

    std::vector<SirSample> out;
    out.reserve(static_cast<std::size_t>(2 * (ch.users + ch.d2d)));
    for (int k = 0; k < ch.users; ++k)
        out.push_back(exact_downlink_sir(net, ch, precoders, powers, 0, k));
    for (int k = 0; k < ch.users; ++k)
        out.push_back(asymptotic_downlink_sir(net, ch, gains, powers, config.pilot_length, 0, k));
    for (int k = 0; k < ch.d2d; ++k)
        out.push_back(exact_d2d_sir(net, ch, precoders, powers, 0, k));
    for (int k = 0; k < ch.d2d; ++k)
        out.push_back(asymptotic_d2d_sir(net, ch, gains, powers, 0, k));
    return out;
}

void parallel_for(int count, int threads, const std::function<void(int)> &body) {
    if (threads <= 0)
        threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min(threads, std::max(count, 1));
    if (threads <= 1) {
        for (int i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count)
                    return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                    next.store(count);
                }
            }
        });
    }
    for (auto &th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

TrialBatch run_batch(const ScenarioConfig &config, int threads) {
    config.validate();
    TrialBatch batch;
    batch.config = config;
    batch.master_seed = config.master_seed;
    batch.n_drops = config.n_drops;
    batch.n_fading_per_drop = config.n_fading_per_drop;
    if (config.n_drops == 0)
        return batch;

    const HexLayout layout = build_layout(config.cells, config.radius_m);
    const PilotCorrelation phi = make_pilots(config);
    const PathlossParams params{config.sigma_bs, config.kappa_ue};
    const SeedSequence master(config.master_seed);

    struct DropResult {
        std::vector<SirSample> samples;
        std::vector<ExcludedRealization> excluded;
    };
    std::vector<DropResult> results(static_cast<std::size_t>(config.n_drops));

    parallel_for(config.n_drops, threads, [&](int d) {
        const NetworkRealization net = drop_network(config, layout, master.child(stream::geometry).child(d));
        const LinkGains gains = compute_link_gains(net, params, 1);
        auto &res = results[static_cast<std::size_t>(d)];
        for (int f = 0; f < config.n_fading_per_drop; ++f) {
            Engine rng = master.child(stream::fading).child(d).child(f).engine();
            try {
                auto samples = simulate_realization(config, net, gains, phi, rng);
                for (auto &s : samples) {
                    s.drop = d;
                    s.fading = f;
                    res.samples.push_back(s);
                }
            } catch (const SingularityError &e) {
                res.excluded.push_back({d, f, -1, e.condition(), e.what()});
            }
        }
    });

    for (auto &r : results) {
        batch.samples.insert(batch.samples.end(), r.samples.begin(), r.samples.end());
        batch.excluded.insert(batch.excluded.end(), r.excluded.begin(), r.excluded.end());
    }
    return batch;
}

DistanceBins DistanceBins::from_config(const ScenarioConfig &config) {
    return {config.min_bs_distance_m, config.radius_m, config.distance_bins};
}

int DistanceBins::index(double d) const {
    if (!(d >= lo) || d > hi)
        return -1;
    const int b = static_cast<int>((d - lo) / width());
    return std::min(b, count - 1);
}

namespace {

double median(std::vector<double> v) {
    if (v.empty())
        return 0.0;
    const std::size_t n = v.size();
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n / 2), v.end());
    const double upper = v[n / 2];
    if (n % 2 == 1)
        return upper;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n / 2 - 1), v.end());
    return 0.5 * (upper + v[n / 2 - 1]);
}

} // namespace

Comparison compare(const TrialBatch &batch, const MomentModel &model, const PolarGrid &grid) {
    const ScenarioConfig &config = batch.config;
    const DistanceBins bins = DistanceBins::from_config(config);
    const int K = config.users_per_cell;
    const int D = config.d2d_per_cell;
    const double rho_signal = pathloss_ue(config.d2d_link_distance_m, config.kappa_ue);
    Comparison out;

    // Exact and asymptotic samples of one realization pair up by entity.
    struct Binned {
        std::vector<SirSample> exact;
        std::vector<double> asym_gap;
    };
    const int nkinds = D > 0 ? 2 : 1;
    std::vector<std::vector<Binned>> binned(static_cast<std::size_t>(nkinds),
                                            std::vector<Binned>(static_cast<std::size_t>(bins.count)));
    std::size_t outside = 0;
    const std::size_t per_realization = static_cast<std::size_t>(2 * (K + D));
    for (std::size_t base = 0; base + per_realization <= batch.samples.size(); base += per_realization) {
        for (int kind = 0; kind < nkinds; ++kind) {
            const int n = kind == 0 ? K : D;
            const std::size_t offset = kind == 0 ? 0 : static_cast<std::size_t>(2 * K);
            for (int k = 0; k < n; ++k) {
                const SirSample &ex = batch.samples[base + offset + static_cast<std::size_t>(k)];
                const SirSample &as = batch.samples[base + offset + static_cast<std::size_t>(n + k)];
                const int b = bins.index(ex.distance_to_bs_m);
                if (b < 0) {
                    ++outside;
                    continue;
                }
                auto &cell = binned[static_cast<std::size_t>(kind)][static_cast<std::size_t>(b)];
                cell.exact.push_back(ex);
                if (std::isfinite(ex.sir_linear) && ex.sir_linear > 0.0)
                    cell.asym_gap.push_back(std::abs(ex.sir_linear - as.sir_linear) / ex.sir_linear);
            }
        }
    }
    if (outside > 0) {
        std::ostringstream msg;
        msg << outside << " samples with receiver distance outside [" << bins.lo << ", " << bins.hi
            << "] m were not binned";
        out.diagnostics.push_back(msg.str());
    }

    for (int b = 0; b < bins.count; ++b) {
        bool need = false;
        for (int kind = 0; kind < nkinds; ++kind)
            need = need || binned[static_cast<std::size_t>(kind)][static_cast<std::size_t>(b)].exact.size() >=
                               min_empirical_samples;
        if (!need) {
            std::ostringstream msg;
            msg << "bin " << b << " [" << bins.edge(b) << ", " << bins.edge(b + 1)
                << ") m skipped: fewer than " << min_empirical_samples << " samples";
            out.diagnostics.push_back(msg.str());
            continue;
        }
        const WeightedPartials wp = wedge_partials(model, bins.edge(b), bins.edge(b + 1), grid);
        for (int kind = 0; kind < nkinds; ++kind) {
            const auto &cell = binned[static_cast<std::size_t>(kind)][static_cast<std::size_t>(b)];
            const EntityKind ek = kind == 0 ? EntityKind::Downlink : EntityKind::D2D;
            if (cell.exact.size() < min_empirical_samples) {
                std::ostringstream msg;
                msg << to_string(ek) << " bin " << b << " skipped: " << cell.exact.size() << " samples";
                out.diagnostics.push_back(msg.str());
                continue;
            }
            ComparisonRow row;
            row.kind = ek;
            row.bin = b;
            row.lo_m = bins.edge(b);
            row.hi_m = bins.edge(b + 1);
            row.center_m = bins.center(b);
            const GoodputResult emp = empirical_goodput(cell.exact, config.epsilon, config.symbols_per_frame);
            row.empirical_threshold = emp.threshold_linear;
            row.empirical_goodput_bits = emp.avg_goodput_bits;
            row.n_samples = emp.sample_count;
            row.analytic_threshold = kind == 0 ? mixture_downlink_threshold(wp, K, D, config.epsilon)
                                               : mixture_d2d_threshold(wp, K, D, rho_signal, config.epsilon);
            row.analytic_goodput_bits = goodput_bits(row.analytic_threshold, config.epsilon, config.symbols_per_frame);
            row.abs_gap = row.analytic_goodput_bits - row.empirical_goodput_bits;
            row.rel_gap = row.abs_gap / row.empirical_goodput_bits;
            row.median_asymptotic_gap = median(cell.asym_gap);
            out.rows.push_back(row);
        }
    }
    std::stable_sort(out.rows.begin(), out.rows.end(), [](const ComparisonRow &a, const ComparisonRow &b) {
        if (a.kind != b.kind)
            return a.kind == EntityKind::Downlink;
        return a.bin < b.bin;
    });
    return out;
}

} // namespace d2dmimo
