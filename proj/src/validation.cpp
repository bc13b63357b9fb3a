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

#include "d2dmimo/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "d2dmimo/errors.hpp"
#include "d2dmimo/goodput.hpp"
#include "d2dmimo/moments.hpp"
#include "d2dmimo/montecarlo.hpp"
#include "d2dmimo/precoding.hpp"

namespace d2dmimo {

double ks_statistic(std::vector<double> samples, const std::function<double(double)> &cdf) {
    if (samples.empty())
        throw DomainError("ks_statistic needs at least one sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double F = cdf(samples[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - F, F - static_cast<double>(i) / n});
    }
    return d;
}

double ks_critical_value(std::size_t n, double significance) {
    if (!(significance > 0.0 && significance < 1.0))
        throw DomainError("significance must lie in (0, 1)");
    if (n == 0)
        throw DomainError("ks_critical_value needs n >= 1");
    // Kolmogorov limit: P(sqrt(n) D > c) ~ 2 exp(-2 c^2).
    return std::sqrt(-0.5 * std::log(significance / 2.0)) / std::sqrt(static_cast<double>(n));
}

ZfResidualReport zf_residual_check(int instances, int K, int M, std::uint64_t seed, double tolerance) {
    if (instances < 0 || K < 1 || M < K)
        throw DomainError("zf_residual_check needs instances >= 0 and 1 <= K <= M");
    ZfResidualReport out;
    out.instances = instances;
    const SeedSequence root(seed);
    for (int n = 0; n < instances; ++n) {
        Engine rng = root.child(n).engine();
        ComplexNormal<double> cn;
        CMatrixXd H(K, M);
        for (Index r = 0; r < K; ++r)
            H.row(r) = detail::draw_row<double>(M, 1.0, cn, rng);
        const auto P = zf_precoder<double>(H);
        const double res = (H * P.matrix - CMatrixXd::Identity(K, K)).norm();
        out.max_residual = std::max(out.max_residual, res);
        if (!(res < tolerance))
            ++out.failures;
    }
    return out;
}

namespace {

Point sample_outside(const Point &center, double R, double exclusion, const Point &avoid, double hard_core,
                     Engine &rng) {
    for (;;) {
        const Point p = sample_uniform_hexagon(center, R, rng);
        if (distance(p, center) >= exclusion && distance(p, avoid) >= hard_core)
            return p;
    }
}

void mean_sd(const std::vector<double> &v, double &mean, double &sd) {
    mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double median(std::vector<double> v) {
    if (v.empty())
        return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

std::vector<double> inverse_sir_draws(const ScenarioConfig &config, const Point &target, std::size_t n,
                                      std::uint64_t seed) {
    config.validate();
    const HexLayout layout = build_layout(config.cells, config.radius_m);
    const int M = config.antennas;
    const double Lp = config.pilot_length;
    const double scale = config.pd_w() / config.pb_w();
    Engine rng = SeedSequence(seed).child(stream::validation).engine();
    std::gamma_distribution<double> gamma_m(static_cast<double>(M), 1.0);
    std::exponential_distribution<double> exp1(1.0);

    std::vector<double> out;
    out.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        double y = 0.0;
        for (int i = 1; i < config.cells; ++i) {
            const Point &c = layout.centers[static_cast<std::size_t>(i)];
            const double rho_t = pathloss_bs(distance(target, c), config.sigma_bs);
            for (int j = 0; j < config.users_per_cell; ++j) {
                const Point u = sample_outside(c, config.radius_m, config.min_bs_distance_m, c, 0.0, rng);
                const double rho_i = pathloss_bs(distance(u, c), config.sigma_bs);
                const double norm2 = rho_i * gamma_m(rng);
                const double ip = rho_t * norm2 * exp1(rng);
                y += ip / (M * rho_i * M * rho_i) + (rho_t / rho_i) * (rho_t / rho_i) / Lp;
            }
        }
        for (int i = 0; i < config.cells; ++i) {
            const Point &c = layout.centers[static_cast<std::size_t>(i)];
            for (int m = 0; m < config.d2d_per_cell; ++m) {
                const Point t = sample_outside(c, config.radius_m, config.min_bs_distance_m, target,
                                               config.min_device_distance_m, rng);
                y += scale * pathloss_ue(distance(t, target), config.kappa_ue) * exp1(rng);
            }
        }
        out.push_back(y);
    }
    return out;
}

KsReport downlink_clt_ks(const ScenarioConfig &config, const Point &target, std::size_t n, std::uint64_t seed,
                         double threshold) {
    const MomentSet ms = MomentModel(config).moments(target);
    const auto draws = inverse_sir_draws(config, target, n, seed);
    KsReport out;
    out.n = n;
    out.model_mean = ms.mu_C;
    out.model_sd = ms.sigma_C;
    mean_sd(draws, out.sample_mean, out.sample_sd);
    out.statistic = ks_statistic(draws, [&](double y) { return q_function((ms.mu_C - y) / ms.sigma_C); });
    out.critical = threshold;
    out.pass = out.statistic < threshold;
    return out;
}

KsReport d2d_signal_ks(const ScenarioConfig &config, std::size_t n, std::uint64_t seed, double significance) {
    const double rho = pathloss_ue(config.d2d_link_distance_m, config.kappa_ue);
    Engine rng = SeedSequence(seed).child(stream::validation).child(1).engine();
    ComplexNormal<double> cn;
    std::vector<double> draws;
    draws.reserve(n);
    for (std::size_t s = 0; s < n; ++s)
        draws.push_back(std::norm(std::sqrt(rho) * cn(rng)));
    KsReport out;
    out.n = n;
    out.model_mean = rho;
    out.model_sd = rho;
    mean_sd(draws, out.sample_mean, out.sample_sd);
    out.statistic = ks_statistic(draws, [&](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x / rho); });
    out.critical = ks_critical_value(n, significance);
    out.pass = out.statistic < out.critical;
    return out;
}

std::vector<ConvergencePoint> asymptotic_convergence(const ScenarioConfig &config, const std::vector<int> &antennas,
                                                     int realizations, int threads) {
    config.validate();
    const HexLayout layout = build_layout(config.cells, config.radius_m);
    const SeedSequence master(config.master_seed);
    const NetworkRealization net = drop_network(config, layout, master.child(stream::geometry).child(0));
    const LinkGains gains = compute_link_gains(net, {config.sigma_bs, config.kappa_ue}, 1);
    const PilotCorrelation phi = make_pilots(config);
    const int K = config.users_per_cell;
    const int D = config.d2d_per_cell;

    std::vector<ConvergencePoint> out;
    for (int M : antennas) {
        ScenarioConfig cfg = config;
        cfg.antennas = M;
        cfg.validate();
        std::vector<std::vector<SirSample>> slots(static_cast<std::size_t>(realizations));
        parallel_for(realizations, threads, [&](int r) {
            Engine rng = master.child(stream::validation).child(static_cast<std::uint64_t>(M)).child(r).engine();
            try {
                slots[static_cast<std::size_t>(r)] = simulate_realization(cfg, net, gains, phi, rng);
            } catch (const SingularityError &) {
            }
        });
        std::vector<double> dl;
        std::vector<double> dd;
        for (const auto &s : slots) {
            if (s.empty())
                continue;
            for (int k = 0; k < K; ++k) {
                const double ex = s[static_cast<std::size_t>(k)].sir_linear;
                const double as = s[static_cast<std::size_t>(K + k)].sir_linear;
                dl.push_back(std::abs(ex - as) / ex);
            }
            for (int k = 0; k < D; ++k) {
                const double ex = s[static_cast<std::size_t>(2 * K + k)].sir_linear;
                const double as = s[static_cast<std::size_t>(2 * K + D + k)].sir_linear;
                dd.push_back(std::abs(ex - as) / ex);
            }
        }
        ConvergencePoint p;
        p.antennas = M;
        p.downlink_count = dl.size();
        p.d2d_count = dd.size();
        p.downlink_median_gap = median(dl);
        p.d2d_median_gap = median(dd);
        out.push_back(p);
    }
    return out;
}

std::vector<PropertyResult> run_validation(const ScenarioConfig &config, const ValidationOptions &options) {
    config.validate();
    std::vector<PropertyResult> out;
    const SeedSequence master(config.master_seed);

    {
        const auto zf = zf_residual_check(options.zf_instances, config.users_per_cell, config.antennas,
                                          master.child(stream::validation).child(10).value());
        std::ostringstream d;
        d << zf.instances << " instances, " << zf.failures << " above tolerance";
        out.push_back({"zf_residual", zf.failures == 0, zf.max_residual, zf_residual_tolerance, d.str()});
    }
    {
        const Point target(0.5 * config.radius_m, 0.0);
        const auto ks = downlink_clt_ks(config, target, options.ks_samples,
                                        master.child(stream::validation).child(11).value());
        std::ostringstream d;
        d << "n=" << ks.n << " model mean " << ks.model_mean << " sd " << ks.model_sd << ", sample mean "
          << ks.sample_mean << " sd " << ks.sample_sd;
        out.push_back({"downlink_clt_ks", ks.pass, ks.statistic, ks.critical, d.str()});
    }
    {
        const auto ks = d2d_signal_ks(config, options.ks_samples, master.child(stream::validation).child(12).value());
        std::ostringstream d;
        d << "n=" << ks.n << " mean " << ks.model_mean << ", sample mean " << ks.sample_mean;
        out.push_back({"d2d_exponential_ks", ks.pass, ks.statistic, ks.critical, d.str()});
    }
    {
        const auto conv = asymptotic_convergence(config, options.convergence_antennas,
                                                 options.convergence_realizations, options.threads);
        bool dl_ok = true;
        bool dd_ok = true;
        std::ostringstream d;
        for (std::size_t i = 0; i < conv.size(); ++i) {
            d << (i ? "; " : "") << "M=" << conv[i].antennas << " downlink " << conv[i].downlink_median_gap
              << " d2d " << conv[i].d2d_median_gap;
            if (i > 0) {
                dl_ok = dl_ok && conv[i].downlink_median_gap < conv[i - 1].downlink_median_gap;
                if (config.d2d_per_cell > 0)
                    dd_ok = dd_ok && conv[i].d2d_median_gap < conv[i - 1].d2d_median_gap;
            }
        }
        const double last = conv.empty() ? 0.0 : conv.back().downlink_median_gap;
        out.push_back({"asymptotic_convergence", dl_ok && dd_ok, last, 0.0, d.str()});
    }
    return out;
}

} // namespace d2dmimo
