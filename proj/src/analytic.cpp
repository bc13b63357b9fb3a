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

#include "d2dmimo/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "d2dmimo/errors.hpp"
#include "d2dmimo/quadrature.hpp"

namespace d2dmimo {

namespace {

// Root of a monotone function on [lo, hi] by bisection in log space.
double bisect_log(const std::function<double(double)> &f, double lo, double hi) {
    double flo = f(lo);
    if (flo == 0.0)
        return lo;
    for (int iter = 0; iter < 200 && hi / lo > 1.0 + 1e-15; ++iter) {
        const double mid = std::sqrt(lo * hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return std::sqrt(lo * hi);
}

double total_weight(const WeightedPartials &wp) {
    double s = 0.0;
    for (double w : wp.weights)
        s += w;
    return s;
}

} // namespace

WeightedPartials wedge_partials(const MomentModel &model, double r_lo, double r_hi, const PolarGrid &grid) {
    const double R = model.config().radius_m;
    const double a = model.config().inradius_m();
    r_lo = std::max(r_lo, model.config().min_bs_distance_m);
    r_hi = std::min(r_hi, R);
    if (!(r_hi > r_lo))
        throw DomainError("wedge_partials needs a nonempty radial range inside the cell");
    const auto gt = gauss_legendre(grid.angular_nodes);
    const auto gr = gauss_legendre(grid.radial_nodes);
    const double wedge = std::numbers::pi / 6.0;

    WeightedPartials wp;
    for (std::size_t i = 0; i < gt.nodes.size(); ++i) {
        const double theta = 0.5 * wedge * (gt.nodes[i] + 1.0);
        const double wt = 0.5 * wedge * gt.weights[i];
        // Edge of the flat-topped hexagon facing 30 degrees.
        const double r_edge = a / std::cos(wedge - theta);
        const double hi = std::min(r_hi, r_edge);
        if (!(hi > r_lo))
            continue;
        for (std::size_t j = 0; j < gr.nodes.size(); ++j) {
            const double r = r_lo + 0.5 * (hi - r_lo) * (gr.nodes[j] + 1.0);
            const double wr = 0.5 * (hi - r_lo) * gr.weights[j];
            wp.weights.push_back(wt * wr * r);
            wp.partials.push_back(model.partials(Point(r * std::cos(theta), r * std::sin(theta))));
        }
    }
    if (wp.weights.empty())
        throw DomainError("radial range does not intersect the cell");
    const double total = total_weight(wp);
    for (double &w : wp.weights)
        w /= total;
    return wp;
}

double mixture_downlink_threshold(const WeightedPartials &wp, int K, int D, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw DomainError("epsilon must lie in (0, 1)");
    std::vector<MomentSet> agg;
    agg.reserve(wp.partials.size());
    const double qi = q_inverse(epsilon);
    double ylo = std::numeric_limits<double>::infinity();
    double yhi = 0.0;
    for (const auto &p : wp.partials) {
        agg.push_back(aggregate_moments(p, K, D));
        const double y = agg.back().mu_C + qi * agg.back().sigma_C;
        if (!(y > 0.0))
            throw AnalyticBreakdown("downlink threshold denominator is not positive at a grid position");
        ylo = std::min(ylo, y);
        yhi = std::max(yhi, y);
    }
    // In terms of y = 1/tau the mixture outage sum_p w_p Q((y - mu_p)/sigma_p) decreases in y.
    auto excess = [&](double y) {
        double F = 0.0;
        for (std::size_t k = 0; k < agg.size(); ++k) {
            const double tau = 1.0 / y;
            F += wp.weights[k] * downlink_outage_cdf(tau, agg[k]);
        }
        return F - epsilon;
    };
    if (ylo == yhi)
        return 1.0 / ylo;
    return 1.0 / bisect_log(excess, ylo, yhi);
}

double mixture_d2d_threshold(const WeightedPartials &wp, int K, int D, double rho_signal, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw DomainError("epsilon must lie in (0, 1)");
    std::vector<double> mu;
    mu.reserve(wp.partials.size());
    double tlo = std::numeric_limits<double>::infinity();
    double thi = 0.0;
    const double q = exp_quantile(epsilon, rho_signal);
    for (const auto &p : wp.partials) {
        mu.push_back(aggregate_moments(p, K, D).mu_D2D());
        const double t = q / mu.back();
        tlo = std::min(tlo, t);
        thi = std::max(thi, t);
    }
    auto excess = [&](double tau) {
        double F = 0.0;
        for (std::size_t k = 0; k < mu.size(); ++k)
            F += wp.weights[k] * -std::expm1(-tau * mu[k] / rho_signal);
        return F - epsilon;
    };
    if (tlo == thi)
        return tlo;
    return bisect_log(excess, tlo, thi);
}

double mean_downlink_goodput(const WeightedPartials &wp, int K, int D, double epsilon, int symbols_per_frame) {
    double g = 0.0;
    for (std::size_t k = 0; k < wp.partials.size(); ++k)
        g += wp.weights[k] *
             downlink_goodput(aggregate_moments(wp.partials[k], K, D), epsilon, symbols_per_frame).avg_goodput_bits;
    return g;
}

double mean_d2d_goodput(const WeightedPartials &wp, int K, int D, double rho_signal, double epsilon,
                        int symbols_per_frame) {
    double g = 0.0;
    for (std::size_t k = 0; k < wp.partials.size(); ++k)
        g += wp.weights[k] * d2d_goodput(aggregate_moments(wp.partials[k], K, D), rho_signal, epsilon,
                                         symbols_per_frame)
                                 .avg_goodput_bits;
    return g;
}

CellGoodputModel::CellGoodputModel(const ScenarioConfig &config, const PolarGrid &grid)
    : config_(config), cell_(wedge_partials(MomentModel(config), config.min_bs_distance_m, config.radius_m, grid)) {}

CellGoodput CellGoodputModel::evaluate(int D) const {
    if (D < 0)
        throw DomainError("D must be >= 0");
    const int K = config_.users_per_cell;
    CellGoodput out;
    out.d2d_per_cell = D;
    out.downlink_sum_bits = K * mean_downlink_goodput(cell_, K, D, config_.epsilon, config_.symbols_per_frame);
    if (D > 0) {
        const double rho_signal = pathloss_ue(config_.d2d_link_distance_m, config_.kappa_ue);
        out.d2d_sum_bits =
            D * mean_d2d_goodput(cell_, K, D, rho_signal, config_.epsilon, config_.symbols_per_frame);
    }
    out.overall_bits = out.downlink_sum_bits + out.d2d_sum_bits;
    return out;
}

} // namespace d2dmimo
