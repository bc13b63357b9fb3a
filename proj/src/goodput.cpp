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

#include "d2dmimo/goodput.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "d2dmimo/errors.hpp"

namespace d2dmimo {

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_inverse(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("q_inverse needs 0 < p < 1, got " + std::to_string(p));
    // Acklam's rational approximation of the normal quantile at 1 - p.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    const double u = 1.0 - p; // lower-tail probability of the answer
    const double plow = 0.02425;
    double x;
    if (u < plow) {
        const double q = std::sqrt(-2.0 * std::log(u));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (u <= 1.0 - plow) {
        const double q = u - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // Halley refinement on Q(x) - p.
    for (int iter = 0; iter < 3; ++iter) {
        const double e = q_function(x) - p;
        const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
        const double step = -e / pdf; // Q'(x) = -pdf
        x = x - step / (1.0 + 0.5 * x * step);
    }
    return x;
}

double exp_quantile(double p, double lambda_mean) {
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("exp_quantile needs 0 < p < 1, got " + std::to_string(p));
    if (!(lambda_mean > 0.0))
        throw DomainError("exp_quantile needs a positive mean");
    return -lambda_mean * std::log1p(-p);
}

const char *to_string(GoodputMethod method) { return method == GoodputMethod::Analytic ? "analytic" : "empirical"; }

double goodput_bits(double threshold_linear, double epsilon, int symbols_per_frame) {
    return (1.0 - epsilon) * symbols_per_frame * std::log2(1.0 + threshold_linear);
}

double downlink_outage_cdf(double tau, const MomentSet &moments) {
    if (!(tau > 0.0))
        throw DomainError("downlink_outage_cdf needs tau > 0");
    const double z = 1.0 / tau - moments.mu_C;
    if (moments.sigma_C == 0.0)
        return z > 0.0 ? 0.0 : (z < 0.0 ? 1.0 : 0.5);
    return q_function(z / moments.sigma_C);
}

double d2d_outage_cdf(double tau, const MomentSet &moments, double rho_signal) {
    if (!(tau > 0.0))
        throw DomainError("d2d_outage_cdf needs tau > 0");
    if (!(rho_signal > 0.0))
        throw DomainError("d2d_outage_cdf needs rho_signal > 0");
    return -std::expm1(-tau * moments.mu_D2D() / rho_signal);
}

namespace {

void check_epsilon(double epsilon, int symbols_per_frame) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw DomainError("epsilon must lie in (0, 1)");
    if (symbols_per_frame < 1)
        throw DomainError("symbols_per_frame must be >= 1");
}

} // namespace

GoodputResult downlink_goodput(const MomentSet &moments, double epsilon, int symbols_per_frame) {
    check_epsilon(epsilon, symbols_per_frame);
    const double den = q_inverse(epsilon) * moments.sigma_C + moments.mu_C;
    if (!(den > 0.0))
        throw AnalyticBreakdown("downlink threshold denominator Q^-1(eps) sigma_C + mu_C = " + std::to_string(den) +
                                " is not positive");
    GoodputResult r;
    r.entity = {EntityKind::Downlink, 0, 0};
    r.threshold_linear = 1.0 / den;
    r.avg_goodput_bits = goodput_bits(r.threshold_linear, epsilon, symbols_per_frame);
    r.epsilon = epsilon;
    r.method = GoodputMethod::Analytic;
    return r;
}

GoodputResult d2d_goodput(const MomentSet &moments, double rho_signal, double epsilon, int symbols_per_frame) {
    check_epsilon(epsilon, symbols_per_frame);
    const double mu = moments.mu_D2D();
    if (!(mu > 0.0))
        throw AnalyticBreakdown("mu_D2D must be positive");
    GoodputResult r;
    r.entity = {EntityKind::D2D, 0, 0};
    r.threshold_linear = exp_quantile(epsilon, rho_signal) / mu;
    r.avg_goodput_bits = goodput_bits(r.threshold_linear, epsilon, symbols_per_frame);
    r.epsilon = epsilon;
    r.method = GoodputMethod::Analytic;
    return r;
}

double cell_overall_goodput(const std::vector<GoodputResult> &per_user, const std::vector<GoodputResult> &per_d2d,
                            int K, int D) {
    if (K < 0 || D < 0)
        throw DomainError("cell_overall_goodput needs K, D >= 0");
    auto mean = [](const std::vector<GoodputResult> &v) {
        double s = 0.0;
        for (const auto &g : v)
            s += g.avg_goodput_bits;
        return s / static_cast<double>(v.size());
    };
    if ((K > 0 && per_user.empty()) || (D > 0 && per_d2d.empty()) || (per_user.empty() && per_d2d.empty()))
        throw DomainError("cell_overall_goodput needs samples for every entity type with a nonzero count");
    double total = 0.0;
    if (K > 0)
        total += K * mean(per_user);
    if (D > 0)
        total += D * mean(per_d2d);
    return total;
}

double empirical_quantile(std::vector<double> values, double epsilon) {
    if (values.empty())
        throw StatisticalError("empirical_quantile needs samples", 1, 0);
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw DomainError("quantile level must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * epsilon;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = h - static_cast<double>(lo);
    if (frac == 0.0)
        return values[lo];
    return values[lo] + frac * (values[hi] - values[lo]);
}

GoodputResult empirical_goodput(const std::vector<SirSample> &samples, double epsilon, int symbols_per_frame) {
    check_epsilon(epsilon, symbols_per_frame);
    if (samples.size() < min_empirical_samples)
        throw StatisticalError("empirical_goodput needs at least " + std::to_string(min_empirical_samples) +
                                   " samples, got " + std::to_string(samples.size()),
                               min_empirical_samples, samples.size());
    std::vector<double> v;
    v.reserve(samples.size());
    for (const auto &s : samples)
        v.push_back(s.sir_linear);
    GoodputResult r;
    r.entity = samples.front().entity;
    r.threshold_linear = empirical_quantile(std::move(v), epsilon);
    r.avg_goodput_bits = goodput_bits(r.threshold_linear, epsilon, symbols_per_frame);
    r.epsilon = epsilon;
    r.method = GoodputMethod::Empirical;
    r.sample_count = samples.size();
    return r;
}

} // namespace d2dmimo
