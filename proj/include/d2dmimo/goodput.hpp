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

#ifndef D2DMIMO_GOODPUT_HPP
#define D2DMIMO_GOODPUT_HPP

#include <cstddef>
#include <vector>

#include "d2dmimo/moments.hpp"
#include "d2dmimo/sir.hpp"
#include "d2dmimo/types.hpp"

namespace d2dmimo {

// Pr[N(0,1) > x].
double q_function(double x);
// x with q_function(x) = p; throws DomainError unless 0 < p < 1.
double q_inverse(double p);
// p-quantile of an exponential with the given mean.
double exp_quantile(double p, double lambda_mean);

enum class GoodputMethod { Analytic, Empirical };

const char *to_string(GoodputMethod method);

struct GoodputResult {
    EntityId entity;
    double threshold_linear = 0.0;
    double avg_goodput_bits = 0.0;
    double epsilon = 0.0;
    GoodputMethod method = GoodputMethod::Analytic;
    std::size_t sample_count = 0;
};

// (1 - epsilon) L log2(1 + T).
double goodput_bits(double threshold_linear, double epsilon, int symbols_per_frame);

// Gaussian model of 1/SIR: Q((1/tau - mu_C) / sigma_C). With sigma_C = 0 the
// CDF is the step at tau = 1/mu_C.
double downlink_outage_cdf(double tau, const MomentSet &moments);
// Exponential signal power with mean rho_signal: 1 - exp(-tau mu_D2D / rho_signal).
double d2d_outage_cdf(double tau, const MomentSet &moments, double rho_signal);

// T = 1 / (Q^-1(eps) sigma_C + mu_C). Throws AnalyticBreakdown when the
// denominator is not positive.
GoodputResult downlink_goodput(const MomentSet &moments, double epsilon, int symbols_per_frame);
// T = exp_quantile(eps, rho_signal) / mu_D2D. Throws DomainError without D2D links.
GoodputResult d2d_goodput(const MomentSet &moments, double rho_signal, double epsilon, int symbols_per_frame);

// K mean(per_user) + D mean(per_d2d). An empty list is allowed only when its
// multiplier is zero.
double cell_overall_goodput(const std::vector<GoodputResult> &per_user, const std::vector<GoodputResult> &per_d2d,
                            int K, int D);

inline constexpr std::size_t min_empirical_samples = 100;

// Lower epsilon-quantile with linear interpolation between order statistics:
// position h = (n - 1) epsilon over the sorted samples.
double empirical_quantile(std::vector<double> values, double epsilon);

// Throws StatisticalError below min_empirical_samples.
GoodputResult empirical_goodput(const std::vector<SirSample> &samples, double epsilon, int symbols_per_frame);

} // namespace d2dmimo

#endif
