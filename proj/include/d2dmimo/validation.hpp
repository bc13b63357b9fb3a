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

#ifndef D2DMIMO_VALIDATION_HPP
#define D2DMIMO_VALIDATION_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "d2dmimo/config.hpp"
#include "d2dmimo/types.hpp"

namespace d2dmimo {

// sup_x |F_n(x) - F(x)| of the samples against a continuous CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)> &cdf);

// Asymptotic critical value of the one-sample KS statistic.
double ks_critical_value(std::size_t n, double significance);

struct ZfResidualReport {
    int instances = 0;
    double max_residual = 0.0;
    int failures = 0;
};

// ZF precoders of i.i.d. CN(0, 1) K x M estimates; residual ||H P - I||_F.
ZfResidualReport zf_residual_check(int instances, int K, int M, std::uint64_t seed, double tolerance = 1e-8);

struct KsReport {
    std::size_t n = 0;
    double statistic = 0.0;
    double critical = 0.0;
    double model_mean = 0.0;
    double model_sd = 0.0;
    double sample_mean = 0.0;
    double sample_sd = 0.0;
    bool pass = false;
};

// Draws of 1 / gamma for a downlink receiver fixed at target: interferer
// positions uniform in their cells and fading redrawn each time, with the
// large-M SIR form. ||h'||^2 is drawn as rho' Gamma(M, 1) and |h_t h'^H|^2 given
// h' as an exponential with mean rho_t ||h'||^2, which is exact in
// distribution. Compared to N(mu_C, sigma_C^2) at the same target.
std::vector<double> inverse_sir_draws(const ScenarioConfig &config, const Point &target, std::size_t n,
                                      std::uint64_t seed);
KsReport downlink_clt_ks(const ScenarioConfig &config, const Point &target, std::size_t n, std::uint64_t seed,
                         double threshold = 0.05);

// |g|^2 of a D2D link at the configured link distance, drawn as the simulator
// draws it, against exponential(distance^-kappa) at the given significance.
KsReport d2d_signal_ks(const ScenarioConfig &config, std::size_t n, std::uint64_t seed, double significance = 0.01);

struct ConvergencePoint {
    int antennas = 0;
    double downlink_median_gap = 0.0;
    double d2d_median_gap = 0.0;
    std::size_t downlink_count = 0;
    std::size_t d2d_count = 0;
};

// Median of |exact - asymptotic| / exact over cell-0 receivers and
// realizations, one fixed geometry (drop 0 of the master seed).
std::vector<ConvergencePoint> asymptotic_convergence(const ScenarioConfig &config, const std::vector<int> &antennas,
                                                     int realizations, int threads = 0);

struct PropertyResult {
    std::string name;
    bool pass = false;
    double statistic = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct ValidationOptions {
    int zf_instances = 100;
    std::size_t ks_samples = 10000;
    int convergence_realizations = 500;
    std::vector<int> convergence_antennas{32, 64, 256};
    int threads = 0;
};

// ZF residual, downlink CLT fit, D2D exponential fit and large-M convergence.
std::vector<PropertyResult> run_validation(const ScenarioConfig &config, const ValidationOptions &options = {});

} // namespace d2dmimo

#endif
