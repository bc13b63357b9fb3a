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

#ifndef D2DMIMO_MOMENTS_HPP
#define D2DMIMO_MOMENTS_HPP

#include <optional>
#include <vector>

#include "d2dmimo/channel.hpp"
#include "d2dmimo/config.hpp"
#include "d2dmimo/geometry.hpp"

namespace d2dmimo {

// First and second raw moment of one interference term.
struct TermMoments {
    double mean = 0.0;
    double second = 0.0;

    double variance() const { return second - mean * mean; }
};

// Fading folded in analytically, interferer position fixed.
//
// BS term |h_t h'^H|^2 / (M rho')^2 + (rho_t / rho')^2 / L_p, with
// E|h_t h'^H|^2 = M rho_t rho' and E|h_t h'^H|^4 = 2 rho_t^2 rho'^2 (M^2 + M).
TermMoments bs_term_kernel(double rho_target, double rho_interferer, int M, int pilot_length);
// |v h'^H|^2 / (M rho')^2 scaled by power_scale (P_b / P_d at a D2D receiver).
TermMoments bs_prime_kernel(double rho_target, double rho_interferer, int M, double power_scale);
// |u|^2 scaled by power_scale, |u|^2 exponential with mean distance^-kappa.
TermMoments device_term_kernel(double distance_m, double kappa, double power_scale);

// E[s^q] for s the distance of a uniform point in a hexagon, outside a disk of
// radius min_distance around its center. Uses the exact radial density
// 2 pi s (s <= inradius) and 2 pi s - 12 s acos(inradius / s) beyond.
class HexagonRadialMoments {
  public:
    HexagonRadialMoments(double circumradius_m, double min_distance_m);

    double area() const { return area_; }
    double density(double s) const;
    double moment(double q) const;

  private:
    double R_;
    double a_;
    double r0_;
    double area_;
};

// Integral of |x - target|^-q over the hexagon around center, minus the disk of
// radius bs_exclusion_m around center and the disk of radius hard_core_m around
// target. q = 0 gives the area of that region.
double hexagon_power_integral(const Point &target, const Point &center, double circumradius_m,
                              double bs_exclusion_m, double hard_core_m, double q);

// E[d^-kappa] and E[d^-2 kappa] for a transmitter uniform over the region above.
struct DeviceDistanceMoments {
    double area = 0.0;
    double inv_kappa = 0.0;
    double inv_two_kappa = 0.0;
};

DeviceDistanceMoments device_distance_moments(const Point &target, const Point &center, double circumradius_m,
                                              double bs_exclusion_m, double hard_core_m, double kappa);

// Per-cell partial moments and the aggregates of the closed-form outage model,
// conditioned on one receiver position in cell 0.
struct MomentSet {
    Point target_position = Point::Zero();
    // Per interfering user in cell i. mu_B[0] and var_B[0] are unused (zero).
    std::vector<double> mu_B;
    std::vector<double> var_B;
    // Per D2D transmitter in cell i, at a downlink receiver (scaled by P_d/P_b).
    std::vector<double> mu_D;
    std::vector<double> var_D;
    // Per interfering user in cell i, BS term at a D2D receiver (scaled by P_b/P_d).
    std::vector<double> mu_B_prime;
    // Per D2D transmitter in cell i, at a D2D receiver (unscaled).
    std::vector<double> mu_G;
    std::vector<double> var_G;

    double mu_C = 0.0;
    double sigma_C = 0.0;
    std::optional<double> mu_D2D_value;

    // Throws DomainError when there are no D2D links.
    double mu_D2D() const;
};

// mu_C = K sum_{i != 0} mu_B + D sum_i mu_D,
// sigma_C = sqrt(K sum_{i != 0} var_B + D sum_i var_D),
// mu_D2D = K sum_i mu_B_prime + D sum_{i != 0} mu_G + (D - 1) mu_G[0].
// The BS sum of mu_D2D includes the receiver's own cell.
MomentSet aggregate_moments(MomentSet partials, int K, int D);

// Caches the radial moments of one scenario and evaluates MomentSet partials
// at arbitrary positions in cell 0.
class MomentModel {
  public:
    explicit MomentModel(const ScenarioConfig &config);

    const ScenarioConfig &config() const { return config_; }
    const HexLayout &layout() const { return layout_; }
    const HexagonRadialMoments &radial() const { return radial_; }
    double user_moment(int multiple) const; // E[s^(multiple sigma)], multiple in 1..4

    // Raw per-cell partials (aggregates left at zero).
    MomentSet partials(const Point &target) const;
    MomentSet moments(const Point &target) const;

    // Mean and variance of the BS term from a uniform user of cell i.
    TermMoments conditional_term_moments(const Point &target, int interferer_cell) const;
    TermMoments bs_prime_term_moments(const Point &target, int interferer_cell) const;
    // D2D transmitter uniform in cell i, receiver at target, power_scale applied.
    TermMoments d2d_term_moments(const Point &target, int interferer_cell, double power_scale) const;

  private:
    ScenarioConfig config_;
    HexLayout layout_;
    HexagonRadialMoments radial_;
    double s_moment_[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
};

// Plane approximation for a target at the cell center: interfering BSs are
// spread with density 1 / A_hex over the region outside the target hexagon,
// out to zeta R. mean and variance are totals per interfering-user slot
// (comparable to the sum of mu_B over cells); the literal_ fields use the
// vanishing normalization (pi zeta^2 - 3 sqrt(3) / 2) R^2 instead.
struct AnnulusMoments {
    double mean = 0.0;
    double variance = 0.0;
    double literal_mean = 0.0;
    double literal_variance = 0.0;
};

AnnulusMoments annulus_moments(const ScenarioConfig &config, double zeta);

} // namespace d2dmimo

#endif
