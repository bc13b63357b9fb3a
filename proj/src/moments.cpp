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

#include "d2dmimo/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "d2dmimo/errors.hpp"
#include "d2dmimo/quadrature.hpp"

namespace d2dmimo {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
    a = std::fmod(a, two_pi);
    return a < 0.0 ? a + two_pi : a;
}

// Antiderivative of r^(1 - q).
double radial_primitive(double r, double q) {
    if (std::abs(q - 2.0) < 1e-14)
        return std::log(r);
    return std::pow(r, 2.0 - q) / (2.0 - q);
}

double radial_integral(double lo, double hi, double q) {
    if (!(hi > lo))
        return 0.0;
    return radial_primitive(hi, q) - radial_primitive(lo, q);
}

} // namespace

TermMoments bs_term_kernel(double rho_target, double rho_interferer, int M, int pilot_length) {
    if (!(rho_target > 0.0) || !(rho_interferer > 0.0) || M < 1 || pilot_length < 1)
        throw DomainError("bs_term_kernel needs positive gains, M >= 1 and L_p >= 1");
    const double m = M;
    const double lp = pilot_length;
    const double x = rho_target / rho_interferer;
    TermMoments t;
    t.mean = x / m + x * x / lp;
    t.second = 2.0 * (m + 1.0) * x * x / (m * m * m) + 2.0 * x * x * x / (m * lp) + x * x * x * x / (lp * lp);
    return t;
}

TermMoments bs_prime_kernel(double rho_target, double rho_interferer, int M, double power_scale) {
    if (!(rho_target > 0.0) || !(rho_interferer > 0.0) || M < 1)
        throw DomainError("bs_prime_kernel needs positive gains and M >= 1");
    const double m = M;
    const double x = rho_target / rho_interferer;
    TermMoments t;
    t.mean = x / m * power_scale;
    t.second = 2.0 * (m + 1.0) * x * x / (m * m * m) * power_scale * power_scale;
    return t;
}

TermMoments device_term_kernel(double distance_m, double kappa, double power_scale) {
    const double g = pathloss_ue(distance_m, kappa);
    TermMoments t;
    t.mean = g * power_scale;
    t.second = 2.0 * g * g * power_scale * power_scale;
    return t;
}

HexagonRadialMoments::HexagonRadialMoments(double circumradius_m, double min_distance_m)
    : R_(circumradius_m), a_(std::sqrt(3.0) / 2.0 * circumradius_m), r0_(min_distance_m) {
    if (!(R_ > 0.0) || r0_ < 0.0 || r0_ >= a_)
        throw DomainError("HexagonRadialMoments needs 0 <= min_distance < inradius");
    area_ = 1.5 * std::sqrt(3.0) * R_ * R_ - std::numbers::pi * r0_ * r0_;
}

double HexagonRadialMoments::density(double s) const {
    if (s < r0_ || s > R_)
        return 0.0;
    double w = two_pi * s;
    if (s > a_)
        w -= 12.0 * s * std::acos(std::min(1.0, a_ / s));
    return w / area_;
}

double HexagonRadialMoments::moment(double q) const {
    // Inner disk in closed form, corner band by quadrature.
    double inner;
    if (std::abs(q + 2.0) < 1e-14)
        inner = two_pi * std::log(a_ / r0_);
    else
        inner = two_pi * (std::pow(a_, q + 2.0) - std::pow(r0_, q + 2.0)) / (q + 2.0);
    const double scale = std::pow(R_, q + 1.0);
    auto band = [&](double s) { return std::pow(s, q + 1.0) / scale * (two_pi - 12.0 * std::acos(std::min(1.0, a_ / s))); };
    const double outer = integrate(band, a_, R_, {}, {0.0, 1e-12, 4000}).value * scale;
    return (inner + outer) / area_;
}

double hexagon_power_integral(const Point &target, const Point &center, double circumradius_m,
                              double bs_exclusion_m, double hard_core_m, double q) {
    const double R = circumradius_m;
    const double a = std::sqrt(3.0) / 2.0 * R;
    if (!(R > 0.0) || bs_exclusion_m < 0.0 || !(hard_core_m > 0.0 || q < 2.0))
        throw DomainError("hexagon_power_integral needs R > 0 and a positive hard core for q >= 2");
    const Point rel = target - center;

    // Outward normals of the six edges of a flat-topped hexagon.
    std::array<Point, 6> normals;
    for (int k = 0; k < 6; ++k) {
        const double phi = std::numbers::pi / 6.0 + k * std::numbers::pi / 3.0;
        normals[k] = Point(std::cos(phi), std::sin(phi));
    }
    const double rel2 = rel.squaredNorm();

    auto angular = [&](double theta) {
        const Point e(std::cos(theta), std::sin(theta));
        double lo = hard_core_m;
        double hi = std::numeric_limits<double>::infinity();
        for (const auto &n : normals) {
            const double slack = a - n.dot(rel);
            const double dn = n.dot(e);
            if (dn > 0.0)
                hi = std::min(hi, slack / dn);
            else if (dn < 0.0)
                lo = std::max(lo, slack / dn);
            else if (slack < 0.0)
                return 0.0;
        }
        if (!(hi > lo))
            return 0.0;
        // Remove the BS exclusion disk (r1, r2) along the ray.
        if (bs_exclusion_m > 0.0) {
            const double b = e.dot(rel);
            const double disc = b * b - (rel2 - bs_exclusion_m * bs_exclusion_m);
            if (disc > 0.0) {
                const double sq = std::sqrt(disc);
                const double r1 = -b - sq;
                const double r2 = -b + sq;
                return radial_integral(lo, std::min(hi, r1), q) + radial_integral(std::max(lo, r2), hi, q);
            }
        }
        return radial_integral(lo, hi, q);
    };

    std::vector<double> breaks;
    for (const auto &v : hexagon_vertices(center, R))
        breaks.push_back(wrap_angle(std::atan2(v.y() - target.y(), v.x() - target.x())));
    const double dc = rel.norm();
    if (bs_exclusion_m > 0.0 && dc > bs_exclusion_m) {
        const double phi = std::atan2(-rel.y(), -rel.x());
        const double half = std::asin(bs_exclusion_m / dc);
        breaks.push_back(wrap_angle(phi - half));
        breaks.push_back(wrap_angle(phi + half));
        breaks.push_back(wrap_angle(phi));
    }
    return integrate(angular, 0.0, two_pi, breaks, {0.0, 1e-10, 20000}).value;
}

DeviceDistanceMoments device_distance_moments(const Point &target, const Point &center, double circumradius_m,
                                              double bs_exclusion_m, double hard_core_m, double kappa) {
    DeviceDistanceMoments m;
    m.area = hexagon_power_integral(target, center, circumradius_m, bs_exclusion_m, hard_core_m, 0.0);
    if (!(m.area > 0.0))
        throw DomainError("device region is empty for this target");
    m.inv_kappa = hexagon_power_integral(target, center, circumradius_m, bs_exclusion_m, hard_core_m, kappa) / m.area;
    m.inv_two_kappa =
        hexagon_power_integral(target, center, circumradius_m, bs_exclusion_m, hard_core_m, 2.0 * kappa) / m.area;
    return m;
}

double MomentSet::mu_D2D() const {
    if (!mu_D2D_value)
        throw DomainError("mu_D2D is undefined without D2D links");
    return *mu_D2D_value;
}

MomentSet aggregate_moments(MomentSet p, int K, int D) {
    if (K < 0 || D < 0)
        throw DomainError("aggregate_moments needs K, D >= 0");
    const std::size_t C = p.mu_B.size();
    if (p.var_B.size() != C || p.mu_D.size() != C || p.var_D.size() != C || p.mu_B_prime.size() != C ||
        p.mu_G.size() != C || C == 0)
        throw DomainError("aggregate_moments needs partials for every cell");
    double mu = 0.0;
    double var = 0.0;
    for (std::size_t i = 1; i < C; ++i) {
        mu += p.mu_B[i] * K;
        var += p.var_B[i] * K;
    }
    for (std::size_t i = 0; i < C; ++i) {
        mu += p.mu_D[i] * D;
        var += p.var_D[i] * D;
    }
    p.mu_C = mu;
    p.sigma_C = std::sqrt(var);
    if (D >= 1) {
        double m = 0.0;
        for (std::size_t i = 0; i < C; ++i)
            m += p.mu_B_prime[i] * K;
        for (std::size_t i = 1; i < C; ++i)
            m += p.mu_G[i] * D;
        m += p.mu_G[0] * (D - 1);
        p.mu_D2D_value = m;
    } else {
        p.mu_D2D_value.reset();
    }
    return p;
}

MomentModel::MomentModel(const ScenarioConfig &config)
    : config_(config), layout_(build_layout(config.cells, config.radius_m)),
      radial_(config.radius_m, config.min_bs_distance_m) {
    config_.validate();
    for (int p = 1; p <= 4; ++p)
        s_moment_[p] = radial_.moment(p * config_.sigma_bs);
}

double MomentModel::user_moment(int multiple) const {
    if (multiple < 0 || multiple > 4)
        throw DomainError("user_moment multiple must lie in 0..4");
    return s_moment_[multiple];
}

TermMoments MomentModel::conditional_term_moments(const Point &target, int interferer_cell) const {
    if (interferer_cell == 0)
        throw DomainError("the BS term runs over interfering cells only; cell 0 is the target cell");
    if (interferer_cell < 0 || interferer_cell >= layout_.num_cells)
        throw DomainError("interferer cell index out of range");
    const double x = pathloss_bs(distance(target, layout_.centers[static_cast<std::size_t>(interferer_cell)]),
                                 config_.sigma_bs);
    const double m = config_.antennas;
    const double lp = config_.pilot_length;
    // Kernel of bs_term_kernel with 1/rho' = s^sigma averaged over the cell.
    TermMoments t;
    t.mean = x * s_moment_[1] / m + x * x * s_moment_[2] / lp;
    t.second = 2.0 * (m + 1.0) * x * x * s_moment_[2] / (m * m * m) + 2.0 * x * x * x * s_moment_[3] / (m * lp) +
               x * x * x * x * s_moment_[4] / (lp * lp);
    return t;
}

TermMoments MomentModel::bs_prime_term_moments(const Point &target, int interferer_cell) const {
    if (interferer_cell < 0 || interferer_cell >= layout_.num_cells)
        throw DomainError("interferer cell index out of range");
    const double x = pathloss_bs(distance(target, layout_.centers[static_cast<std::size_t>(interferer_cell)]),
                                 config_.sigma_bs);
    const double m = config_.antennas;
    const double scale = config_.pb_w() / config_.pd_w();
    TermMoments t;
    t.mean = x * s_moment_[1] / m * scale;
    t.second = 2.0 * (m + 1.0) * x * x * s_moment_[2] / (m * m * m) * scale * scale;
    return t;
}

TermMoments MomentModel::d2d_term_moments(const Point &target, int interferer_cell, double power_scale) const {
    if (interferer_cell < 0 || interferer_cell >= layout_.num_cells)
        throw DomainError("interferer cell index out of range");
    const auto dm = device_distance_moments(target, layout_.centers[static_cast<std::size_t>(interferer_cell)],
                                            config_.radius_m, config_.min_bs_distance_m,
                                            config_.min_device_distance_m, config_.kappa_ue);
    TermMoments t;
    t.mean = dm.inv_kappa * power_scale;
    t.second = 2.0 * dm.inv_two_kappa * power_scale * power_scale;
    return t;
}

MomentSet MomentModel::partials(const Point &target) const {
    const int C = layout_.num_cells;
    MomentSet s;
    s.target_position = target;
    s.mu_B.assign(C, 0.0);
    s.var_B.assign(C, 0.0);
    s.mu_D.assign(C, 0.0);
    s.var_D.assign(C, 0.0);
    s.mu_B_prime.assign(C, 0.0);
    s.mu_G.assign(C, 0.0);
    s.var_G.assign(C, 0.0);
    const double ratio = config_.pd_w() / config_.pb_w();
    for (int i = 0; i < C; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (i != 0) {
            const auto b = conditional_term_moments(target, i);
            s.mu_B[ui] = b.mean;
            s.var_B[ui] = b.variance();
        }
        s.mu_B_prime[ui] = bs_prime_term_moments(target, i).mean;
        // One polar integration serves both receiver types.
        const auto dm = device_distance_moments(target, layout_.centers[ui], config_.radius_m,
                                                config_.min_bs_distance_m, config_.min_device_distance_m,
                                                config_.kappa_ue);
        s.mu_D[ui] = dm.inv_kappa * ratio;
        s.var_D[ui] = (2.0 * dm.inv_two_kappa - dm.inv_kappa * dm.inv_kappa) * ratio * ratio;
        s.mu_G[ui] = dm.inv_kappa;
        s.var_G[ui] = 2.0 * dm.inv_two_kappa - dm.inv_kappa * dm.inv_kappa;
    }
    return s;
}

MomentSet MomentModel::moments(const Point &target) const {
    return aggregate_moments(partials(target), config_.users_per_cell, config_.d2d_per_cell);
}

AnnulusMoments annulus_moments(const ScenarioConfig &config, double zeta) {
    if (!(zeta > 1.0))
        throw DomainError("annulus_moments needs zeta > 1");
    const double R = config.radius_m;
    const double a = std::sqrt(3.0) / 2.0 * R;
    const HexagonRadialMoments radial(R, config.min_bs_distance_m);
    const double s1 = radial.moment(config.sigma_bs);
    const double s2 = radial.moment(2.0 * config.sigma_bs);
    const double s3 = radial.moment(3.0 * config.sigma_bs);
    const double s4 = radial.moment(4.0 * config.sigma_bs);
    const double m = config.antennas;
    const double lp = config.pilot_length;
    const double sigma = config.sigma_bs;

    auto mean_kernel = [&](double x) {
        const double r = std::pow(x, -sigma);
        return r * s1 / m + r * r * s2 / lp;
    };
    auto var_kernel = [&](double x) {
        const double r = std::pow(x, -sigma);
        const double mean = r * s1 / m + r * r * s2 / lp;
        const double second = 2.0 * (m + 1.0) * r * r * s2 / (m * m * m) + 2.0 * r * r * r * s3 / (m * lp) +
                              r * r * r * r * s4 / (lp * lp);
        return second - mean * mean;
    };
    auto corner = [&](double x) { return 12.0 * x * std::acos(std::min(1.0, a / x)); };
    auto ring = [&](double x) { return two_pi * x; };

    const QuadratureOptions opt{0.0, 1e-11, 4000};
    const double mean_integral = integrate([&](double x) { return corner(x) * mean_kernel(x); }, a, R, {}, opt).value +
                                 integrate([&](double x) { return ring(x) * mean_kernel(x); }, R, zeta * R, {}, opt).value;
    const double var_integral = integrate([&](double x) { return corner(x) * var_kernel(x); }, a, R, {}, opt).value +
                                integrate([&](double x) { return ring(x) * var_kernel(x); }, R, zeta * R, {}, opt).value;

    const double hex_area = 1.5 * std::sqrt(3.0) * R * R;
    const double literal_area = (std::numbers::pi * zeta * zeta - 1.5 * std::sqrt(3.0)) * R * R;
    AnnulusMoments out;
    out.mean = mean_integral / hex_area;
    out.variance = var_integral / hex_area;
    out.literal_mean = mean_integral / literal_area;
    out.literal_variance = var_integral / literal_area;
    return out;
}

} // namespace d2dmimo
