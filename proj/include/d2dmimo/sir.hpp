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

#ifndef D2DMIMO_SIR_HPP
#define D2DMIMO_SIR_HPP

#include <limits>
#include <vector>

#include "d2dmimo/channel.hpp"
#include "d2dmimo/errors.hpp"
#include "d2dmimo/geometry.hpp"
#include "d2dmimo/precoding.hpp"
#include "d2dmimo/types.hpp"

namespace d2dmimo {

struct SirPowers {
    double pb_w = 0.0;
    double pd_w = 0.0;
};

enum class SirVariant { Exact, Asymptotic };

const char *to_string(SirVariant variant);

struct SirSample {
    EntityId entity;
    // Linear scale; +infinity when the interference sum is exactly zero.
    double sir_linear = 0.0;
    double distance_to_bs_m = 0.0;
    SirVariant variant = SirVariant::Exact;
    int drop = -1;
    int fading = -1;
};

inline double sir_ratio(double numerator, double denominator) {
    if (denominator == 0.0)
        return std::numeric_limits<double>::infinity();
    return numerator / denominator;
}

namespace detail {

template <typename Scalar>
void check_downlink_target(const ChannelSet<Scalar> &ch, int cell, int k) {
    if (cell < 0 || cell >= ch.observed || k < 0 || k >= ch.users)
        throw DomainError("downlink user index outside the observed cells");
}

template <typename Scalar>
void check_d2d_target(const ChannelSet<Scalar> &ch, int cell, int k) {
    if (ch.d2d < 1)
        throw DomainError("no D2D links in this network");
    if (cell < 0 || cell >= ch.observed || k < 0 || k >= ch.d2d)
        throw DomainError("D2D link index outside the observed cells");
}

// sum over D2D transmitters of |u|^2 at downlink user (cell, k).
template <typename Scalar>
double d2d_power_at_user(const ChannelSet<Scalar> &ch, int cell, int k) {
    return static_cast<double>(ch.u[static_cast<std::size_t>(cell)].col(k).squaredNorm());
}

} // namespace detail

// 1 / ( ||dh P_c||^2 + sum_{l != c} ||h_{c,k}^l P_l||^2 + (P_d/P_b) sum |u|^2 ).
template <typename Scalar>
SirSample exact_downlink_sir(const NetworkRealization &net, const ChannelSet<Scalar> &ch,
                             const std::vector<Precoder<Scalar>> &precoders, const SirPowers &powers, int cell,
                             int k) {
    detail::check_downlink_target(ch, cell, k);
    if (!(powers.pb_w > 0.0))
        throw DomainError("downlink SIR needs P_b > 0");
    const auto c = static_cast<std::size_t>(cell);
    double den = static_cast<double>(
        ((ch.h_hat[c].row(k) - ch.H(cell, cell).row(k)) * precoders[c].matrix).squaredNorm());
    for (int l = 0; l < ch.cells; ++l)
        if (l != cell)
            den += static_cast<double>((ch.H(l, cell).row(k) * precoders[static_cast<std::size_t>(l)].matrix)
                                           .squaredNorm());
    if (ch.d2d > 0)
        den += powers.pd_w / powers.pb_w * detail::d2d_power_at_user(ch, cell, k);

    SirSample s;
    s.entity = {EntityKind::Downlink, cell, k};
    s.sir_linear = sir_ratio(1.0, den);
    s.distance_to_bs_m = distance(net.user_pos[c][static_cast<std::size_t>(k)], net.layout.centers[c]);
    s.variant = SirVariant::Exact;
    return s;
}

// |g_own|^2 / ( (P_b/P_d) sum_l ||v_{c,k}^l P_l||^2 + sum_{other links} |g|^2 ).
template <typename Scalar>
SirSample exact_d2d_sir(const NetworkRealization &net, const ChannelSet<Scalar> &ch,
                        const std::vector<Precoder<Scalar>> &precoders, const SirPowers &powers, int cell, int k) {
    detail::check_d2d_target(ch, cell, k);
    if (!(powers.pd_w > 0.0))
        throw DomainError("D2D SIR needs P_d > 0");
    const auto c = static_cast<std::size_t>(cell);
    double bs = 0.0;
    if (powers.pb_w > 0.0) {
        for (int l = 0; l < ch.cells; ++l)
            bs += static_cast<double>(
                (ch.V(l, cell).row(k) * precoders[static_cast<std::size_t>(l)].matrix).squaredNorm());
        bs *= powers.pb_w / powers.pd_w;
    }
    const auto &g = ch.g[c];
    const Index own = static_cast<Index>(cell) * ch.d2d + k;
    const double signal = std::norm(g(own, k));
    double d2d = 0.0;
    for (Index r = 0; r < g.rows(); ++r)
        if (r != own)
            d2d += std::norm(g(r, k));

    SirSample s;
    s.entity = {EntityKind::D2D, cell, k};
    s.sir_linear = sir_ratio(signal, bs + d2d);
    s.distance_to_bs_m = distance(net.d2d_rx_pos[c][static_cast<std::size_t>(k)], net.layout.centers[c]);
    s.variant = SirVariant::Exact;
    return s;
}

// Large-M form: sum over interfering cells i != c and their users j of
// |h_{c,k}^i (h_{i,j}^i)^H|^2 / (M rho_{i,j}^i)^2 + (rho_{c,k}^i / rho_{i,j}^i)^2 / L_p,
// plus the D2D term of the exact form.
template <typename Scalar>
SirSample asymptotic_downlink_sir(const NetworkRealization &net, const ChannelSet<Scalar> &ch,
                                  const LinkGains &gains, const SirPowers &powers, int pilot_length, int cell, int k) {
    detail::check_downlink_target(ch, cell, k);
    if (!(powers.pb_w > 0.0))
        throw DomainError("downlink SIR needs P_b > 0");
    if (pilot_length < 1)
        throw DomainError("pilot_length must be >= 1");
    const auto c = static_cast<std::size_t>(cell);
    const double M = static_cast<double>(ch.antennas);
    double den = 0.0;
    for (int i = 0; i < ch.cells; ++i) {
        if (i == cell)
            continue;
        const auto &rho = gains.bs_user[static_cast<std::size_t>(i)];
        const double rho_target = rho(cell, k);
        // Inner products of the target's channel from BS i with every user of cell i.
        const CMatrix<Scalar> ip = ch.H(i, cell).row(k) * ch.H(i, i).adjoint();
        for (int j = 0; j < ch.users; ++j) {
            const double rho_ij = rho(i, j);
            den += std::norm(std::complex<double>(ip(0, j))) / (M * rho_ij * M * rho_ij);
            const double ratio = rho_target / rho_ij;
            den += ratio * ratio / pilot_length;
        }
    }
    if (ch.d2d > 0)
        den += powers.pd_w / powers.pb_w * detail::d2d_power_at_user(ch, cell, k);

    SirSample s;
    s.entity = {EntityKind::Downlink, cell, k};
    s.sir_linear = sir_ratio(1.0, den);
    s.distance_to_bs_m = distance(net.user_pos[c][static_cast<std::size_t>(k)], net.layout.centers[c]);
    s.variant = SirVariant::Asymptotic;
    return s;
}

// Large-M form: BS interference sum_i sum_j |v_{c,k}^i (h_{i,j}^i)^H|^2 / (M rho_{i,j}^i)^2
// over every cell including the receiver's own, scaled by P_b/P_d.
template <typename Scalar>
SirSample asymptotic_d2d_sir(const NetworkRealization &net, const ChannelSet<Scalar> &ch, const LinkGains &gains,
                             const SirPowers &powers, int cell, int k) {
    detail::check_d2d_target(ch, cell, k);
    if (!(powers.pd_w > 0.0))
        throw DomainError("D2D SIR needs P_d > 0");
    const auto c = static_cast<std::size_t>(cell);
    const double M = static_cast<double>(ch.antennas);
    double bs = 0.0;
    if (powers.pb_w > 0.0) {
        for (int i = 0; i < ch.cells; ++i) {
            const auto &rho = gains.bs_user[static_cast<std::size_t>(i)];
            const CMatrix<Scalar> ip = ch.V(i, cell).row(k) * ch.H(i, i).adjoint();
            for (int j = 0; j < ch.users; ++j) {
                const double rho_ij = rho(i, j);
                bs += std::norm(std::complex<double>(ip(0, j))) / (M * rho_ij * M * rho_ij);
            }
        }
        bs *= powers.pb_w / powers.pd_w;
    }
    const auto &g = ch.g[c];
    const Index own = static_cast<Index>(cell) * ch.d2d + k;
    const double signal = std::norm(g(own, k));
    double d2d = 0.0;
    for (Index r = 0; r < g.rows(); ++r)
        if (r != own)
            d2d += std::norm(g(r, k));

    SirSample s;
    s.entity = {EntityKind::D2D, cell, k};
    s.sir_linear = sir_ratio(signal, bs + d2d);
    s.distance_to_bs_m = distance(net.d2d_rx_pos[c][static_cast<std::size_t>(k)], net.layout.centers[c]);
    s.variant = SirVariant::Asymptotic;
    return s;
}

} // namespace d2dmimo

#endif
