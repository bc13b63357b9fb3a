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

#ifndef D2DMIMO_CHANNEL_HPP
#define D2DMIMO_CHANNEL_HPP

#include <cmath>
#include <vector>

#include "d2dmimo/config.hpp"
#include "d2dmimo/errors.hpp"
#include "d2dmimo/geometry.hpp"
#include "d2dmimo/random.hpp"
#include "d2dmimo/types.hpp"

namespace d2dmimo {

struct PathlossParams {
    double sigma_bs = 3.76;
    double kappa_ue = 4.37;
};

// distance^-sigma_bs; throws DomainError for distance <= 0.
double pathloss_bs(double distance_m, double sigma_bs);
// distance^-kappa_ue; throws DomainError for distance <= 0.
double pathloss_ue(double distance_m, double kappa_ue);

// Circularly symmetric complex Gaussian source with E|z|^2 = 1.
template <typename Scalar>
class ComplexNormal {
  public:
    std::complex<Scalar> operator()(Engine &rng) {
        const Scalar re = n_(rng);
        const Scalar im = n_(rng);
        return {re, im};
    }

  private:
    std::normal_distribution<Scalar> n_{Scalar(0), Scalar(std::sqrt(0.5))};
};

namespace detail {

template <typename Scalar>
CRowVector<Scalar> draw_row(Index M, double rho, ComplexNormal<Scalar> &cn, Engine &rng) {
    if (M < 1)
        throw DomainError("draw_vector_channel needs M >= 1");
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw DomainError("draw_vector_channel needs a finite variance rho > 0");
    const Scalar scale = Scalar(std::sqrt(rho));
    CRowVector<Scalar> h(M);
    for (Index m = 0; m < M; ++m)
        h(m) = scale * cn(rng);
    return h;
}

} // namespace detail

// M i.i.d. CN(0, rho) components.
template <typename Scalar>
CRowVector<Scalar> draw_vector_channel(Index M, double rho, Engine &rng) {
    ComplexNormal<Scalar> cn;
    return detail::draw_row<Scalar>(M, rho, cn, rng);
}

struct PilotConfig {
    int pilot_length = 31;
    double uplink_power_w = 0.2;
    PilotModel model = PilotModel::ZadoffChu;
};

// Normalized pilot cross-correlations Phi(l, i) = X_l X_i^H / L_p between the
// K pilots of cell l (rows) and cell i (columns). Phi(i, i) = I.
class PilotCorrelation {
  public:
    PilotCorrelation(const PilotConfig &pilot, int cells, int users);

    const CMatrixXd &operator()(int l, int i) const { return phi_[static_cast<std::size_t>(l * cells_ + i)]; }
    int cells() const { return cells_; }
    int users() const { return users_; }
    const PilotConfig &config() const { return pilot_; }

    // Row k of cell l's pilot matrix (length L_p). Only defined for ZadoffChu.
    static CRowVectorXd zadoff_chu(int root, int shift, int length);

  private:
    PilotConfig pilot_;
    int cells_;
    int users_;
    std::vector<CMatrixXd> phi_;
};

// Large-scale gains of one drop for the receivers in cells [0, observed).
struct LinkGains {
    int cells = 0;
    int users = 0;
    int d2d = 0;
    int observed = 0;
    // bs_user[i](l, k): BS i -> downlink user (l, k), all cells l.
    std::vector<Eigen::MatrixXd> bs_user;
    // bs_rx[i](l, j): BS i -> D2D receiver (l, j), l < observed.
    std::vector<Eigen::MatrixXd> bs_rx;
    // tx_user[l](i * D + m, k): D2D transmitter (i, m) -> downlink user (l, k).
    std::vector<Eigen::MatrixXd> tx_user;
    // tx_rx[l](i * D + m, j): D2D transmitter (i, m) -> D2D receiver (l, j).
    std::vector<Eigen::MatrixXd> tx_rx;
};

LinkGains compute_link_gains(const NetworkRealization &net, const PathlossParams &params, int observed_cells = 1);

// Small-scale fading of one realization plus the contaminated estimates.
template <typename Scalar>
struct ChannelSet {
    int cells = 0;
    int users = 0;
    int d2d = 0;
    int observed = 0;
    Index antennas = 0;
    // h[i * C + l]: K x M, row k is BS i -> user (l, k).
    std::vector<CMatrix<Scalar>> h;
    // v[i * observed + l]: D x M, row j is BS i -> D2D receiver (l, j).
    std::vector<CMatrix<Scalar>> v;
    // u[l]: (C D) x K scalars, D2D transmitter (i, m) -> user (l, k).
    std::vector<CMatrix<Scalar>> u;
    // g[l]: (C D) x D scalars, D2D transmitter (i, m) -> receiver (l, j).
    std::vector<CMatrix<Scalar>> g;
    // h_hat[i]: K x M estimate at BS i.
    std::vector<CMatrix<Scalar>> h_hat;

    const CMatrix<Scalar> &H(int bs, int cell) const { return h[static_cast<std::size_t>(bs * cells + cell)]; }
    const CMatrix<Scalar> &V(int bs, int cell) const { return v[static_cast<std::size_t>(bs * observed + cell)]; }
};

// Draw every fading coefficient for the gains in a fixed order: h, v, u, g.
template <typename Scalar>
ChannelSet<Scalar> draw_channels(const LinkGains &gains, Index M, Engine &rng) {
    ChannelSet<Scalar> ch;
    ch.cells = gains.cells;
    ch.users = gains.users;
    ch.d2d = gains.d2d;
    ch.observed = gains.observed;
    ch.antennas = M;
    const int C = gains.cells;
    const int K = gains.users;
    const int D = gains.d2d;
    ComplexNormal<Scalar> cn;

    ch.h.reserve(static_cast<std::size_t>(C * C));
    for (int i = 0; i < C; ++i) {
        for (int l = 0; l < C; ++l) {
            CMatrix<Scalar> Hm(K, M);
            for (int k = 0; k < K; ++k)
                Hm.row(k) = detail::draw_row<Scalar>(M, gains.bs_user[i](l, k), cn, rng);
            ch.h.push_back(std::move(Hm));
        }
    }
    for (int i = 0; i < C; ++i) {
        for (int l = 0; l < gains.observed; ++l) {
            CMatrix<Scalar> Vm(D, M);
            for (int j = 0; j < D; ++j)
                Vm.row(j) = detail::draw_row<Scalar>(M, gains.bs_rx[i](l, j), cn, rng);
            ch.v.push_back(std::move(Vm));
        }
    }
    for (int l = 0; l < gains.observed; ++l) {
        CMatrix<Scalar> Um(C * D, K);
        for (Index r = 0; r < Um.rows(); ++r)
            for (int k = 0; k < K; ++k)
                Um(r, k) = Scalar(std::sqrt(gains.tx_user[l](r, k))) * cn(rng);
        ch.u.push_back(std::move(Um));
    }
    for (int l = 0; l < gains.observed; ++l) {
        CMatrix<Scalar> Gm(C * D, D);
        for (Index r = 0; r < Gm.rows(); ++r)
            for (int j = 0; j < D; ++j)
                Gm(r, j) = Scalar(std::sqrt(gains.tx_rx[l](r, j))) * cn(rng);
        ch.g.push_back(std::move(Gm));
    }
    return ch;
}

// h_hat[i] = sum_l Phi(l, i)^T H_l^i, i.e. row k is the match-filtered
// estimate sum_{l, j} Phi(l, i)(j, k) h_{l, j}^i. Under the diagonal model this
// reduces to H_i^i + sum_{l != i} H_l^i / sqrt(L_p).
template <typename Scalar>
void estimate_channels(ChannelSet<Scalar> &ch, const PilotCorrelation &phi) {
    const int C = ch.cells;
    if (phi.cells() != C || phi.users() != ch.users)
        throw DomainError("pilot correlation does not match the channel set dimensions");
    const bool diagonal = phi.config().model == PilotModel::Diagonal;
    const Scalar inv_sqrt_lp = Scalar(1.0 / std::sqrt(static_cast<double>(phi.config().pilot_length)));
    ch.h_hat.assign(static_cast<std::size_t>(C), CMatrix<Scalar>());
    for (int i = 0; i < C; ++i) {
        CMatrix<Scalar> est = ch.H(i, i);
        if (diagonal) {
            CMatrix<Scalar> contamination = CMatrix<Scalar>::Zero(ch.users, ch.antennas);
            for (int l = 0; l < C; ++l)
                if (l != i)
                    contamination += ch.H(i, l);
            est += inv_sqrt_lp * contamination;
        } else {
            for (int l = 0; l < C; ++l)
                if (l != i)
                    est.noalias() += phi(l, i).transpose().template cast<std::complex<Scalar>>() * ch.H(i, l);
        }
        ch.h_hat[static_cast<std::size_t>(i)] = std::move(est);
    }
}

} // namespace d2dmimo

#endif
