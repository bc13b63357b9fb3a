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

#include "d2dmimo/channel.hpp"

#include <numbers>
#include <string>

namespace d2dmimo {

double pathloss_bs(double distance_m, double sigma_bs) {
    if (!(distance_m > 0.0))
        throw DomainError("pathloss_bs needs distance > 0, got " + std::to_string(distance_m));
    return std::pow(distance_m, -sigma_bs);
}

double pathloss_ue(double distance_m, double kappa_ue) {
    if (!(distance_m > 0.0))
        throw DomainError("pathloss_ue needs distance > 0, got " + std::to_string(distance_m));
    return std::pow(distance_m, -kappa_ue);
}

CRowVectorXd PilotCorrelation::zadoff_chu(int root, int shift, int length) {
    CRowVectorXd x(length);
    for (int n = 0; n < length; ++n) {
        const long m = (n + shift) % length;
        // Reduce the phase index modulo 2N before scaling to keep it exact.
        const long phase = (static_cast<long>(root) * m * (m + 1)) % (2L * length);
        const double angle = -std::numbers::pi * static_cast<double>(phase) / length;
        x(n) = std::polar(1.0, angle);
    }
    return x;
}

PilotCorrelation::PilotCorrelation(const PilotConfig &pilot, int cells, int users)
    : pilot_(pilot), cells_(cells), users_(users) {
    if (pilot.pilot_length < 1)
        throw ConfigError("pilot_length must be >= 1");
    const int Lp = pilot.pilot_length;
    phi_.reserve(static_cast<std::size_t>(cells * cells));
    if (pilot.model == PilotModel::Diagonal) {
        const double c = 1.0 / std::sqrt(static_cast<double>(Lp));
        for (int l = 0; l < cells; ++l)
            for (int i = 0; i < cells; ++i)
                phi_.push_back(l == i ? CMatrixXd::Identity(users, users)
                                      : CMatrixXd(c * CMatrixXd::Identity(users, users)));
        return;
    }
    if (users > Lp || cells > Lp - 1)
        throw ConfigError("zadoff_chu pilots need users <= pilot_length and cells <= pilot_length - 1");
    std::vector<CMatrixXd> X;
    for (int l = 0; l < cells; ++l) {
        CMatrixXd Xl(users, Lp);
        for (int k = 0; k < users; ++k)
            Xl.row(k) = zadoff_chu(l + 1, k, Lp);
        X.push_back(std::move(Xl));
    }
    for (int l = 0; l < cells; ++l) {
        for (int i = 0; i < cells; ++i) {
            if (l == i)
                phi_.push_back(CMatrixXd::Identity(users, users));
            else
                phi_.push_back(X[l] * X[i].adjoint() / static_cast<double>(Lp));
        }
    }
}

LinkGains compute_link_gains(const NetworkRealization &net, const PathlossParams &params, int observed_cells) {
    LinkGains g;
    g.cells = net.layout.num_cells;
    g.users = net.users_per_cell();
    g.d2d = net.d2d_per_cell();
    if (observed_cells < 1 || observed_cells > g.cells)
        throw DomainError("observed_cells must lie in [1, cells]");
    g.observed = observed_cells;
    const int C = g.cells;
    const int K = g.users;
    const int D = g.d2d;
    const auto &centers = net.layout.centers;

    for (int i = 0; i < C; ++i) {
        Eigen::MatrixXd bu(C, K);
        for (int l = 0; l < C; ++l)
            for (int k = 0; k < K; ++k)
                bu(l, k) = pathloss_bs(distance(centers[i], net.user_pos[l][k]), params.sigma_bs);
        g.bs_user.push_back(std::move(bu));
        Eigen::MatrixXd br(observed_cells, D);
        for (int l = 0; l < observed_cells; ++l)
            for (int j = 0; j < D; ++j)
                br(l, j) = pathloss_bs(distance(centers[i], net.d2d_rx_pos[l][j]), params.sigma_bs);
        g.bs_rx.push_back(std::move(br));
    }
    for (int l = 0; l < observed_cells; ++l) {
        Eigen::MatrixXd tu(C * D, K);
        Eigen::MatrixXd tr(C * D, D);
        for (int i = 0; i < C; ++i) {
            for (int m = 0; m < D; ++m) {
                const Point &tx = net.d2d_tx_pos[i][m];
                for (int k = 0; k < K; ++k)
                    tu(i * D + m, k) = pathloss_ue(distance(tx, net.user_pos[l][k]), params.kappa_ue);
                for (int j = 0; j < D; ++j)
                    tr(i * D + m, j) = pathloss_ue(distance(tx, net.d2d_rx_pos[l][j]), params.kappa_ue);
            }
        }
        g.tx_user.push_back(std::move(tu));
        g.tx_rx.push_back(std::move(tr));
    }
    return g;
}

} // namespace d2dmimo
