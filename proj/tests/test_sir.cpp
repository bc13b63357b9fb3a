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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "d2dmimo/channel.hpp"
#include "d2dmimo/montecarlo.hpp"
#include "d2dmimo/precoding.hpp"
#include "d2dmimo/sir.hpp"
#include "fixtures.hpp"

using namespace d2dmimo;

namespace {

const SirPowers powers{dbm_to_watts(46.0), dbm_to_watts(23.0)};

struct Realized {
    NetworkRealization net;
    LinkGains gains;
    ChannelSet<double> ch;
    std::vector<Precoder<double>> P;
};

Realized realize(const NetworkRealization &net, int M, std::uint64_t seed, PilotModel model = PilotModel::ZadoffChu) {
    Realized r{net, compute_link_gains(net, {}, 1), {}, {}};
    Engine rng(seed);
    r.ch = draw_channels<double>(r.gains, M, rng);
    PilotConfig p;
    p.model = model;
    estimate_channels(r.ch, PilotCorrelation(p, net.layout.num_cells, net.users_per_cell()));
    r.P = zf_precoders<double>(r.ch.h_hat);
    return r;
}

// Downlink SIR from the raw channels with the explicit-inverse precoder.
double oracle_downlink(const ChannelSet<double> &ch, const SirPowers &pw, int k) {
    const int C = ch.cells;
    std::vector<CMatrixXd> P;
    for (int l = 0; l < C; ++l)
        P.push_back(ch.h_hat[l].adjoint() * (ch.h_hat[l] * ch.h_hat[l].adjoint()).inverse());
    double den = 0.0;
    const CRowVectorXd dh = ch.h_hat[0].row(k) - ch.H(0, 0).row(k);
    den += (dh * P[0]).squaredNorm();
    for (int l = 1; l < C; ++l)
        den += (ch.H(l, 0).row(k) * P[l]).squaredNorm();
    for (Index r = 0; r < ch.u[0].rows(); ++r)
        den += pw.pd_w / pw.pb_w * std::norm(ch.u[0](r, k));
    return 1.0 / den;
}

double oracle_d2d(const ChannelSet<double> &ch, const SirPowers &pw, int k) {
    const int C = ch.cells;
    double bs = 0.0;
    for (int l = 0; l < C; ++l) {
        const CMatrixXd P = ch.h_hat[l].adjoint() * (ch.h_hat[l] * ch.h_hat[l].adjoint()).inverse();
        bs += (ch.V(l, 0).row(k) * P).squaredNorm();
    }
    double dd = 0.0;
    for (Index r = 0; r < ch.g[0].rows(); ++r)
        if (r != k)
            dd += std::norm(ch.g[0](r, k));
    return std::norm(ch.g[0](k, k)) / (pw.pb_w / pw.pd_w * bs + dd);
}

}

TEST_SUITE("sir") {

TEST_CASE("isolated cell without D2D has no interference") {
    const auto r = realize(fixture::network({Point(0, 0)}, {{Point(60, 20), Point(-100, 40)}}), 8, 1);
    for (int k = 0; k < 2; ++k) {
        CHECK(std::isinf(exact_downlink_sir(r.net, r.ch, r.P, powers, 0, k).sir_linear));
        CHECK(std::isinf(asymptotic_downlink_sir(r.net, r.ch, r.gains, powers, 31, 0, k).sir_linear));
    }
}

TEST_CASE("single cell with one D2D transmitter") {
    const auto r = realize(fixture::network({Point(0, 0)}, {{Point(60, 20)}}, {{Point(-50, 30)}}), 8, 2);
    const double u2 = std::norm(r.ch.u[0](0, 0));
    const double expect = powers.pb_w / (powers.pd_w * u2);
    const auto s = exact_downlink_sir(r.net, r.ch, r.P, powers, 0, 0);
    CHECK(s.sir_linear == doctest::Approx(expect).epsilon(1e-12));
    CHECK(s.distance_to_bs_m == doctest::Approx(std::hypot(60.0, 20.0)));
    CHECK(s.entity == EntityId{EntityKind::Downlink, 0, 0});
}

TEST_CASE("two cells, one user each, four antennas") {
    const auto net = fixture::network({Point(0, 0), Point(519.6, 0)}, {{Point(80, 30)}, {Point(450, -60)}});
    for (auto model : {PilotModel::ZadoffChu, PilotModel::Diagonal}) {
        const auto r = realize(net, 4, 3, model);
        // K = 1: P_l = h_hat_l^H / ||h_hat_l||^2.
        const auto &h0 = r.ch.h_hat[0];
        const auto &h1 = r.ch.h_hat[1];
        const double a = std::norm((h0.row(0) - r.ch.H(0, 0).row(0)).dot(h0.row(0))) / std::pow(h0.squaredNorm(), 2);
        const double b = std::norm(h1.row(0).dot(r.ch.H(1, 0).row(0))) / std::pow(h1.squaredNorm(), 2);
        const auto s = exact_downlink_sir(r.net, r.ch, r.P, powers, 0, 0);
        CHECK(s.sir_linear == doctest::Approx(1.0 / (a + b)).epsilon(1e-10));
    }
}

TEST_CASE("full layout agrees with the explicit-inverse oracle") {
    ScenarioConfig cfg;
    const auto net = drop_network(cfg, build_layout(19, 300.0), SeedSequence(4));
    const auto r = realize(net, cfg.antennas, 4);
    for (int k = 0; k < 10; ++k) {
        CHECK(exact_downlink_sir(r.net, r.ch, r.P, powers, 0, k).sir_linear ==
              doctest::Approx(oracle_downlink(r.ch, powers, k)).epsilon(1e-10));
        CHECK(exact_d2d_sir(r.net, r.ch, r.P, powers, 0, k).sir_linear ==
              doctest::Approx(oracle_d2d(r.ch, powers, k)).epsilon(1e-10));
    }
}

TEST_CASE("D2D without base station power") {
    const SirPowers no_bs{0.0, powers.pd_w};
    const auto one = realize(fixture::network({Point(0, 0)}, {{Point(60, 20)}}, {{Point(-50, 30)}}), 8, 5);
    CHECK(std::isinf(exact_d2d_sir(one.net, one.ch, one.P, no_bs, 0, 0).sir_linear));
    CHECK(std::isinf(asymptotic_d2d_sir(one.net, one.ch, one.gains, no_bs, 0, 0).sir_linear));

    const auto two =
        realize(fixture::network({Point(0, 0)}, {{Point(60, 20)}}, {{Point(-50, 30), Point(100, 100)}}), 8, 6);
    const auto &g = two.ch.g[0];
    CHECK(exact_d2d_sir(two.net, two.ch, two.P, no_bs, 0, 0).sir_linear ==
          doctest::Approx(std::norm(g(0, 0)) / std::norm(g(1, 0))).epsilon(1e-14));
    CHECK(exact_d2d_sir(two.net, two.ch, two.P, no_bs, 0, 1).sir_linear ==
          doctest::Approx(std::norm(g(1, 1)) / std::norm(g(0, 1))).epsilon(1e-14));
}

TEST_CASE("asymptotic downlink on hand-set channels") {
    const auto net = fixture::network({Point(0, 0), Point(519.6, 0)}, {{Point(80, 30)}, {Point(450, -60)}});
    ChannelSet<double> ch;
    ch.cells = 2;
    ch.users = 1;
    ch.d2d = 0;
    ch.observed = 1;
    ch.antennas = 2;
    using c = std::complex<double>;
    CMatrixXd a(1, 2), b(1, 2), z(1, 2);
    a << c(1, 0), c(0, 1); // BS 1 -> target
    b << c(2, 0), c(1, 0); // BS 1 -> its own user
    z << c(1, 1), c(0, 0);
    ch.h = {z, z, a, b};
    ch.v = {CMatrixXd(0, 2), CMatrixXd(0, 2)};
    ch.u = {CMatrixXd(0, 1)};
    ch.g = {CMatrixXd(0, 0)};
    LinkGains g;
    g.cells = 2;
    g.users = 1;
    g.observed = 1;
    g.bs_user = {Eigen::MatrixXd::Ones(2, 1), Eigen::MatrixXd(2, 1)};
    g.bs_user[1] << 0.5, 2.0;
    // |(1, i) . (2, 1)^H|^2 = |2 + i|^2 = 5; M rho = 4; (0.5 / 2)^2 / 31.
    const double den = 5.0 / 16.0 + 0.0625 / 31.0;
    const auto s = asymptotic_downlink_sir(net, ch, g, powers, 31, 0, 0);
    CHECK(s.sir_linear == doctest::Approx(1.0 / den).epsilon(1e-15));
    CHECK(s.variant == SirVariant::Asymptotic);
}

TEST_CASE("asymptotic D2D on hand-set channels") {
    const auto net = fixture::network({Point(0, 0)}, {{Point(80, 30)}}, {{Point(-50, 30), Point(100, 100)}});
    ChannelSet<double> ch;
    ch.cells = 1;
    ch.users = 1;
    ch.d2d = 2;
    ch.observed = 1;
    ch.antennas = 2;
    using c = std::complex<double>;
    CMatrixXd h(1, 2), v(2, 2), gm(2, 2);
    h << c(1, 0), c(1, 0);
    v << c(0, 1), c(3, 0), c(1, 0), c(0, 0);
    gm << c(2, 0), c(0, 1), c(1, 1), c(1, 0);
    ch.h = {h};
    ch.v = {v};
    ch.u = {CMatrixXd::Zero(2, 1)};
    ch.g = {gm};
    LinkGains g;
    g.cells = 1;
    g.users = 1;
    g.d2d = 2;
    g.observed = 1;
    g.bs_user = {Eigen::MatrixXd::Constant(1, 1, 0.25)};
    const SirPowers pw{3.0, 1.5};
    // Link 0: |v0 . h^H|^2 = |i + 3|^2 = 10 over (M rho)^2 = 0.25, times P_b/P_d = 2 -> 80;
    // D2D interference |g(1,0)|^2 = 2; signal |g(0,0)|^2 = 4.
    const auto s0 = asymptotic_d2d_sir(net, ch, g, pw, 0, 0);
    CHECK(s0.sir_linear == doctest::Approx(4.0 / 82.0).epsilon(1e-15));
    // Link 1: |v1 . h^H|^2 = 1 -> 8; interference |g(0,1)|^2 = 1; signal |g(1,1)|^2 = 1.
    const auto s1 = asymptotic_d2d_sir(net, ch, g, pw, 0, 1);
    CHECK(s1.sir_linear == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("common power scaling leaves every SIR unchanged") {
    ScenarioConfig cfg;
    cfg.cells = 7;
    const auto net = drop_network(cfg, build_layout(7, 300.0), SeedSequence(7));
    const auto r = realize(net, 64, 7);
    const SirPowers scaled{powers.pb_w * 123.4, powers.pd_w * 123.4};
    for (int k = 0; k < 10; ++k) {
        CHECK(exact_downlink_sir(r.net, r.ch, r.P, scaled, 0, k).sir_linear ==
              doctest::Approx(exact_downlink_sir(r.net, r.ch, r.P, powers, 0, k).sir_linear).epsilon(1e-12));
        CHECK(exact_d2d_sir(r.net, r.ch, r.P, scaled, 0, k).sir_linear ==
              doctest::Approx(exact_d2d_sir(r.net, r.ch, r.P, powers, 0, k).sir_linear).epsilon(1e-12));
        CHECK(asymptotic_downlink_sir(r.net, r.ch, r.gains, scaled, 31, 0, k).sir_linear ==
              doctest::Approx(asymptotic_downlink_sir(r.net, r.ch, r.gains, powers, 31, 0, k).sir_linear)
                  .epsilon(1e-12));
        CHECK(asymptotic_d2d_sir(r.net, r.ch, r.gains, scaled, 0, k).sir_linear ==
              doctest::Approx(asymptotic_d2d_sir(r.net, r.ch, r.gains, powers, 0, k).sir_linear).epsilon(1e-12));
    }
}

TEST_CASE("an extra D2D transmitter never raises a downlink SIR") {
    ScenarioConfig cfg;
    cfg.cells = 7;
    const auto net = drop_network(cfg, build_layout(7, 300.0), SeedSequence(8));
    auto r = realize(net, 64, 8);
    for (int k = 0; k < 10; ++k) {
        const double with = exact_downlink_sir(r.net, r.ch, r.P, powers, 0, k).sir_linear;
        auto ch = r.ch;
        ch.u[0].row(3).setZero();
        const double without = exact_downlink_sir(r.net, ch, r.P, powers, 0, k).sir_linear;
        CHECK(with <= without);
    }
}

TEST_CASE("invalid targets are rejected") {
    const auto r = realize(fixture::network({Point(0, 0)}, {{Point(60, 20)}}), 8, 9);
    CHECK_THROWS_AS(exact_downlink_sir(r.net, r.ch, r.P, powers, 0, 1), DomainError);
    CHECK_THROWS_AS(exact_d2d_sir(r.net, r.ch, r.P, powers, 0, 0), DomainError);
    CHECK_THROWS_AS(exact_downlink_sir(r.net, r.ch, r.P, SirPowers{0.0, 1.0}, 0, 0), DomainError);
    CHECK(sir_ratio(1.0, 0.0) == std::numeric_limits<double>::infinity());
}

}
