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

// Independent reference computations for the tests. Nothing here calls the
// library routine it is used to check.

#ifndef D2DMIMO_TESTS_ORACLES_HPP
#define D2DMIMO_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Composite Simpson rule in long double.
template <typename F>
long double simpson(F f, long double a, long double b, long n) {
    if (n % 2)
        ++n;
    const long double h = (b - a) / n;
    long double s = f(a) + f(b);
    for (long i = 1; i < n; ++i)
        s += (i % 2 ? 4.0L : 2.0L) * f(a + i * h);
    return s * h / 3.0L;
}

// Pr[N(0,1) > x] by integrating the density; the tail beyond x + 40 is below
// 1e-300.
inline double normal_tail(double x) {
    const auto pdf = [](long double t) {
        return std::exp(-0.5L * t * t) / std::sqrt(2.0L * std::numbers::pi_v<long double>);
    };
    if (x >= 0.0)
        return static_cast<double>(simpson(pdf, x, x + 40.0L, 400000));
    // Left part by symmetry keeps the integration range short.
    return static_cast<double>(1.0L - simpson(pdf, -x, -x + 40.0L, 400000));
}

// Root of a decreasing function by plain bisection.
template <typename F>
double bisect_decreasing(F f, double target, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Flat-topped hexagon membership written from the vertex list.
inline bool in_hex(double x, double y, double cx, double cy, double R) {
    const double dx = std::abs(x - cx);
    const double dy = std::abs(y - cy);
    const double a = std::sqrt(3.0) / 2.0 * R;
    return dy <= a && dy <= std::sqrt(3.0) * (R - dx);
}

// Uniform point in the hexagon by drawing one of six triangles and a point in it.
template <typename Rng>
Eigen::Vector2d hex_point(double cx, double cy, double R, Rng &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int t = static_cast<int>(6.0 * u(rng)) % 6;
    double r1 = u(rng);
    double r2 = u(rng);
    if (r1 + r2 > 1.0) {
        r1 = 1.0 - r1;
        r2 = 1.0 - r2;
    }
    const double a0 = t * std::numbers::pi / 3.0;
    const double a1 = (t + 1) * std::numbers::pi / 3.0;
    return {cx + R * (r1 * std::cos(a0) + r2 * std::cos(a1)), cy + R * (r1 * std::sin(a0) + r2 * std::sin(a1))};
}

// Nineteen flat-topped hexagon centers from the lattice basis, unordered.
inline std::vector<Eigen::Vector2d> lattice_centers(double R) {
    std::vector<Eigen::Vector2d> c;
    const Eigen::Vector2d e1(1.5 * R, std::sqrt(3.0) / 2.0 * R);
    const Eigen::Vector2d e2(0.0, std::sqrt(3.0) * R);
    for (int q = -2; q <= 2; ++q)
        for (int r = -2; r <= 2; ++r)
            if (std::abs(q) <= 2 && std::abs(r) <= 2 && std::abs(q + r) <= 2)
                c.push_back(q * e1 + r * e2);
    return c;
}

struct Moments {
    double mean = 0.0;
    double second = 0.0;
    double se_mean = 0.0;
    double se_second = 0.0;
};

template <typename Draw>
Moments sample_moments(Draw draw, std::size_t n) {
    long double s1 = 0, s2 = 0, s4 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const long double x = draw();
        s1 += x;
        s2 += x * x;
        s4 += x * x * x * x;
    }
    Moments m;
    m.mean = static_cast<double>(s1 / n);
    m.second = static_cast<double>(s2 / n);
    m.se_mean = std::sqrt(static_cast<double>((s2 / n - (s1 / n) * (s1 / n)) / n));
    m.se_second = std::sqrt(static_cast<double>((s4 / n - (s2 / n) * (s2 / n)) / n));
    return m;
}

} // namespace oracle

#endif
