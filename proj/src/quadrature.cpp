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

#include "d2dmimo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include "d2dmimo/errors.hpp"

namespace d2dmimo {

namespace {

// Kronrod abscissae; odd indices are the embedded Gauss points.
constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment &o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)> &f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * wgk[7];
    double gauss = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * xgk[j];
        const double fsum = f(center - dx) + f(center + dx);
        kronrod += wgk[j] * fsum;
        if (j % 2 == 1)
            gauss += wg[j / 2] * fsum;
    }
    const double value = kronrod * half;
    double error = std::abs((kronrod - gauss) * half);
    if (!std::isfinite(value))
        error = std::numeric_limits<double>::infinity();
    return {a, b, value, error};
}

} // namespace

QuadratureResult integrate(const std::function<double(double)> &f, double a, double b,
                           const std::vector<double> &breakpoints, const QuadratureOptions &options) {
    QuadratureResult result;
    if (a == b)
        return result;
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::vector<double> cuts{a};
    for (double p : breakpoints)
        if (p > a && p < b)
            cuts.push_back(p);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<Segment> heap;
    double total = 0.0;
    double total_error = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        Segment s = gk15(f, cuts[k], cuts[k + 1]);
        result.evaluations += 15;
        total += s.value;
        total_error += s.error;
        heap.push(s);
    }

    const double min_width = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
    while (total_error > std::max(options.abs_tol, options.rel_tol * std::abs(total))) {
        if (static_cast<int>(heap.size()) >= options.max_intervals) {
            std::ostringstream msg;
            msg << "adaptive quadrature on [" << a << ", " << b << "] did not converge: estimate " << total
                << ", error " << total_error << ", intervals " << heap.size();
            throw NumericalError(msg.str());
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (worst.b - worst.a <= min_width) {
            std::ostringstream msg;
            msg << "adaptive quadrature on [" << a << ", " << b << "] hit floating-point resolution near " << mid
                << ": estimate " << total << ", error " << total_error;
            throw NumericalError(msg.str());
        }
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        result.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from the segments to remove drift from incremental updates.
    result.intervals = static_cast<int>(heap.size());
    total = 0.0;
    total_error = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        total_error += heap.top().error;
        heap.pop();
    }
    if (!std::isfinite(total))
        throw NumericalError("adaptive quadrature produced a non-finite value");
    result.value = sign * total;
    result.abs_error = total_error;
    return result;
}

GaussLegendre gauss_legendre(int n) {
    if (n < 1)
        throw DomainError("gauss_legendre needs n >= 1");
    GaussLegendre gl;
    gl.nodes.resize(static_cast<std::size_t>(n));
    gl.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        gl.nodes[static_cast<std::size_t>(i)] = -x;
        gl.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        gl.weights[static_cast<std::size_t>(i)] = w;
        gl.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return gl;
}

} // namespace d2dmimo
