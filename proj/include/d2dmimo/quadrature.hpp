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

#ifndef D2DMIMO_QUADRATURE_HPP
#define D2DMIMO_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace d2dmimo {

struct QuadratureOptions {
    double abs_tol = 0.0;
    double rel_tol = 1e-10;
    int max_intervals = 4000;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
    int intervals = 0;
};

// Globally adaptive Gauss-Kronrod (7/15) on [a, b]. Breakpoints inside (a, b)
// seed the initial partition; place them at kinks of the integrand.
// Throws NumericalError with the last estimate when the tolerance is not met.
QuadratureResult integrate(const std::function<double(double)> &f, double a, double b,
                           const std::vector<double> &breakpoints = {}, const QuadratureOptions &options = {});

// n-point Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

} // namespace d2dmimo

#endif
