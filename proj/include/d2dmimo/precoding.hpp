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

#ifndef D2DMIMO_PRECODING_HPP
#define D2DMIMO_PRECODING_HPP

#include <limits>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "d2dmimo/errors.hpp"
#include "d2dmimo/types.hpp"

namespace d2dmimo {

template <typename Scalar>
struct Precoder {
    CMatrix<Scalar> matrix; // M x K
    int cell_index = 0;
};

inline constexpr double default_max_condition = 1e12;
inline constexpr double zf_residual_tolerance = 1e-8;

// Unnormalized zero forcing P = H^H (H H^H)^-1 for a K x M estimate H.
// Throws SingularityError when the Gram matrix condition number exceeds
// max_condition or the residual ||H P - I||_F is not below 1e-8.
template <typename Scalar>
Precoder<Scalar> zf_precoder(const CMatrix<Scalar> &h_hat, int cell_index = 0,
                             double max_condition = default_max_condition) {
    const Index K = h_hat.rows();
    const Index M = h_hat.cols();
    if (K < 1 || M < K)
        throw SingularityError("zf_precoder needs 1 <= K <= M, got K=" + std::to_string(K) + " M=" + std::to_string(M),
                               std::numeric_limits<double>::infinity());
    const CMatrix<Scalar> gram = h_hat * h_hat.adjoint();

    Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> eig(gram, Eigen::EigenvaluesOnly);
    const double lmin = static_cast<double>(eig.eigenvalues().minCoeff());
    const double lmax = static_cast<double>(eig.eigenvalues().maxCoeff());
    const double condition = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
    if (!(condition < max_condition))
        throw SingularityError("Gram matrix of cell " + std::to_string(cell_index) + " is ill-conditioned", condition);

    Eigen::LLT<CMatrix<Scalar>> llt(gram);
    if (llt.info() != Eigen::Success)
        throw SingularityError("Cholesky factorization failed for cell " + std::to_string(cell_index), condition);

    Precoder<Scalar> p;
    p.cell_index = cell_index;
    // P^H = (H H^H)^-1 H, since the Gram matrix is Hermitian.
    p.matrix = llt.solve(h_hat).adjoint();

    const double residual =
        static_cast<double>((h_hat * p.matrix - CMatrix<Scalar>::Identity(K, K)).norm());
    if (!(residual < zf_residual_tolerance))
        throw SingularityError("zero-forcing residual " + std::to_string(residual) + " too large for cell " +
                                   std::to_string(cell_index),
                               condition);
    return p;
}

template <typename Scalar>
std::vector<Precoder<Scalar>> zf_precoders(const std::vector<CMatrix<Scalar>> &h_hat,
                                           double max_condition = default_max_condition) {
    std::vector<Precoder<Scalar>> out;
    out.reserve(h_hat.size());
    for (std::size_t i = 0; i < h_hat.size(); ++i)
        out.push_back(zf_precoder<Scalar>(h_hat[i], static_cast<int>(i), max_condition));
    return out;
}

} // namespace d2dmimo

#endif
