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

#ifndef D2DMIMO_TYPES_HPP
#define D2DMIMO_TYPES_HPP

#include <Eigen/Dense>
#include <complex>

namespace d2dmimo {

using Index = Eigen::Index;

// Channel vectors are row vectors (1 x M), matching h * P products with an M x K precoder.
template <typename Scalar>
using CRowVector = Eigen::Matrix<std::complex<Scalar>, 1, Eigen::Dynamic>;

template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using CRowVectorXd = CRowVector<double>;
using CMatrixXd = CMatrix<double>;

// Planar position in meters.
using Point = Eigen::Vector2d;

enum class EntityKind { Downlink, D2D };

inline const char *to_string(EntityKind kind) { return kind == EntityKind::Downlink ? "downlink" : "d2d"; }

// (cell, index) of a downlink user or a D2D link. Cell 0 is the target cell.
struct EntityId {
    EntityKind kind = EntityKind::Downlink;
    int cell = 0;
    int index = 0;

    friend bool operator==(const EntityId &, const EntityId &) = default;
};

} // namespace d2dmimo

#endif
