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

#ifndef D2DMIMO_RANDOM_HPP
#define D2DMIMO_RANDOM_HPP

#include <cstdint>
#include <random>

namespace d2dmimo {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Hierarchical seed: streams for (drop, cell, entity) or (drop, fading) are
// derived by path, never by draw order, so results do not depend on how work
// is scheduled across threads.
class SeedSequence {
  public:
    constexpr explicit SeedSequence(std::uint64_t root) : state_(splitmix64(root)) {}

    constexpr SeedSequence child(std::uint64_t tag) const {
        SeedSequence s(0);
        s.state_ = splitmix64(state_ ^ splitmix64(tag + 0x632BE59BD9B4E019ULL));
        return s;
    }

    constexpr std::uint64_t value() const { return state_; }

    Engine engine() const { return Engine(state_); }

  private:
    std::uint64_t state_;
};

// Stream tags used under a master seed.
namespace stream {
inline constexpr std::uint64_t geometry = 1;
inline constexpr std::uint64_t fading = 2;
inline constexpr std::uint64_t pilots = 3;
inline constexpr std::uint64_t validation = 4;
inline constexpr std::uint64_t users = 11;
inline constexpr std::uint64_t d2d = 12;
} // namespace stream

} // namespace d2dmimo

#endif
