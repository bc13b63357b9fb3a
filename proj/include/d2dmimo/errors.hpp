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

#ifndef D2DMIMO_ERRORS_HPP
#define D2DMIMO_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace d2dmimo {

// Invalid scenario or layout parameters.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Gram matrix of an estimated channel is not safely invertible.
class SingularityError : public std::runtime_error {
  public:
    SingularityError(const std::string &what, double condition)
        : std::runtime_error(what), condition_(condition) {}

    double condition() const noexcept { return condition_; }

  private:
    double condition_;
};

// Quadrature or root finding failed to converge.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Threshold denominator of the closed-form goodput is nonpositive.
class AnalyticBreakdown : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

// Too few samples for an empirical statistic.
class StatisticalError : public std::runtime_error {
  public:
    StatisticalError(const std::string &what, std::size_t required, std::size_t actual)
        : std::runtime_error(what), required_(required), actual_(actual) {}

    std::size_t required() const noexcept { return required_; }
    std::size_t actual() const noexcept { return actual_; }

  private:
    std::size_t required_;
    std::size_t actual_;
};

// Reading or writing a file failed. what() names the path.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace d2dmimo

#endif
