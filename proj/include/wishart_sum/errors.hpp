// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace wishart_sum {

// Raised when inputs violate a documented precondition (bad dimensions,
// non-positive weights, malformed configuration). Maps to process exit code 2.
class validation_error : public std::runtime_error {
  public:
    explicit validation_error(const std::string &what) : std::runtime_error(what) {}
};

// Raised when a computation cannot be completed to the required accuracy
// (singular normalization, non-convergent quadrature). Maps to exit code 3.
class numerical_error : public std::runtime_error {
  public:
    explicit numerical_error(const std::string &what) : std::runtime_error(what) {}
};

// Cancellation exhausted every available precision rung.
class precision_error : public numerical_error {
  public:
    explicit precision_error(const std::string &what) : numerical_error(what) {}
};

} // namespace wishart_sum
