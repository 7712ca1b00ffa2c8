// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace risbeam
{

// Malformed or out-of-range user input (spec files, coefficient files, flags).
class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Numerically unusable design, e.g. multi-incidence phase sums that cancel.
class NumericError : public std::runtime_error
{
public:
    NumericError(const std::string &what, std::vector<std::pair<int, int>> units = {})
        : std::runtime_error(what), units_(std::move(units)) {}

    // Offending (n_x, n_y) unit indices, if any.
    const std::vector<std::pair<int, int>> &units() const noexcept { return units_; }

private:
    std::vector<std::pair<int, int>> units_;
};

} // namespace risbeam
