// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

namespace risbeam
{

enum class CoefficientRole
{
    filter,     // h
    reflection, // v
};

// Complex n_x x n_y matrix of either filter coefficients h or reflection coefficients v.
struct CoefficientMatrix
{
    Eigen::MatrixXcd values;
    CoefficientRole role = CoefficientRole::filter;
};

} // namespace risbeam
