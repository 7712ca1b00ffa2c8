// SPDX-License-Identifier: Apache-2.0
//
// Surrogate of the comparison method: the transform-domain response is
// designated directly (plain inverse transform of H_hat, no linear-phase
// modulation, no Hermitian structure) and the N_x x N_y block holding the most
// energy is kept.

#pragma once

#include "risbeam/synthesis.hpp"

#include <span>
#include <utility>

namespace risbeam
{

inline constexpr const char *kBaselineLabel = "surrogate baseline";

// Circular offset (s1, s2) maximizing sum |x|^2 over the window
// [s1, s1 + rows) x [s2, s2 + cols) taken modulo the matrix size.
std::pair<int, int> max_energy_window(const Eigen::MatrixXcd &x, int rows, int cols);

DesignResult design_baseline(const FrequencyGrid &grid, const RisConfig &cfg,
                             std::span<const Direction> incidents, const DesignOptions &options = {});

} // namespace risbeam
