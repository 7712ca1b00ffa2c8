// SPDX-License-Identifier: Apache-2.0
//
// Mapping between observation angles and the transform-domain frequencies
//   omega1 = 2pi (d/lambda) cos(azi) sin(ele),  omega2 = 2pi (d/lambda) sin(azi) sin(ele)
// and the uniform M_1 x M_2 sampling grid omega_k = 2pi k / M - pi.

#pragma once

#include "risbeam/geometry.hpp"

#include <optional>
#include <vector>

namespace risbeam
{

struct DesiredPattern;

struct FrequencyGridSpec
{
    int m_1 = 128;
    int m_2 = 128;

    bool operator==(const FrequencyGridSpec &) const = default;
};

// m_1 >= n_x and m_2 >= n_y, otherwise the inverse transform cannot supply
// every coefficient index.
void validate(const FrequencyGridSpec &spec, const RisConfig &cfg);

struct OmegaPoint
{
    double omega1 = 0.0;
    double omega2 = 0.0;
    bool inside_disk = true;
};

// Radius of the visible region in the omega plane: 2pi d/lambda (pi for d = lambda/2).
double visible_radius(const RisConfig &cfg) noexcept;

OmegaPoint angle_to_omega(const Direction &dir, const RisConfig &cfg) noexcept;

// Inverse of angle_to_omega on the visible disk; std::nullopt outside it.
// omega = (0, 0) maps to azimuth 0.
std::optional<Direction> omega_to_angle(double omega1, double omega2, const RisConfig &cfg) noexcept;
std::optional<Direction> omega_to_angle(const OmegaPoint &p, const RisConfig &cfg) noexcept;

struct GridAxes
{
    std::vector<double> omega1; // size m_1
    std::vector<double> omega2; // size m_2
};

double grid_omega(int index, int size) noexcept;
GridAxes build_grid(const FrequencyGridSpec &spec);

struct SpacingCheck
{
    bool ok = true;
    // Largest d/lambda for which every direction in the pattern support stays
    // inside [-pi, pi)^2. +inf when the support only touches the zenith.
    double max_spacing_over_lambda = 0.0;
};

SpacingCheck validate_spacing(const DesiredPattern &pattern, const RisConfig &cfg);

} // namespace risbeam
