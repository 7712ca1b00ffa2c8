// SPDX-License-Identifier: Apache-2.0
//
// Array geometry of a planar RIS: unit positions, plane-wave directions and
// the per-unit phase factor contributed by the incident wave(s).

#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <span>

namespace risbeam
{

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// N_x x N_y reflection units with spacing d. Only d/lambda is ever needed, so
// positions are expressed in wavelengths.
struct RisConfig
{
    int n_x = 32;
    int n_y = 32;
    double spacing_over_lambda = 0.5;
};

// Throws InputError unless n_x, n_y are positive and even and d/lambda > 0.
void validate(const RisConfig &cfg);

// Azimuth in [0, 2pi), elevation in [0, pi/2] (measured from the surface normal).
struct Direction
{
    double azimuth = 0.0;
    double elevation = 0.0;
};

bool is_valid(const Direction &dir) noexcept;
void validate(const Direction &dir);

// [cos a sin e, sin a sin e, -cos e]: plane wave travelling towards the surface.
Vec3 incident_unit_vector(const Direction &dir) noexcept;

// [cos a sin e, sin a sin e, +cos e]: direction of observation of the reflected wave.
Vec3 observation_unit_vector(const Direction &dir) noexcept;

// Centre of unit (ix, iy) in wavelengths. Throws std::out_of_range.
Vec3 unit_position(int ix, int iy, const RisConfig &cfg);

double dot(const Vec3 &a, const Vec3 &b) noexcept;

// sum_i exp(j 2pi u_in_i . r(ix, iy)); the factor multiplying v(ix, iy) in the
// aggregate response. Throws InputError on an empty incident list.
cplx incident_phase_sum(std::span<const Direction> incidents, int ix, int iy, const RisConfig &cfg);

} // namespace risbeam
