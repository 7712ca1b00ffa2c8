// SPDX-License-Identifier: Apache-2.0

#include "risbeam/geometry.hpp"

#include "risbeam/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace risbeam
{

void validate(const RisConfig &cfg)
{
    if (cfg.n_x <= 0)
        throw InputError("n_x must be positive");
    if (cfg.n_y <= 0)
        throw InputError("n_y must be positive");
    if (cfg.n_x % 2 != 0)
        throw InputError("n_x must be even");
    if (cfg.n_y % 2 != 0)
        throw InputError("n_y must be even");
    if (!(cfg.spacing_over_lambda > 0.0) || !std::isfinite(cfg.spacing_over_lambda))
        throw InputError("spacing_over_lambda must be positive");
}

bool is_valid(const Direction &dir) noexcept
{
    return dir.azimuth >= 0.0 && dir.azimuth < kTwoPi && dir.elevation >= 0.0 && dir.elevation <= kPi / 2;
}

void validate(const Direction &dir)
{
    if (!(dir.azimuth >= 0.0 && dir.azimuth < kTwoPi))
        throw InputError("azimuth " + std::to_string(dir.azimuth) + " outside [0, 2pi)");
    if (!(dir.elevation >= 0.0 && dir.elevation <= kPi / 2))
        throw InputError("elevation " + std::to_string(dir.elevation) + " outside [0, pi/2]");
}

Vec3 incident_unit_vector(const Direction &dir) noexcept
{
    const double s = std::sin(dir.elevation);
    return {std::cos(dir.azimuth) * s, std::sin(dir.azimuth) * s, -std::cos(dir.elevation)};
}

Vec3 observation_unit_vector(const Direction &dir) noexcept
{
    const double s = std::sin(dir.elevation);
    return {std::cos(dir.azimuth) * s, std::sin(dir.azimuth) * s, std::cos(dir.elevation)};
}

Vec3 unit_position(int ix, int iy, const RisConfig &cfg)
{
    if (ix < 0 || ix >= cfg.n_x || iy < 0 || iy >= cfg.n_y)
        throw std::out_of_range("unit index (" + std::to_string(ix) + ", " + std::to_string(iy) + ") out of range");
    return {ix * cfg.spacing_over_lambda, iy * cfg.spacing_over_lambda, 0.0};
}

double dot(const Vec3 &a, const Vec3 &b) noexcept
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

cplx incident_phase_sum(std::span<const Direction> incidents, int ix, int iy, const RisConfig &cfg)
{
    if (incidents.empty())
        throw InputError("at least one incident direction is required");
    const Vec3 r = unit_position(ix, iy, cfg);
    cplx sum{0.0, 0.0};
    for (const auto &dir : incidents)
        sum += std::polar(1.0, kTwoPi * dot(incident_unit_vector(dir), r));
    return sum;
}

} // namespace risbeam
