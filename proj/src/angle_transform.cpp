// SPDX-License-Identifier: Apache-2.0

#include "risbeam/angle_transform.hpp"

#include "risbeam/errors.hpp"
#include "risbeam/pattern_spec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace risbeam
{

namespace
{

// Points within this relative distance of the disk edge count as on it.
constexpr double kDiskTolerance = 1e-12;

// sin(e) * max(|cos a|, |sin a|): the larger of |omega1|, |omega2| per unit 2pi d/lambda.
double omega_extent(double azimuth, double elevation)
{
    return std::sin(std::clamp(elevation, 0.0, kPi / 2)) *
           std::max(std::abs(std::cos(azimuth)), std::abs(std::sin(azimuth)));
}

// Largest omega_extent over the support of a spot. omega_extent grows with
// elevation, so the maximum sits on the upper boundary of the support.
double max_extent(const BeamSpot &spot)
{
    constexpr int kSamples = 4096;
    const double pad = 0.5 * spot.transition_width;
    double best = 0.0;
    auto consider = [&](double a, double e) { best = std::max(best, omega_extent(a, e)); };

    if (const auto *rect = std::get_if<RectShape>(&spot.shape))
    {
        const double half_a = 0.5 * rect->width_azimuth + pad;
        const double top = rect->center_elevation + 0.5 * rect->width_elevation + pad;
        const double a0 = rect->center_azimuth - half_a;
        const double a1 = rect->center_azimuth + half_a;
        for (int i = 0; i <= kSamples; ++i)
            consider(a0 + (a1 - a0) * i / kSamples, top);
        // omega_extent peaks at multiples of pi/2 in azimuth.
        for (int q = -8; q <= 8; ++q)
            if (q * kPi / 2 >= a0 && q * kPi / 2 <= a1)
                consider(q * kPi / 2, top);
    }
    else if (const auto *circle = std::get_if<CircleShape>(&spot.shape))
    {
        const double radius = 0.5 * circle->diameter + pad;
        for (int i = 0; i < kSamples; ++i)
        {
            const double t = kTwoPi * i / kSamples;
            consider(circle->center_azimuth + radius * std::cos(t), circle->center_elevation + radius * std::sin(t));
        }
        for (int q = -8; q <= 8; ++q)
        {
            const double da = q * kPi / 2 - circle->center_azimuth;
            if (std::abs(da) <= radius)
                consider(q * kPi / 2, circle->center_elevation + std::sqrt(radius * radius - da * da));
        }
        consider(circle->center_azimuth, circle->center_elevation + radius);
    }
    else if (const auto *table = std::get_if<CustomTable>(&spot.shape))
    {
        for (Eigen::Index i = 0; i < table->magnitude.rows(); ++i)
            for (Eigen::Index j = 0; j < table->magnitude.cols(); ++j)
                if (table->magnitude(i, j) != 0.0)
                {
                    // Bilinear interpolation spreads support up to the next lattice row.
                    const auto jn = std::min<Eigen::Index>(j + 1, table->magnitude.cols() - 1);
                    consider(table->azimuths[i], table->elevations[jn]);
                    if (i + 1 < table->magnitude.rows())
                        consider(table->azimuths[i + 1], table->elevations[jn]);
                    if (i > 0)
                        consider(table->azimuths[i - 1], table->elevations[jn]);
                }
    }
    return best;
}

} // namespace

void validate(const FrequencyGridSpec &spec, const RisConfig &cfg)
{
    if (spec.m_1 <= 0 || spec.m_2 <= 0)
        throw InputError("m_1 and m_2 must be positive");
    if (spec.m_1 < cfg.n_x)
        throw InputError("m_1 (" + std::to_string(spec.m_1) + ") must be at least n_x (" + std::to_string(cfg.n_x) + ")");
    if (spec.m_2 < cfg.n_y)
        throw InputError("m_2 (" + std::to_string(spec.m_2) + ") must be at least n_y (" + std::to_string(cfg.n_y) + ")");
}

double visible_radius(const RisConfig &cfg) noexcept
{
    return kTwoPi * cfg.spacing_over_lambda;
}

OmegaPoint angle_to_omega(const Direction &dir, const RisConfig &cfg) noexcept
{
    const double scale = visible_radius(cfg) * std::sin(dir.elevation);
    OmegaPoint p;
    p.omega1 = scale * std::cos(dir.azimuth);
    p.omega2 = scale * std::sin(dir.azimuth);
    p.inside_disk = std::hypot(p.omega1, p.omega2) <= visible_radius(cfg) * (1.0 + kDiskTolerance);
    return p;
}

std::optional<Direction> omega_to_angle(double omega1, double omega2, const RisConfig &cfg) noexcept
{
    const double radius = visible_radius(cfg);
    const double rho = std::hypot(omega1, omega2);
    if (rho > radius * (1.0 + kDiskTolerance))
        return std::nullopt;
    Direction dir;
    if (rho > 0.0)
    {
        double azimuth = std::atan2(omega2, omega1);
        if (azimuth < 0.0)
            azimuth += kTwoPi;
        // atan2 of a tiny negative omega2 can round up to exactly 2pi.
        if (azimuth >= kTwoPi)
            azimuth = 0.0;
        dir.azimuth = azimuth;
    }
    dir.elevation = std::asin(std::min(rho / radius, 1.0));
    return dir;
}

std::optional<Direction> omega_to_angle(const OmegaPoint &p, const RisConfig &cfg) noexcept
{
    return omega_to_angle(p.omega1, p.omega2, cfg);
}

double grid_omega(int index, int size) noexcept
{
    return kTwoPi * index / size - kPi;
}

GridAxes build_grid(const FrequencyGridSpec &spec)
{
    GridAxes axes;
    axes.omega1.resize(static_cast<std::size_t>(spec.m_1));
    axes.omega2.resize(static_cast<std::size_t>(spec.m_2));
    for (int k = 0; k < spec.m_1; ++k)
        axes.omega1[k] = grid_omega(k, spec.m_1);
    for (int l = 0; l < spec.m_2; ++l)
        axes.omega2[l] = grid_omega(l, spec.m_2);
    return axes;
}

SpacingCheck validate_spacing(const DesiredPattern &pattern, const RisConfig &cfg)
{
    double extent = 0.0;
    for (const auto &spot : pattern.spots)
        if (spot.magnitude > 0.0)
            extent = std::max(extent, max_extent(spot));

    SpacingCheck check;
    check.max_spacing_over_lambda = extent > 0.0 ? 0.5 / extent : std::numeric_limits<double>::infinity();
    check.ok = cfg.spacing_over_lambda <= check.max_spacing_over_lambda * (1.0 + kDiskTolerance);
    return check;
}

} // namespace risbeam
