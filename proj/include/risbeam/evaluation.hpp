// SPDX-License-Identifier: Apache-2.0
//
// Forward beam-pattern computation and error metrics.

#pragma once

#include "risbeam/angle_transform.hpp"
#include "risbeam/coefficients.hpp"
#include "risbeam/geometry.hpp"
#include "risbeam/pattern_spec.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace risbeam
{

// Response at an arbitrary list of observation directions.
struct PatternSamples
{
    std::vector<Direction> directions;
    std::vector<cplx> response;
    std::vector<double> magnitude;
};

// Response on the omega sampling grid. magnitude(k, l) = |g| at the mapped
// angle inside the visible disk and 0 outside it.
struct GridSamples
{
    FrequencyGridSpec spec;
    Eigen::MatrixXcd response;
    Eigen::MatrixXd magnitude;
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> inside;
};

// h(n_x, n_y) = s(n_x, n_y) v(n_x, n_y): the filter whose DTFT is the beam pattern.
Eigen::MatrixXcd effective_filter(const CoefficientMatrix &v, std::span<const Direction> incidents,
                                  const RisConfig &cfg);

// g(dir) = sum s(n) v(n) e^{-j 2pi u(dir) . r(n)}, summed through the geometry vectors.
PatternSamples beam_pattern(const CoefficientMatrix &v, std::span<const Direction> incidents,
                            const RisConfig &cfg, std::span<const Direction> directions);

// sum h(n_x, n_y) e^{-j(n_x w1 + n_y w2)}
cplx filter_response(const Eigen::MatrixXcd &h, double omega1, double omega2);

GridSamples evaluate_on_grid(const CoefficientMatrix &v, std::span<const Direction> incidents,
                             const RisConfig &cfg, const FrequencyGridSpec &spec);

// e^{j((N_x-1)/2 w1 + (N_y-1)/2 w2)} H(e^{j w1}, e^{j w2}) on every grid point,
// visible or not. Real for Hermitian h.
Eigen::MatrixXcd zero_phase_response(const Eigen::MatrixXcd &h, const FrequencyGridSpec &spec);

// sum (H - H_hat)^2 over the grid.
double tse(const Eigen::MatrixXd &designed, const Eigen::MatrixXd &desired);
double tse(const GridSamples &designed, const FrequencyGrid &desired);

// tse / sum H_hat^2. Throws InputError when the desired grid is all zero.
double normalized_tse(const Eigen::MatrixXd &designed, const Eigen::MatrixXd &desired);
double normalized_tse(const GridSamples &designed, const FrequencyGrid &desired);

// Filter-design error of h itself: its real zero-phase response against
// H_hat over the full grid. This is the quantity the closed form minimises.
double filter_tse(const Eigen::MatrixXcd &h, const FrequencyGrid &desired);

struct CrossSectionPoint
{
    double azimuth = 0.0;
    double magnitude = 0.0;
};

inline constexpr int kDefaultCrossSectionSamples = 1024;

// |g| at n uniformly spaced azimuths in [0, 2pi) at fixed elevation.
std::vector<CrossSectionPoint> cross_section(const CoefficientMatrix &v, std::span<const Direction> incidents,
                                             const RisConfig &cfg, double elevation,
                                             int n_azimuth_samples = kDefaultCrossSectionSamples);

} // namespace risbeam
