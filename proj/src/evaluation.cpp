// SPDX-License-Identifier: Apache-2.0

#include "risbeam/evaluation.hpp"

#include "risbeam/errors.hpp"

#include <cmath>
#include <string>

namespace risbeam
{

namespace
{

void check_shape(const CoefficientMatrix &v, const RisConfig &cfg)
{
    if (v.values.rows() != cfg.n_x || v.values.cols() != cfg.n_y)
        throw InputError("coefficient matrix is " + std::to_string(v.values.rows()) + "x" +
                         std::to_string(v.values.cols()) + ", expected " + std::to_string(cfg.n_x) + "x" +
                         std::to_string(cfg.n_y));
}

// steering(k, n) = e^{-j n w_k}
Eigen::MatrixXcd steering(const std::vector<double> &omega, Eigen::Index n_units)
{
    Eigen::MatrixXcd e(static_cast<Eigen::Index>(omega.size()), n_units);
    for (Eigen::Index k = 0; k < e.rows(); ++k)
        for (Eigen::Index n = 0; n < n_units; ++n)
            e(k, n) = std::polar(1.0, -static_cast<double>(n) * omega[static_cast<std::size_t>(k)]);
    return e;
}

} // namespace

Eigen::MatrixXcd effective_filter(const CoefficientMatrix &v, std::span<const Direction> incidents,
                                  const RisConfig &cfg)
{
    check_shape(v, cfg);
    Eigen::MatrixXcd h(cfg.n_x, cfg.n_y);
    for (int ix = 0; ix < cfg.n_x; ++ix)
        for (int iy = 0; iy < cfg.n_y; ++iy)
            h(ix, iy) = incident_phase_sum(incidents, ix, iy, cfg) * v.values(ix, iy);
    return h;
}

PatternSamples beam_pattern(const CoefficientMatrix &v, std::span<const Direction> incidents,
                            const RisConfig &cfg, std::span<const Direction> directions)
{
    const Eigen::MatrixXcd weighted = effective_filter(v, incidents, cfg);

    PatternSamples out;
    out.directions.assign(directions.begin(), directions.end());
    out.response.reserve(directions.size());
    out.magnitude.reserve(directions.size());
    for (const auto &dir : directions)
    {
        const Vec3 u = observation_unit_vector(dir);
        cplx g{0.0, 0.0};
        for (int ix = 0; ix < cfg.n_x; ++ix)
            for (int iy = 0; iy < cfg.n_y; ++iy)
                g += weighted(ix, iy) * std::polar(1.0, -kTwoPi * dot(u, unit_position(ix, iy, cfg)));
        out.response.push_back(g);
        out.magnitude.push_back(std::abs(g));
    }
    return out;
}

cplx filter_response(const Eigen::MatrixXcd &h, double omega1, double omega2)
{
    Eigen::VectorXcd a(h.rows()), b(h.cols());
    for (Eigen::Index n = 0; n < h.rows(); ++n)
        a(n) = std::polar(1.0, -static_cast<double>(n) * omega1);
    for (Eigen::Index n = 0; n < h.cols(); ++n)
        b(n) = std::polar(1.0, -static_cast<double>(n) * omega2);
    return (a.transpose() * h * b)(0, 0);
}

GridSamples evaluate_on_grid(const CoefficientMatrix &v, std::span<const Direction> incidents,
                             const RisConfig &cfg, const FrequencyGridSpec &spec)
{
    const Eigen::MatrixXcd h = effective_filter(v, incidents, cfg);
    const GridAxes axes = build_grid(spec);

    GridSamples out;
    out.spec = spec;
    out.response = steering(axes.omega1, cfg.n_x) * h * steering(axes.omega2, cfg.n_y).transpose();
    out.magnitude = Eigen::MatrixXd::Zero(spec.m_1, spec.m_2);
    out.inside.resize(spec.m_1, spec.m_2);
    for (int k = 0; k < spec.m_1; ++k)
        for (int l = 0; l < spec.m_2; ++l)
        {
            out.inside(k, l) = omega_to_angle(axes.omega1[k], axes.omega2[l], cfg).has_value();
            if (out.inside(k, l))
                out.magnitude(k, l) = std::abs(out.response(k, l));
        }
    return out;
}

Eigen::MatrixXcd zero_phase_response(const Eigen::MatrixXcd &h, const FrequencyGridSpec &spec)
{
    const GridAxes axes = build_grid(spec);
    const double c1 = 0.5 * static_cast<double>(h.rows() - 1);
    const double c2 = 0.5 * static_cast<double>(h.cols() - 1);
    Eigen::MatrixXcd g = steering(axes.omega1, h.rows()) * h * steering(axes.omega2, h.cols()).transpose();
    for (int k = 0; k < spec.m_1; ++k)
        for (int l = 0; l < spec.m_2; ++l)
            g(k, l) *= std::polar(1.0, c1 * axes.omega1[k] + c2 * axes.omega2[l]);
    return g;
}

double tse(const Eigen::MatrixXd &designed, const Eigen::MatrixXd &desired)
{
    if (designed.rows() != desired.rows() || designed.cols() != desired.cols())
        throw InputError("designed and desired grids differ in size");
    return (designed - desired).squaredNorm();
}

double tse(const GridSamples &designed, const FrequencyGrid &desired)
{
    if (!(designed.spec == desired.spec))
        throw InputError("designed and desired grids differ");
    return tse(designed.magnitude, desired.values);
}

double normalized_tse(const Eigen::MatrixXd &designed, const Eigen::MatrixXd &desired)
{
    const double energy = desired.squaredNorm();
    if (!(energy > 0.0))
        throw InputError("normalized TSE is undefined for an all-zero desired pattern");
    return tse(designed, desired) / energy;
}

double normalized_tse(const GridSamples &designed, const FrequencyGrid &desired)
{
    if (!(designed.spec == desired.spec))
        throw InputError("designed and desired grids differ");
    return normalized_tse(designed.magnitude, desired.values);
}

double filter_tse(const Eigen::MatrixXcd &h, const FrequencyGrid &desired)
{
    return tse(Eigen::MatrixXd(zero_phase_response(h, desired.spec).real()), desired.values);
}

std::vector<CrossSectionPoint> cross_section(const CoefficientMatrix &v, std::span<const Direction> incidents,
                                             const RisConfig &cfg, double elevation, int n_azimuth_samples)
{
    if (!(elevation >= 0.0 && elevation <= kPi / 2))
        throw InputError("cross-section elevation outside [0, pi/2]");
    if (n_azimuth_samples <= 0)
        throw InputError("cross-section needs at least one azimuth sample");
    std::vector<Direction> dirs(static_cast<std::size_t>(n_azimuth_samples));
    for (int i = 0; i < n_azimuth_samples; ++i)
        dirs[static_cast<std::size_t>(i)] = {kTwoPi * i / n_azimuth_samples, elevation};
    const PatternSamples samples = beam_pattern(v, incidents, cfg, dirs);

    std::vector<CrossSectionPoint> out(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i)
        out[i] = {dirs[i].azimuth, samples.magnitude[i]};
    return out;
}

} // namespace risbeam
