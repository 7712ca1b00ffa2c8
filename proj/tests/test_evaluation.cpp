// SPDX-License-Identifier: Apache-2.0

#include "risbeam/errors.hpp"
#include "risbeam/evaluation.hpp"
#include "risbeam/synthesis.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace risbeam;

namespace
{

const std::vector<Direction> kNormal{{0, 0}};

DesignResult two_spot_design()
{
    return design(fixtures::two_spot(), {32, 32, 0.5}, {128, 128}, kNormal);
}

double peak_near(const std::vector<CrossSectionPoint> &xs, double centre, double half_width)
{
    double best = 0.0;
    for (const auto &p : xs)
        if (std::abs(std::remainder(p.azimuth - centre, kTwoPi)) <= half_width)
            best = std::max(best, p.magnitude);
    return best;
}

} // namespace

TEST_CASE("beam pattern basics")
{
    const RisConfig cfg{4, 4, 0.5};
    const std::vector<Direction> dirs{{0, 0}, {1.0, 0.3}, {4.0, 1.2}};
    const auto zero = beam_pattern(CoefficientMatrix{Eigen::MatrixXcd::Zero(4, 4), CoefficientRole::reflection},
                                   kNormal, cfg, dirs);
    for (double m : zero.magnitude)
        CHECK(m == 0.0);

    // A single unit at the origin radiates isotropically. n_x = 1 bypasses the
    // even-size rule, which only the designer needs.
    const RisConfig one{1, 1, 0.5};
    const CoefficientMatrix v{Eigen::MatrixXcd::Ones(1, 1), CoefficientRole::reflection};
    const auto iso = beam_pattern(v, kNormal, one, dirs);
    for (std::size_t i = 0; i < dirs.size(); ++i)
    {
        CHECK(iso.response[i] == cplx{1, 0});
        CHECK(iso.magnitude[i] == 1.0);
    }

    CHECK_THROWS_AS(beam_pattern(v, kNormal, cfg, dirs), InputError);
}

TEST_CASE("geometric sum equals the filter form")
{
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> az(0.0, kTwoPi), el(0.0, kPi / 2);
    const RisConfig cfg{6, 4, 0.5};
    for (int trial = 0; trial < 50; ++trial)
    {
        const CoefficientMatrix v{oracle::random_complex(6, 4, rng), CoefficientRole::reflection};
        const std::vector<Direction> incidents{{az(rng), el(rng)}, {az(rng), el(rng)}};
        const Direction dir{az(rng), el(rng)};
        const cplx g = beam_pattern(v, incidents, cfg, std::vector<Direction>{dir}).response[0];
        const auto w = angle_to_omega(dir, cfg);
        const Eigen::MatrixXcd h = effective_filter(v, incidents, cfg);
        CHECK(std::abs(g - oracle::filter_response(h, w.omega1, w.omega2)) < 1e-10);
        CHECK(std::abs(filter_response(h, w.omega1, w.omega2) - oracle::filter_response(h, w.omega1, w.omega2)) <
              1e-10);
    }
}

TEST_CASE("designed pattern on the grid equals the filter response of h")
{
    const auto r = two_spot_design();
    const RisConfig cfg{32, 32, 0.5};
    const auto grid = evaluate_on_grid(r.reflection, kNormal, cfg, r.desired.spec);
    const auto axes = build_grid(r.desired.spec);
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<int> idx(0, 127);
    int checked = 0;
    while (checked < 200)
    {
        const int k = idx(rng), l = idx(rng);
        const auto dir = omega_to_angle(axes.omega1[k], axes.omega2[l], cfg);
        if (!dir)
        {
            CHECK(grid.magnitude(k, l) == 0.0);
            CHECK_FALSE(grid.inside(k, l));
            continue;
        }
        const cplx via_angles = beam_pattern(r.reflection, kNormal, cfg, std::vector<Direction>{*dir}).response[0];
        const cplx via_filter = oracle::filter_response(r.filter.values, axes.omega1[k], axes.omega2[l]);
        CHECK(std::abs(via_angles - via_filter) < 1e-10);
        CHECK(std::abs(grid.response(k, l) - via_filter) < 1e-10);
        CHECK(grid.magnitude(k, l) == std::abs(grid.response(k, l)));
        ++checked;
    }
}

TEST_CASE("tse and normalized tse")
{
    Eigen::MatrixXd desired(2, 3);
    desired << 1, 0, 0.5, 0, 2, 0;
    CHECK(tse(desired, desired) == 0.0);
    Eigen::MatrixXd off = desired;
    off(1, 2) += 1.0;
    CHECK(tse(off, desired) == 1.0);
    CHECK(tse(desired, off) == 1.0);
    CHECK(normalized_tse(desired, desired) == 0.0);
    CHECK(normalized_tse(Eigen::MatrixXd::Zero(2, 3), desired) == 1.0);
    CHECK_THROWS_AS(normalized_tse(desired, Eigen::MatrixXd::Zero(2, 3)), InputError);
    CHECK_THROWS_AS(tse(desired, Eigen::MatrixXd::Zero(3, 2)), InputError);

    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 20; ++trial)
    {
        const Eigen::MatrixXd a = oracle::random_grid(8, 8, rng), b = oracle::random_grid(8, 8, rng);
        CHECK(tse(a, b) == tse(b, a));
        const double c = 0.1 + trial;
        CHECK(normalized_tse(c * a, c * b) == doctest::Approx(normalized_tse(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("filter tse matches the term-by-term oracle")
{
    std::mt19937_64 rng(59);
    const FrequencyGrid grid{{16, 12}, oracle::random_grid(16, 12, rng)};
    const Eigen::MatrixXcd h = design_fast(grid, {4, 6, 0.5}).values;
    CHECK(filter_tse(h, grid) == doctest::Approx(oracle::filter_tse(h, grid.values)).epsilon(1e-12));
}

TEST_CASE("cross section")
{
    const RisConfig cfg{32, 32, 0.5};
    const CoefficientMatrix zero{Eigen::MatrixXcd::Zero(32, 32), CoefficientRole::reflection};
    const auto flat = cross_section(zero, kNormal, cfg, kPi / 4, 64);
    REQUIRE(flat.size() == 64);
    for (const auto &p : flat)
        CHECK(p.magnitude == 0.0);
    CHECK(flat[16].azimuth == doctest::Approx(kPi / 2));

    const auto r = two_spot_design();
    const auto xs = cross_section(r.reflection, kNormal, cfg, kPi / 4);
    REQUIRE(xs.size() == 1024);
    const double rect = peak_near(xs, kPi / 2, kPi / 6);
    const double circle = peak_near(xs, 3 * kPi / 2, kPi / 12);
    CHECK(rect / circle >= 1.5);
    CHECK(rect / circle <= 2.5);
    CHECK(xs[512].azimuth == kPi);
    CHECK(xs[512].magnitude < 0.2 * rect);

    CHECK_THROWS_AS(cross_section(zero, kNormal, cfg, 2.0), InputError);
}
