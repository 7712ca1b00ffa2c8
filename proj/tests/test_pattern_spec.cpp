// SPDX-License-Identifier: Apache-2.0

#include "risbeam/errors.hpp"
#include "risbeam/pattern_spec.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

using namespace risbeam;

namespace
{

const char *kMinimal = R"(
[ris]
n_x = 8
n_y = 8

[[spot]]
kind = "rect"
center_azimuth = 1.0
center_elevation = 0.5
width_azimuth = 0.4
width_elevation = 0.2
)";

std::string with_ris(const std::string &ris_body, const std::string &rest = "")
{
    return "[ris]\n" + ris_body + "\n" + rest;
}

} // namespace

TEST_CASE("evaluate desired pattern")
{
    const DesiredPattern p = fixtures::two_spot();
    CHECK(evaluate_desired(p, {kPi / 2, kPi / 4}) == 1.0);
    CHECK(evaluate_desired(p, {3 * kPi / 2, kPi / 4}) == 0.5);
    CHECK(evaluate_desired(p, {kPi, kPi / 4}) == 0.0);
    CHECK(evaluate_desired(p, {kPi / 2, 0.05}) == 0.0);
    // Rectangle edge is closed.
    CHECK(evaluate_desired(p, {kPi / 2 + kPi / 6 - 1e-12, kPi / 4}) == 1.0);
    CHECK(evaluate_desired(p, {kPi / 2 + kPi / 6 + 1e-9, kPi / 4}) == 0.0);
}

TEST_CASE("overlapping spots take the maximum")
{
    DesiredPattern p;
    p.spots.push_back(BeamSpot{CircleShape{1.0, 0.5, 0.4}, 0.3, 0.0});
    p.spots.push_back(BeamSpot{CircleShape{1.1, 0.5, 0.4}, 0.8, 0.0});
    CHECK(evaluate_desired(p, {1.05, 0.5}) == 0.8);
    CHECK(evaluate_desired(p, {0.85, 0.5}) == 0.3);
}

TEST_CASE("spots wrap around azimuth zero")
{
    DesiredPattern p;
    p.spots.push_back(BeamSpot{RectShape{0.1, 0.5, 0.6, 0.2}, 1.0, 0.0});
    CHECK(evaluate_desired(p, {kTwoPi - 0.1, 0.5}) == 1.0);
    CHECK(evaluate_desired(p, {kTwoPi - 0.3, 0.5}) == 0.0);
    p.spots[0].shape = CircleShape{kTwoPi - 0.05, 0.5, 0.4};
    CHECK(evaluate_desired(p, {0.1, 0.5}) == 1.0);
}

TEST_CASE("raised-cosine edges stay between 0 and the spot level")
{
    DesiredPattern hard = fixtures::two_spot();
    DesiredPattern soft = hard;
    for (auto &spot : soft.spots)
        spot.transition_width = 0.1;

    // Deep inside and far outside are unaffected; the edge itself sits at half level.
    CHECK(evaluate_desired(soft, {kPi / 2, kPi / 4}) == 1.0);
    CHECK(evaluate_desired(soft, {kPi, kPi / 4}) == 0.0);
    CHECK(evaluate_desired(soft, {kPi / 2 + kPi / 6, kPi / 4}) == doctest::Approx(0.5).epsilon(1e-12));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> az(0.0, kTwoPi), el(0.0, kPi / 2);
    for (int i = 0; i < 20000; ++i)
    {
        const Direction d{az(rng), el(rng)};
        const double v = evaluate_desired(soft, d);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }

    // Along the azimuth through the rectangle the ramp is monotone.
    double prev = 1.0;
    for (int i = 0; i <= 200; ++i)
    {
        const double a = kPi / 2 + kPi / 6 - 0.05 + 0.1 * i / 200;
        const double v = evaluate_desired(soft, {a, kPi / 4});
        CHECK(v <= prev + 1e-15);
        prev = v;
    }

    const RisConfig cfg{32, 32, 0.5};
    const auto g = sample_to_grid(soft, {128, 128}, cfg);
    CHECK(g.values.minCoeff() >= 0.0);
    CHECK(g.values.maxCoeff() <= sample_to_grid(hard, {128, 128}, cfg).values.maxCoeff());
}

TEST_CASE("sample to grid")
{
    const RisConfig cfg{32, 32, 0.5};
    const FrequencyGridSpec spec{128, 128};

    const auto zero = sample_to_grid(DesiredPattern{}, spec, cfg);
    CHECK(zero.values.rows() == 128);
    CHECK(zero.values.cols() == 128);
    CHECK(zero.values.isZero(0.0));

    const DesiredPattern two_spot = fixtures::two_spot();
    const auto g = sample_to_grid(two_spot, spec, cfg);
    CHECK(g.values(0, 0) == 0.0);

    // Everything outside the disk is exactly zero.
    const auto axes = build_grid(spec);
    for (int k = 0; k < 128; ++k)
        for (int l = 0; l < 128; ++l)
            if (std::hypot(axes.omega1[k], axes.omega2[l]) > kPi)
                CHECK(g.values(k, l) == 0.0);

    // Grid point nearest to the rectangle centre.
    const auto target = angle_to_omega({kPi / 2, kPi / 4}, cfg);
    int best_k = 0, best_l = 0;
    double best = 1e9;
    for (int k = 0; k < 128; ++k)
        for (int l = 0; l < 128; ++l)
        {
            const double dist = std::hypot(axes.omega1[k] - target.omega1, axes.omega2[l] - target.omega2);
            if (dist < best)
                best = dist, best_k = k, best_l = l;
        }
    const auto dir = omega_to_angle(axes.omega1[best_k], axes.omega2[best_l], cfg);
    REQUIRE(dir);
    CHECK(g.values(best_k, best_l) == evaluate_desired(two_spot, *dir));
    CHECK(g.values(best_k, best_l) == 1.0);

    // Determinism.
    CHECK(g.values == sample_to_grid(two_spot, spec, cfg).values);

    CHECK_THROWS_AS(sample_to_grid(two_spot, spec, {32, 32, 0.8}), InputError);
}

TEST_CASE("parse minimal spec")
{
    const DesignInputs in = parse_spec(kMinimal);
    CHECK(in.ris.n_x == 8);
    CHECK(in.ris.n_y == 8);
    CHECK(in.ris.spacing_over_lambda == 0.5);
    CHECK(in.grid == FrequencyGridSpec{32, 32});
    REQUIRE(in.incidents.size() == 1);
    CHECK(in.incidents[0].azimuth == 0.0);
    CHECK(in.incidents[0].elevation == 0.0);
    REQUIRE(in.pattern.spots.size() == 1);
    const auto &rect = std::get<RectShape>(in.pattern.spots[0].shape);
    CHECK(rect.width_azimuth == 0.4);
    CHECK(in.pattern.spots[0].magnitude == 1.0);
}

TEST_CASE("parse the two-spot example config")
{
    const DesignInputs in = load_spec(std::filesystem::path(RISBEAM_CONFIG_DIR) / "two_spot.toml");
    CHECK(in.ris.n_x == 32);
    CHECK(in.ris.n_y == 32);
    CHECK(in.grid == FrequencyGridSpec{128, 128});
    REQUIRE(in.pattern.spots.size() == 2);
    const auto &rect = std::get<RectShape>(in.pattern.spots[0].shape);
    CHECK(rect.center_azimuth == kPi / 2);
    CHECK(rect.center_elevation == kPi / 4);
    CHECK(rect.width_azimuth == kPi / 3);
    CHECK(rect.width_elevation == kPi / 6);
    const auto &circle = std::get<CircleShape>(in.pattern.spots[1].shape);
    CHECK(circle.center_azimuth == 3 * kPi / 2);
    CHECK(circle.diameter == kPi / 6);
    CHECK(in.pattern.spots[1].magnitude == 0.5);
    for (double a : {0.3, 1.5, 3.0, 4.7, 6.0})
        for (double e : {0.1, 0.7, 0.8, 1.2})
            CHECK(evaluate_desired(in.pattern, {a, e}) == evaluate_desired(fixtures::two_spot(), {a, e}));
}

TEST_CASE("parse errors carry diagnostics")
{
    CHECK_THROWS_WITH_AS(parse_spec(with_ris("n_x = 31\nn_y = 8")), doctest::Contains("n_x must be even"),
                         InputError);
    CHECK_THROWS_WITH_AS(parse_spec(with_ris("n_x = 8\nn_y = 8\ncolour = 3")),
                         doctest::Contains("line 4: unknown key 'colour' in [ris]"), InputError);
    CHECK_THROWS_WITH_AS(parse_spec(with_ris("n_x = 8")), doctest::Contains("missing required key 'n_y'"),
                         InputError);
    CHECK_THROWS_WITH_AS(parse_spec(with_ris("n_x = 8.5\nn_y = 8")), doctest::Contains("must be an integer"),
                         InputError);
    CHECK_THROWS_WITH_AS(parse_spec("[[spot]]\nkind = \"rect\"\n"), doctest::Contains("missing required section [ris]"),
                         InputError);
    CHECK_THROWS_WITH_AS(parse_spec(with_ris("n_x = 8\nn_y = 8", "[[spot]]\nkind = \"hexagon\"\n")),
                         doctest::Contains("kind must be"), InputError);
    CHECK_THROWS_WITH_AS(parse_spec(with_ris("n_x = 8\nn_y = 8", "[[spot]]\nkind = \"circle\"\ncenter_azimuth = 7.0\n"
                                                                 "center_elevation = 0.5\ndiameter = 0.2\n")),
                         doctest::Contains("center_azimuth outside"), InputError);
    CHECK_THROWS_WITH_AS(parse_spec(with_ris("n_x = 8\nn_y = 8", "[[spot]]\nkind = \"circle\"\ncenter_azimuth = 1.0\n"
                                                                 "center_elevation = 0.5\ndiameter = 0.2\n"
                                                                 "width_azimuth = 0.1\n")),
                         doctest::Contains("unknown key 'width_azimuth'"), InputError);
    CHECK_THROWS_WITH_AS(parse_spec(with_ris("n_x = 8\nn_y = 8", "[[incident]]\nazimuth = 0.0\nelevation = 2.0\n")),
                         doctest::Contains("elevation"), InputError);
    CHECK_THROWS_WITH_AS(parse_spec(with_ris("n_x = 8\nn_y = 8", "[grid]\nm_1 = 4\n")),
                         doctest::Contains("m_1 (4) must be at least n_x (8)"), InputError);
    CHECK_THROWS_WITH_AS(parse_spec(with_ris("n_x = 8\nn_y = 8", "[ris]\n")), doctest::Contains("duplicate section"),
                         InputError);
    CHECK_THROWS_WITH_AS(parse_spec(with_ris("n_x = 8\nn_y = 8", "[beam]\n")), doctest::Contains("unknown section"),
                         InputError);
    CHECK_THROWS_WITH_AS(parse_spec(with_ris("n_x = 8\nn_y 8")), doctest::Contains("line 3"), InputError);
}

TEST_CASE("custom table spots")
{
    const std::string csv = "azimuth,elevation,magnitude\n"
                            "1.0,0.2,0.0\n1.0,0.4,1.0\n"
                            "2.0,0.2,1.0\n2.0,0.4,1.0\n";
    const CustomTable table = parse_custom_table(csv);
    CHECK(table.azimuths == std::vector<double>{1.0, 2.0});
    CHECK(table.elevations == std::vector<double>{0.2, 0.4});

    DesiredPattern p;
    p.spots.push_back(BeamSpot{table, 2.0, 0.0});
    CHECK(evaluate_desired(p, {1.0, 0.4}) == 2.0);
    CHECK(evaluate_desired(p, {1.5, 0.3}) == doctest::Approx(2.0 * 0.75));
    CHECK(evaluate_desired(p, {0.5, 0.3}) == 0.0);
    CHECK(evaluate_desired(p, {1.5, 0.5}) == 0.0);

    CHECK_THROWS_AS(parse_custom_table("azimuth,elevation,magnitude\n1.0,0.2,1.0\n2.0,0.4,1.0\n"), InputError);
    CHECK_THROWS_AS(parse_custom_table("az,el,mag\n1.0,0.2,1.0\n"), InputError);
    CHECK_THROWS_AS(parse_custom_table("azimuth,elevation,magnitude\n1.0,0.2,-1.0\n"), InputError);

    const auto dir = std::filesystem::temp_directory_path() / "risbeam_custom_table_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "table.csv") << csv;
    std::ofstream(dir / "spec.toml") << "[ris]\nn_x = 8\nn_y = 8\n[[spot]]\nkind = \"custom\"\n"
                                        "table_path = \"table.csv\"\nmagnitude = 0.5\n";
    const DesignInputs in = load_spec(dir / "spec.toml");
    REQUIRE(in.pattern.spots.size() == 1);
    CHECK(evaluate_desired(in.pattern, {2.0, 0.2}) == 0.5);
    std::filesystem::remove_all(dir);
}
