// SPDX-License-Identifier: Apache-2.0

#include "risbeam/baseline.hpp"

#include "risbeam/errors.hpp"
#include "risbeam/evaluation.hpp"

#include <chrono>

namespace risbeam
{

std::pair<int, int> max_energy_window(const Eigen::MatrixXcd &x, int rows, int cols)
{
    const auto m1 = static_cast<int>(x.rows());
    const auto m2 = static_cast<int>(x.cols());
    if (rows <= 0 || cols <= 0 || rows > m1 || cols > m2)
        throw InputError("energy window does not fit the matrix");

    // Prefix sums of |x|^2 over the matrix tiled once in each direction.
    const int e1 = m1 + rows - 1, e2 = m2 + cols - 1;
    Eigen::MatrixXd prefix = Eigen::MatrixXd::Zero(e1 + 1, e2 + 1);
    for (int i = 0; i < e1; ++i)
        for (int j = 0; j < e2; ++j)
            prefix(i + 1, j + 1) = std::norm(x(i % m1, j % m2)) + prefix(i, j + 1) + prefix(i + 1, j) - prefix(i, j);

    std::pair<int, int> best{0, 0};
    double best_energy = -1.0;
    for (int s1 = 0; s1 < m1; ++s1)
        for (int s2 = 0; s2 < m2; ++s2)
        {
            const double energy = prefix(s1 + rows, s2 + cols) - prefix(s1, s2 + cols) - prefix(s1 + rows, s2) +
                                  prefix(s1, s2);
            if (energy > best_energy)
            {
                best_energy = energy;
                best = {s1, s2};
            }
        }
    return best;
}

DesignResult design_baseline(const FrequencyGrid &grid, const RisConfig &cfg,
                             std::span<const Direction> incidents, const DesignOptions &options)
{
    validate(cfg);
    validate(grid.spec, cfg);
    if (options.quantization)
        validate(*options.quantization);
    const auto start = std::chrono::steady_clock::now();

    DesignResult result;
    result.desired = grid;

    const Eigen::MatrixXcd x = ifft2(grid.values.cast<cplx>());
    const auto [s1, s2] = max_energy_window(x, cfg.n_x, cfg.n_y);
    result.filter.role = CoefficientRole::filter;
    result.filter.values.resize(cfg.n_x, cfg.n_y);
    for (int m = 0; m < cfg.n_x; ++m)
        for (int n = 0; n < cfg.n_y; ++n)
            result.filter.values(m, n) = x((s1 + m) % grid.spec.m_1, (s2 + n) % grid.spec.m_2);

    result.reflection = extract_reflection(result.filter, incidents, cfg, options.extract);
    if (options.quantization)
        result.reflection = quantize(result.reflection, *options.quantization);
    const auto stop = std::chrono::steady_clock::now();

    DesignReport &report = result.report;
    report.method = kBaselineLabel;
    report.path = DesignPath::fast;
    report.design_wall_time_s = std::chrono::duration<double>(stop - start).count();
    report.ris = cfg;
    report.grid = grid.spec;
    report.incidents.assign(incidents.begin(), incidents.end());
    report.quantization = options.quantization;

    const GridSamples samples = evaluate_on_grid(result.reflection, incidents, cfg, grid.spec);
    report.tse = tse(samples, grid);
    report.normalized_tse = grid.values.squaredNorm() > 0.0 ? normalized_tse(samples, grid) : 0.0;
    return result;
}

} // namespace risbeam
