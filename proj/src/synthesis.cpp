// SPDX-License-Identifier: Apache-2.0

#include "risbeam/synthesis.hpp"

#include "risbeam/errors.hpp"
#include "risbeam/evaluation.hpp"

#include <fftw3.h>

#include <chrono>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>

namespace risbeam
{

namespace
{

// FFTW's planner is not thread safe; execution is.
std::mutex &planner_mutex()
{
    static std::mutex m;
    return m;
}

struct PlanDeleter
{
    void operator()(fftw_plan_s *plan) const
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
};

void check_grid(const FrequencyGrid &grid, const RisConfig &cfg)
{
    validate(cfg);
    validate(grid.spec, cfg);
    if (grid.values.rows() != grid.spec.m_1 || grid.values.cols() != grid.spec.m_2)
        throw InputError("frequency grid values do not match m_1 x m_2");
}

} // namespace

const char *to_string(DesignPath path) noexcept
{
    return path == DesignPath::fast ? "fast" : "direct";
}

DesignPath parse_design_path(std::string_view name)
{
    if (name == "fast")
        return DesignPath::fast;
    if (name == "direct")
        return DesignPath::direct;
    throw InputError("path must be 'fast' or 'direct', got '" + std::string(name) + "'");
}

double hermitian_defect(const Eigen::MatrixXcd &h)
{
    const Eigen::Index rows = h.rows(), cols = h.cols();
    double worst = 0.0;
    for (Eigen::Index m = 0; m < rows; ++m)
        for (Eigen::Index n = 0; n < cols; ++n)
            worst = std::max(worst, std::abs(h(m, n) - std::conj(h(rows - 1 - m, cols - 1 - n))));
    return worst;
}

CoefficientMatrix design_direct(const FrequencyGrid &grid, const RisConfig &cfg)
{
    check_grid(grid, cfg);
    const int m1 = grid.spec.m_1, m2 = grid.spec.m_2;
    const GridAxes axes = build_grid(grid.spec);
    const double c1 = 0.5 * (cfg.n_x - 1);
    const double c2 = 0.5 * (cfg.n_y - 1);

    // phase1(m, k) = e^{j (m - c1) w1_k}, phase2(n, l) = e^{j (n - c2) w2_l}
    const int half = cfg.n_x / 2;
    Eigen::MatrixXcd phase1(half, m1), phase2(cfg.n_y, m2);
    for (int m = 0; m < half; ++m)
        for (int k = 0; k < m1; ++k)
            phase1(m, k) = std::polar(1.0, (m - c1) * axes.omega1[k]);
    for (int n = 0; n < cfg.n_y; ++n)
        for (int l = 0; l < m2; ++l)
            phase2(n, l) = std::polar(1.0, (n - c2) * axes.omega2[l]);

    const double scale = 1.0 / (static_cast<double>(m1) * m2);
    Eigen::MatrixXcd top(half, cfg.n_y);
    for (int m = 0; m < half; ++m)
        for (int n = 0; n < cfg.n_y; ++n)
        {
            cplx acc{0.0, 0.0};
            for (int k = 0; k < m1; ++k)
            {
                cplx row{0.0, 0.0};
                for (int l = 0; l < m2; ++l)
                    row += grid.values(k, l) * phase2(n, l);
                acc += phase1(m, k) * row;
            }
            top(m, n) = scale * acc;
        }
    return hermitian_complete(top, cfg);
}

Eigen::MatrixXcd modulate_linear_phase(const FrequencyGrid &grid, const RisConfig &cfg)
{
    const GridAxes axes = build_grid(grid.spec);
    const double c1 = 0.5 * (cfg.n_x - 1);
    const double c2 = 0.5 * (cfg.n_y - 1);
    Eigen::MatrixXcd out(grid.spec.m_1, grid.spec.m_2);
    for (int k = 0; k < grid.spec.m_1; ++k)
        for (int l = 0; l < grid.spec.m_2; ++l)
            out(k, l) = grid.values(k, l) * std::polar(1.0, -(c1 * axes.omega1[k] + c2 * axes.omega2[l]));
    return out;
}

Eigen::MatrixXcd ifft2(const Eigen::MatrixXcd &x)
{
    const Eigen::Index rows = x.rows(), cols = x.cols();
    if (rows == 0 || cols == 0)
        return x;
    Eigen::MatrixXcd in = x;
    Eigen::MatrixXcd out(rows, cols);
    auto *src = reinterpret_cast<fftw_complex *>(in.data());
    auto *dst = reinterpret_cast<fftw_complex *>(out.data());

    // Eigen is column major, so the buffer is a row-major cols x rows array.
    // FFTW_BACKWARD is the unnormalized e^{+j} transform.
    std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_2d(static_cast<int>(cols), static_cast<int>(rows), src, dst, FFTW_BACKWARD,
                                    FFTW_ESTIMATE));
    }
    if (!plan)
        throw NumericError("FFTW failed to create a plan");
    fftw_execute(plan.get());
    out *= 1.0 / (static_cast<double>(rows) * static_cast<double>(cols));
    return out;
}

Eigen::MatrixXcd derotate_and_truncate(const Eigen::MatrixXcd &h_tilde, const RisConfig &cfg)
{
    const int half = cfg.n_x / 2;
    if (h_tilde.rows() < cfg.n_x || h_tilde.cols() < cfg.n_y)
        throw InputError("inverse transform is smaller than the RIS");
    Eigen::MatrixXcd top(half, cfg.n_y);
    for (int m = 0; m < half; ++m)
        for (int n = 0; n < cfg.n_y; ++n)
            top(m, n) = ((m + n) % 2 == 0) ? h_tilde(m, n) : -h_tilde(m, n);
    return top;
}

CoefficientMatrix hermitian_complete(const Eigen::MatrixXcd &half, const RisConfig &cfg)
{
    if (half.rows() < cfg.n_x / 2 || half.cols() != cfg.n_y)
        throw InputError("half coefficient matrix has the wrong shape");
    CoefficientMatrix h;
    h.role = CoefficientRole::filter;
    h.values.resize(cfg.n_x, cfg.n_y);
    for (int m = 0; m < cfg.n_x / 2; ++m)
        for (int n = 0; n < cfg.n_y; ++n)
        {
            h.values(m, n) = half(m, n);
            h.values(cfg.n_x - 1 - m, cfg.n_y - 1 - n) = std::conj(half(m, n));
        }
    return h;
}

CoefficientMatrix design_fast(const FrequencyGrid &grid, const RisConfig &cfg)
{
    check_grid(grid, cfg);
    return hermitian_complete(derotate_and_truncate(ifft2(modulate_linear_phase(grid, cfg)), cfg), cfg);
}

CoefficientMatrix extract_reflection(const CoefficientMatrix &h, std::span<const Direction> incidents,
                                     const RisConfig &cfg, const ExtractOptions &options)
{
    if (incidents.empty())
        throw InputError("at least one incident direction is required");
    if (h.values.rows() != cfg.n_x || h.values.cols() != cfg.n_y)
        throw InputError("coefficient matrix does not match n_x x n_y");

    CoefficientMatrix v;
    v.role = CoefficientRole::reflection;
    v.values.resize(cfg.n_x, cfg.n_y);
    std::vector<std::pair<int, int>> singular;
    for (int ix = 0; ix < cfg.n_x; ++ix)
        for (int iy = 0; iy < cfg.n_y; ++iy)
        {
            const cplx s = incident_phase_sum(incidents, ix, iy, cfg);
            if (std::abs(s) < options.epsilon)
            {
                singular.emplace_back(ix, iy);
                v.values(ix, iy) = h.values(ix, iy) * std::conj(s) /
                                   (std::norm(s) + options.epsilon * options.epsilon);
            }
            else
            {
                v.values(ix, iy) = h.values(ix, iy) / s;
            }
        }

    if (!singular.empty() && !options.regularize)
    {
        std::string msg = "incident phase sum vanishes (|s| < " + std::to_string(options.epsilon) + ") at " +
                          std::to_string(singular.size()) + " unit(s):";
        const std::size_t shown = std::min<std::size_t>(singular.size(), 16);
        for (std::size_t i = 0; i < shown; ++i)
            msg += " (" + std::to_string(singular[i].first) + "," + std::to_string(singular[i].second) + ")";
        if (shown < singular.size())
            msg += " ...";
        throw NumericError(msg, std::move(singular));
    }
    return v;
}

DesignResult design_from_grid(const FrequencyGrid &grid, const RisConfig &cfg,
                              std::span<const Direction> incidents, const DesignOptions &options)
{
    if (options.quantization)
        validate(*options.quantization);
    const auto start = std::chrono::steady_clock::now();

    DesignResult result;
    result.desired = grid;
    result.filter = options.path == DesignPath::fast ? design_fast(grid, cfg) : design_direct(grid, cfg);
    result.reflection = extract_reflection(result.filter, incidents, cfg, options.extract);
    if (options.quantization)
        result.reflection = quantize(result.reflection, *options.quantization);

    const auto stop = std::chrono::steady_clock::now();

    DesignReport &report = result.report;
    report.method = "proposed";
    report.path = options.path;
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

DesignResult design(const DesiredPattern &pattern, const RisConfig &cfg, const FrequencyGridSpec &spec,
                    std::span<const Direction> incidents, const DesignOptions &options)
{
    validate(cfg);
    validate(spec, cfg);
    const auto start = std::chrono::steady_clock::now();
    const FrequencyGrid grid = sample_to_grid(pattern, spec, cfg);
    const double sampling_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    DesignResult result = design_from_grid(grid, cfg, incidents, options);
    result.report.design_wall_time_s += sampling_s;
    return result;
}

} // namespace risbeam
