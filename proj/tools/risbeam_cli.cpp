// SPDX-License-Identifier: Apache-2.0
//
// risbeam: design, evaluate and compare RIS reflection-coefficient sets.
//
// Exit status: 0 success, 2 input/parse error, 3 numeric failure.

#include "risbeam/baseline.hpp"
#include "risbeam/errors.hpp"
#include "risbeam/evaluation.hpp"
#include "risbeam/io.hpp"
#include "risbeam/pattern_spec.hpp"
#include "risbeam/quantization.hpp"
#include "risbeam/synthesis.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace risbeam;

namespace
{

constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

fs::path sibling(const fs::path &out, const std::string &suffix)
{
    fs::path p = out;
    return p.replace_extension(suffix);
}

struct DesignArgs
{
    std::string spec;
    std::string out;
    std::string report;
    std::string path = "fast";
    std::optional<int> b1;
    std::optional<int> b2;
    double epsilon = 1e-6;
    bool regularize = false;
};

int run_design(const DesignArgs &args)
{
    const DesignInputs inputs = load_spec(args.spec);
    DesignOptions options;
    options.path = parse_design_path(args.path);
    if (args.b1.has_value() != args.b2.has_value())
        throw InputError("--b1 and --b2 must be given together");
    if (args.b1)
        options.quantization = QuantizationConfig{*args.b1, *args.b2};
    options.extract.epsilon = args.epsilon;
    options.extract.regularize = args.regularize;

    const DesignResult result = design(inputs.pattern, inputs.ris, inputs.grid, inputs.incidents, options);
    write_coefficients_csv(args.out, result.reflection);
    const fs::path report = args.report.empty() ? sibling(args.out, ".metrics.txt") : fs::path(args.report);
    write_text_file(report, metrics_report(result.report));
    std::cout << metrics_report(result.report);
    return 0;
}

struct EvaluateArgs
{
    std::string coeffs;
    std::string spec;
    std::string out;
    std::string report;
    std::optional<double> cross_section_elevation;
    int cross_section_samples = kDefaultCrossSectionSamples;
    bool image = false;
};

int run_evaluate(const EvaluateArgs &args)
{
    const DesignInputs inputs = load_spec(args.spec);
    validate(inputs.grid, inputs.ris);
    const auto start = std::chrono::steady_clock::now();
    const CoefficientMatrix v = read_coefficients_csv(args.coeffs, inputs.ris);
    const FrequencyGrid desired = sample_to_grid(inputs.pattern, inputs.grid, inputs.ris);
    const GridSamples samples = evaluate_on_grid(v, inputs.incidents, inputs.ris, inputs.grid);

    write_text_file(args.out, pattern_dump_csv(samples, desired, inputs.ris));
    if (args.image)
        write_text_file(sibling(args.out, ".pgm"), magnitude_pgm(samples.magnitude));
    if (args.cross_section_elevation)
    {
        const auto points = cross_section(v, inputs.incidents, inputs.ris, *args.cross_section_elevation,
                                          args.cross_section_samples);
        write_text_file(sibling(args.out, ".xsec.csv"), cross_section_csv(points));
    }

    DesignReport report;
    report.method = "evaluated";
    report.ris = inputs.ris;
    report.grid = inputs.grid;
    report.incidents = inputs.incidents;
    report.tse = tse(samples, desired);
    report.normalized_tse = desired.values.squaredNorm() > 0.0 ? normalized_tse(samples, desired) : 0.0;
    report.design_wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string text = metrics_report(report);
    write_text_file(args.report.empty() ? sibling(args.out, ".metrics.txt") : fs::path(args.report), text);
    std::cout << text;
    return 0;
}

struct CompareArgs
{
    std::string spec;
    std::string out;
    std::vector<int> sizes{16, 32, 64};
    std::vector<int> grid_factors{2, 4};
};

int run_compare(const CompareArgs &args)
{
    const DesignInputs inputs = load_spec(args.spec);
    std::string table = fmt::format("# proposed vs {} (normalized tse = tse / sum Hhat^2)\n", kBaselineLabel);
    table += fmt::format("{:<18} {:>9} {:>11} {:>24} {:>24} {:>12}\n", "method", "N", "M_1xM_2", "tse",
                         "normalized_tse", "wall_time_s");
    bool all_below = true;
    bool paths_agree = true;
    for (int n : args.sizes)
        for (int factor : args.grid_factors)
        {
            RisConfig cfg = inputs.ris;
            cfg.n_x = cfg.n_y = n;
            const FrequencyGridSpec spec{factor * n, factor * n};
            validate(cfg);
            validate(spec, cfg);
            const FrequencyGrid grid = sample_to_grid(inputs.pattern, spec, cfg);

            DesignOptions fast;
            DesignOptions direct;
            direct.path = DesignPath::direct;
            const DesignResult rows[] = {design_from_grid(grid, cfg, inputs.incidents, fast),
                                         design_from_grid(grid, cfg, inputs.incidents, direct),
                                         design_baseline(grid, cfg, inputs.incidents)};
            const char *labels[] = {"proposed(fast)", "proposed(direct)", "baseline"};
            for (int i = 0; i < 3; ++i)
            {
                const DesignReport &r = rows[i].report;
                table += fmt::format("{:<18} {:>9} {:>11} {:>24} {:>24} {:>12.6f}\n", labels[i],
                                     fmt::format("{}x{}", n, n), fmt::format("{}x{}", spec.m_1, spec.m_2),
                                     format_double(r.tse), format_double(r.normalized_tse), r.design_wall_time_s);
            }
            all_below = all_below && rows[0].report.normalized_tse < rows[2].report.normalized_tse;
            paths_agree = paths_agree && std::abs(rows[0].report.tse - rows[1].report.tse) <= 1e-10;
        }
    table += fmt::format("proposed_below_baseline: {}\n", all_below);
    table += fmt::format("fast_matches_direct: {}\n", paths_agree);
    write_text_file(args.out, table);
    std::cout << table;
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"RIS beam-pattern synthesis via 2-D linear-phase FIR design"};
    app.require_subcommand(1);

    DesignArgs design_args;
    auto *design_cmd = app.add_subcommand("design", "Design reflection coefficients from a spec file");
    design_cmd->add_option("--spec", design_args.spec, "Design specification file")->required();
    design_cmd->add_option("--out", design_args.out, "Coefficient CSV to write")->required();
    design_cmd->add_option("--report", design_args.report, "Metrics report (default: <out>.metrics.txt)");
    design_cmd->add_option("--path", design_args.path, "fast (IFFT) or direct (closed-form sum)")
        ->check(CLI::IsMember({"fast", "direct"}));
    design_cmd->add_option("--b1", design_args.b1, "Amplitude quantization bits")->check(CLI::Range(1, 16));
    design_cmd->add_option("--b2", design_args.b2, "Phase quantization bits")->check(CLI::Range(1, 16));
    design_cmd->add_option("--epsilon", design_args.epsilon, "Singularity threshold for incident phase sums");
    design_cmd->add_flag("--regularize", design_args.regularize,
                         "Regularize near-singular units instead of failing");

    EvaluateArgs eval_args;
    auto *eval_cmd = app.add_subcommand("evaluate", "Evaluate a coefficient file against a spec");
    eval_cmd->add_option("--coeffs", eval_args.coeffs, "Coefficient CSV")->required();
    eval_cmd->add_option("--spec", eval_args.spec, "Design specification file")->required();
    eval_cmd->add_option("--out", eval_args.out, "Pattern dump CSV to write")->required();
    eval_cmd->add_option("--report", eval_args.report, "Metrics report (default: <out>.metrics.txt)");
    eval_cmd->add_option("--cross-section-elevation", eval_args.cross_section_elevation,
                         "Write |g| along this elevation (radians) to <out>.xsec.csv");
    eval_cmd->add_option("--cross-section-samples", eval_args.cross_section_samples, "Azimuth samples")
        ->check(CLI::PositiveNumber);
    eval_cmd->add_flag("--image", eval_args.image, "Write an 8-bit graymap of |g| to <out>.pgm");

    CompareArgs cmp_args;
    auto *cmp_cmd = app.add_subcommand("compare", "Tabulate proposed vs baseline TSE across sizes");
    cmp_cmd->add_option("--spec", cmp_args.spec, "Design specification file")->required();
    cmp_cmd->add_option("--out", cmp_args.out, "Report to write")->required();
    cmp_cmd->add_option("--sizes", cmp_args.sizes, "Array sizes N (N x N units)")->delimiter(',');
    cmp_cmd->add_option("--grid-factors", cmp_args.grid_factors, "Grid size as multiples of N")->delimiter(',');

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try
    {
        if (design_cmd->parsed())
            return run_design(design_args);
        if (eval_cmd->parsed())
            return run_evaluate(eval_args);
        return run_compare(cmp_args);
    }
    catch (const InputError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    catch (const NumericError &e)
    {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
