// SPDX-License-Identifier: Apache-2.0

#include "risbeam/io.hpp"

#include "risbeam/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace risbeam
{

namespace
{

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

template <typename T>
T parse_number(std::string_view field, int line_no)
{
    T value{};
    const char *first = field.data();
    const char *last = field.data() + field.size();
    const auto res = std::from_chars(first, last, value);
    if (field.empty() || res.ec != std::errc() || res.ptr != last)
        throw InputError("line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
    return value;
}

double phase_0_2pi(cplx z)
{
    double p = std::arg(z);
    if (p < 0.0)
        p += kTwoPi;
    return p;
}

} // namespace

std::string format_double(double x)
{
    return fmt::format("{:.17g}", x);
}

std::string coefficients_to_csv(const CoefficientMatrix &v)
{
    std::string out = "nx,ny,re,im,amplitude,phase_rad\n";
    for (Eigen::Index ix = 0; ix < v.values.rows(); ++ix)
        for (Eigen::Index iy = 0; iy < v.values.cols(); ++iy)
        {
            const cplx z = v.values(ix, iy);
            out += fmt::format("{},{},{},{},{},{}\n", ix, iy, format_double(z.real()), format_double(z.imag()),
                               format_double(std::abs(z)), format_double(phase_0_2pi(z)));
        }
    return out;
}

void write_coefficients_csv(const std::filesystem::path &path, const CoefficientMatrix &v)
{
    write_text_file(path, coefficients_to_csv(v));
}

CoefficientMatrix parse_coefficients_csv(std::string_view csv, const RisConfig &cfg)
{
    CoefficientMatrix v;
    v.role = CoefficientRole::reflection;
    v.values = Eigen::MatrixXcd::Zero(cfg.n_x, cfg.n_y);
    std::vector<char> seen(static_cast<std::size_t>(cfg.n_x) * static_cast<std::size_t>(cfg.n_y), 0);

    std::istringstream in{std::string(csv)};
    std::string line;
    int line_no = 0;
    bool header = false;
    std::size_t rows = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const auto t = trim(line);
        if (t.empty())
            continue;
        if (!header)
        {
            if (t != "nx,ny,re,im,amplitude,phase_rad")
                throw InputError("coefficient file: expected header 'nx,ny,re,im,amplitude,phase_rad'");
            header = true;
            continue;
        }
        const auto fields = split(t, ',');
        if (fields.size() != 6)
            throw InputError("coefficient file line " + std::to_string(line_no) + ": expected 6 fields, got " +
                             std::to_string(fields.size()));
        const int ix = parse_number<int>(fields[0], line_no);
        const int iy = parse_number<int>(fields[1], line_no);
        if (ix < 0 || ix >= cfg.n_x || iy < 0 || iy >= cfg.n_y)
            throw InputError("coefficient file line " + std::to_string(line_no) + ": unit (" + std::to_string(ix) +
                             "," + std::to_string(iy) + ") outside the " + std::to_string(cfg.n_x) + "x" +
                             std::to_string(cfg.n_y) + " array");
        const double re = parse_number<double>(fields[2], line_no);
        const double im = parse_number<double>(fields[3], line_no);
        parse_number<double>(fields[4], line_no);
        parse_number<double>(fields[5], line_no);
        auto &flag = seen[static_cast<std::size_t>(ix) * static_cast<std::size_t>(cfg.n_y) + static_cast<std::size_t>(iy)];
        if (flag)
            throw InputError("coefficient file line " + std::to_string(line_no) + ": duplicate unit");
        flag = 1;
        v.values(ix, iy) = cplx{re, im};
        ++rows;
    }
    if (!header)
        throw InputError("coefficient file is empty");
    if (rows != seen.size())
        throw InputError("coefficient file has " + std::to_string(rows) + " rows, expected " +
                         std::to_string(seen.size()));
    return v;
}

CoefficientMatrix read_coefficients_csv(const std::filesystem::path &path, const RisConfig &cfg)
{
    try
    {
        return parse_coefficients_csv(read_text_file(path), cfg);
    }
    catch (const InputError &e)
    {
        throw InputError(path.string() + ": " + e.what());
    }
}

std::string pattern_dump_csv(const GridSamples &designed, const FrequencyGrid &desired, const RisConfig &cfg)
{
    if (!(designed.spec == desired.spec))
        throw InputError("designed and desired grids differ");
    const GridAxes axes = build_grid(desired.spec);
    std::string out = "k,l,omega1,omega2,theta_azi,theta_ele,H,Hhat\n";
    for (int k = 0; k < desired.spec.m_1; ++k)
        for (int l = 0; l < desired.spec.m_2; ++l)
        {
            const auto dir = omega_to_angle(axes.omega1[k], axes.omega2[l], cfg);
            out += fmt::format("{},{},{},{},{},{},{},{}\n", k, l, format_double(axes.omega1[k]),
                               format_double(axes.omega2[l]), dir ? format_double(dir->azimuth) : "",
                               dir ? format_double(dir->elevation) : "", format_double(designed.magnitude(k, l)),
                               format_double(desired.values(k, l)));
        }
    return out;
}

std::string cross_section_csv(const std::vector<CrossSectionPoint> &points)
{
    std::string out = "azimuth,magnitude\n";
    for (const auto &p : points)
        out += fmt::format("{},{}\n", format_double(p.azimuth), format_double(p.magnitude));
    return out;
}

std::string magnitude_pgm(const Eigen::MatrixXd &magnitude)
{
    const auto width = magnitude.rows();
    const auto height = magnitude.cols();
    std::string out = fmt::format("P5\n{} {}\n255\n", width, height);
    const double peak = magnitude.size() ? magnitude.maxCoeff() : 0.0;
    out.reserve(out.size() + static_cast<std::size_t>(width * height));
    for (Eigen::Index l = 0; l < height; ++l)
        for (Eigen::Index k = 0; k < width; ++k)
        {
            const double level = peak > 0.0 ? std::round(255.0 * magnitude(k, l) / peak) : 0.0;
            out.push_back(static_cast<char>(static_cast<unsigned char>(std::clamp(level, 0.0, 255.0))));
        }
    return out;
}

std::string metrics_report(const DesignReport &report)
{
    std::string incidents;
    for (const auto &dir : report.incidents)
    {
        if (!incidents.empty())
            incidents += ";";
        incidents += format_double(dir.azimuth) + "," + format_double(dir.elevation);
    }
    std::string out;
    out += fmt::format("method: {}\n", report.method);
    out += fmt::format("path: {}\n", report.path ? to_string(*report.path) : "n/a");
    out += fmt::format("n_x: {}\n", report.ris.n_x);
    out += fmt::format("n_y: {}\n", report.ris.n_y);
    out += fmt::format("spacing_over_lambda: {}\n", format_double(report.ris.spacing_over_lambda));
    out += fmt::format("m_1: {}\n", report.grid.m_1);
    out += fmt::format("m_2: {}\n", report.grid.m_2);
    out += fmt::format("incidents: {}\n", incidents);
    if (report.quantization)
    {
        out += fmt::format("b1: {}\n", report.quantization->amplitude_bits);
        out += fmt::format("b2: {}\n", report.quantization->phase_bits);
    }
    out += fmt::format("tse: {}\n", format_double(report.tse));
    out += fmt::format("normalized_tse: {}\n", format_double(report.normalized_tse));
    out += fmt::format("wall_time_s: {}\n", format_double(report.design_wall_time_s));
    return out;
}

std::map<std::string, std::string> parse_key_values(std::string_view text)
{
    std::map<std::string, std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line))
    {
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            continue;
        out[std::string(trim(std::string_view(line).substr(0, colon)))] =
            std::string(trim(std::string_view(line).substr(colon + 1)));
    }
    return out;
}

std::string read_text_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw InputError("cannot write '" + path.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out)
        throw InputError("failed writing '" + path.string() + "'");
}

} // namespace risbeam
