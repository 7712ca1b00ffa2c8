// SPDX-License-Identifier: Apache-2.0
//
// File formats: coefficient CSV, pattern dump CSV, cross-section CSV,
// 8-bit graymap and key/value metrics reports.

#pragma once

#include "risbeam/evaluation.hpp"
#include "risbeam/synthesis.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace risbeam
{

// 17 significant digits; round-trips any double exactly.
std::string format_double(double x);

// Header `nx,ny,re,im,amplitude,phase_rad`, rows ordered by nx then ny.
std::string coefficients_to_csv(const CoefficientMatrix &v);
void write_coefficients_csv(const std::filesystem::path &path, const CoefficientMatrix &v);

// Expects exactly cfg.n_x * cfg.n_y rows covering every unit once. Throws InputError.
CoefficientMatrix parse_coefficients_csv(std::string_view csv, const RisConfig &cfg);
CoefficientMatrix read_coefficients_csv(const std::filesystem::path &path, const RisConfig &cfg);

// `k,l,omega1,omega2,theta_azi,theta_ele,H,Hhat`, angle fields empty outside the disk.
std::string pattern_dump_csv(const GridSamples &designed, const FrequencyGrid &desired, const RisConfig &cfg);

std::string cross_section_csv(const std::vector<CrossSectionPoint> &points);

// Binary PGM (P5) of magnitude(k, l) scaled to its maximum; image row = l, column = k.
std::string magnitude_pgm(const Eigen::MatrixXd &magnitude);

std::string metrics_report(const DesignReport &report);
std::map<std::string, std::string> parse_key_values(std::string_view text);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view contents);

} // namespace risbeam
