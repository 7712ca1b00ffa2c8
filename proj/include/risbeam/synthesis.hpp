// SPDX-License-Identifier: Apache-2.0
//
// Closed-form least-squares design of the reflection coefficients.
//
// The aggregate response is the DTFT of h(n_x, n_y) = s(n_x, n_y) v(n_x, n_y),
// where s is the incident phase sum. h is chosen as the linear-phase,
// Hermitian-symmetric FIR filter whose zero-phase response minimises the
// squared error to H_hat on the sampling grid:
//
//   h(m, n) = 1/(M_1 M_2) sum_k sum_l H_hat(k, l) e^{j[(m - (N_x-1)/2) w1_k + (n - (N_y-1)/2) w2_l]}
//
// evaluated either directly or through one M_1 x M_2 inverse FFT.

#pragma once

#include "risbeam/angle_transform.hpp"
#include "risbeam/coefficients.hpp"
#include "risbeam/geometry.hpp"
#include "risbeam/pattern_spec.hpp"
#include "risbeam/quantization.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace risbeam
{

enum class DesignPath
{
    fast,
    direct,
};

const char *to_string(DesignPath path) noexcept;
DesignPath parse_design_path(std::string_view name);

struct DesignReport
{
    std::string method = "proposed";
    double tse = 0.0;
    double normalized_tse = 0.0;
    double design_wall_time_s = 0.0;
    std::optional<DesignPath> path; // unset for evaluation-only reports
    RisConfig ris;
    FrequencyGridSpec grid;
    std::vector<Direction> incidents;
    std::optional<QuantizationConfig> quantization;
};

// Max |h(m,n) - conj(h(N_x-1-m, N_y-1-n))| over all entries.
double hermitian_defect(const Eigen::MatrixXcd &h);

// Brute-force evaluation of the closed-form coefficients; oracle for the fast path.
CoefficientMatrix design_direct(const FrequencyGrid &grid, const RisConfig &cfg);

// H_tilde(k, l) = H_hat(k, l) e^{-j((N_x-1)/2 w1_k + (N_y-1)/2 w2_l)}
Eigen::MatrixXcd modulate_linear_phase(const FrequencyGrid &grid, const RisConfig &cfg);

// x(p, q) = 1/(MN) sum_m sum_n X(m, n) e^{j 2pi m p / M} e^{j 2pi n q / N}
Eigen::MatrixXcd ifft2(const Eigen::MatrixXcd &x);

// First N_x/2 rows of h: h(m, n) = (-1)^{m+n} h_tilde(m, n).
Eigen::MatrixXcd derotate_and_truncate(const Eigen::MatrixXcd &h_tilde, const RisConfig &cfg);

// Fills rows N_x/2..N_x-1 from h(m, n) = conj(h(N_x-1-m, N_y-1-n)).
CoefficientMatrix hermitian_complete(const Eigen::MatrixXcd &half, const RisConfig &cfg);

CoefficientMatrix design_fast(const FrequencyGrid &grid, const RisConfig &cfg);

struct ExtractOptions
{
    double epsilon = 1e-6;
    // Replace v = h / s by h conj(s) / (|s|^2 + eps^2) at units where |s| < eps
    // instead of failing.
    bool regularize = false;
};

// v = h / s with s the incident phase sum at each unit. Throws NumericError
// listing the units where |s| < epsilon unless regularization is requested.
CoefficientMatrix extract_reflection(const CoefficientMatrix &h, std::span<const Direction> incidents,
                                     const RisConfig &cfg, const ExtractOptions &options = {});

struct DesignOptions
{
    DesignPath path = DesignPath::fast;
    std::optional<QuantizationConfig> quantization;
    ExtractOptions extract;
};

struct DesignResult
{
    CoefficientMatrix reflection; // v (quantized when requested)
    CoefficientMatrix filter;     // h
    FrequencyGrid desired;
    DesignReport report;
};

DesignResult design(const DesiredPattern &pattern, const RisConfig &cfg, const FrequencyGridSpec &spec,
                    std::span<const Direction> incidents, const DesignOptions &options = {});

// Same pipeline starting from an already sampled desired grid.
DesignResult design_from_grid(const FrequencyGrid &grid, const RisConfig &cfg,
                              std::span<const Direction> incidents, const DesignOptions &options = {});

} // namespace risbeam
