// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "risbeam/coefficients.hpp"

namespace risbeam
{

struct QuantizationConfig
{
    int amplitude_bits = 3; // b1
    int phase_bits = 3;     // b2

    bool operator==(const QuantizationConfig &) const = default;
};

void validate(const QuantizationConfig &q);

// Amplitude: nearest of 2^b1 uniform levels on [0, max|v|] (both ends included).
// Phase: nearest of 2^b2 points 2pi i / 2^b2. Ties go to the lower level.
// Idempotent. An all-zero matrix is returned unchanged.
CoefficientMatrix quantize(const CoefficientMatrix &v, const QuantizationConfig &q);

} // namespace risbeam
