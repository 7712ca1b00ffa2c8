// SPDX-License-Identifier: Apache-2.0

#include "risbeam/quantization.hpp"

#include "risbeam/errors.hpp"
#include "risbeam/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace risbeam
{

namespace
{

// Nearest integer to t, ties toward the lower one.
double round_half_down(double t)
{
    return std::ceil(t - 0.5);
}

// Full-scale amplitude: max|v| rounded to a 32-bit mantissa. Re-quantizing
// perturbs max|v| by a few ulps, which never moves it across a 32-bit
// rounding boundary, so the full scale (and hence every output bit) is stable.
double full_scale(double max_amplitude)
{
    int exponent = 0;
    const double mantissa = std::frexp(max_amplitude, &exponent);
    return std::ldexp(std::round(std::ldexp(mantissa, 32)), exponent - 32);
}

} // namespace

void validate(const QuantizationConfig &q)
{
    if (q.amplitude_bits < 1 || q.amplitude_bits > 16)
        throw InputError("b1 must be between 1 and 16, got " + std::to_string(q.amplitude_bits));
    if (q.phase_bits < 1 || q.phase_bits > 16)
        throw InputError("b2 must be between 1 and 16, got " + std::to_string(q.phase_bits));
}

CoefficientMatrix quantize(const CoefficientMatrix &v, const QuantizationConfig &q)
{
    validate(q);
    if (v.values.size() == 0)
        throw InputError("cannot quantize an empty coefficient matrix");
    const double max_amplitude = v.values.cwiseAbs().maxCoeff();
    if (!(max_amplitude > 0.0))
        return v;

    const double top = full_scale(max_amplitude);
    const double levels = std::ldexp(1.0, q.amplitude_bits) - 1.0; // index of the top level
    const double amplitude_step = top / levels;
    const double phase_points = std::ldexp(1.0, q.phase_bits);
    const double phase_step = kTwoPi / phase_points;

    CoefficientMatrix out = v;
    for (Eigen::Index i = 0; i < v.values.size(); ++i)
    {
        const cplx z = v.values(i);
        const double a_idx = std::clamp(round_half_down(std::abs(z) / amplitude_step), 0.0, levels);
        if (a_idx == 0.0)
        {
            out.values(i) = cplx{0.0, 0.0};
            continue;
        }
        const double amplitude = a_idx == levels ? top : a_idx * amplitude_step;

        double phase = std::arg(z);
        if (phase < 0.0)
            phase += kTwoPi;
        double p_idx = round_half_down(phase / phase_step);
        if (p_idx >= phase_points)
            p_idx -= phase_points;

        out.values(i) = std::polar(amplitude, p_idx * phase_step);
    }
    return out;
}

} // namespace risbeam
