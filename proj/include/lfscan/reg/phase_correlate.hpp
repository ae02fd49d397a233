#pragma once

#include "lfscan/core/image.hpp"

namespace lfscan {

struct PhaseCorrelationResult {
    // displacement of b's content relative to a: b(x, y) ~ a(x - dx, y - dy)
    double dx_px = 0.0;
    double dy_px = 0.0;
    // main correlation peak magnitude over the strongest secondary peak
    // (secondary search excludes the 3x3 torus neighborhood of the main peak)
    double peak_ratio = 1.0;
};

/// Sub-pixel translation between two equally sized images (>= 16x16,
/// non-constant) by phase correlation: raised-cosine apodization, normalized
/// cross-power spectrum, integer peak of the inverse transform, then local
/// upsampled correlation around the integer peak at 1/upsample px resolution
/// (Guizar-Sicairos style matrix DFT over a +-1 px neighborhood).
PhaseCorrelationResult phase_correlate(const Image& a, const Image& b, int upsample = 32);

} // namespace lfscan
