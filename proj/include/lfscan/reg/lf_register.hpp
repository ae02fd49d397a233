#pragma once

#include <cstdint>
#include <vector>

#include "lfscan/core/geometry.hpp"
#include "lfscan/core/light_field.hpp"

namespace lfscan {

/// Estimated translation between two light fields, in perspective-image
/// pixels (multiply by the spatial pitches for micrometers). Equals the
/// sensor translation divided by the lenslet pitch for micro-scanned pairs.
struct ShiftEstimate {
    double dx_px = 0.0;
    double dy_px = 0.0;
    std::vector<Vec2> per_perspective;  // raw estimate per perspective, index v*ang_cols+u
    std::vector<uint8_t> accepted;      // perspectives whose peak passed the quality gate
    double dispersion = 0.0;            // RMS distance of accepted estimates from their mean
};

struct RegistrationOptions {
    int upsample = 32;             // sub-pixel refinement factor
    double min_peak_ratio = 2.0;   // reject perspectives below this peak quality
    int threads = 1;
};

/// Phase-correlates every corresponding perspective pair and averages the
/// estimates that pass the peak-quality gate (plain mean, accumulated in
/// perspective-index order so the result is thread-count independent).
/// Throws RegistrationError when every perspective is rejected.
ShiftEstimate estimate_lf_shift(const LightField& reference, const LightField& moving,
                                const RegistrationOptions& opts = {});

} // namespace lfscan
