#pragma once

#include <vector>

#include "lfscan/core/lenslet_grid.hpp"
#include "lfscan/core/light_field.hpp"
#include "lfscan/core/shift_schedule.hpp"

namespace lfscan {

struct CenterEstimate {
    Vec2 position_px;        // sub-pixel center
    double peak_value = 0.0;
    int row = -1;            // lens index, filled by fit_grid
    int col = -1;
};

/// Micro-lens centers from a white image: local maxima above an adaptive
/// threshold, merged when closer than half a pitch, refined by an iterated
/// intensity centroid (background-subtracted window of radius pitch/2).
/// expected_pitch_px must be within ~20% of the true pitch.
/// Throws CalibrationError with fewer than 4 detections.
std::vector<CenterEstimate> detect_centers(const RawCapture& white, double expected_pitch_px);

/// Least-squares hex lattice through detected centers. Linear fit of
/// origin + (col + parity/2) * u_vec + row * v_vec after rotation-aware
/// row/column association; two association/fit rounds. Returns the grid in
/// micrometers (via pixel_pitch_um) with centers_px populated (NaN where a
/// lens went undetected) and assigns row/col on the inputs.
/// Throws CalibrationError on degenerate span or residual RMS > pitch/4.
LensletGrid fit_grid(std::vector<CenterEstimate>& centers, double pixel_pitch_um);

struct DecodeOptions {
    int angular_rows = 7;
    int angular_cols = 7;
    double pixel_pitch_um = 1.4;
    int threads = 1;
};

/// Per-lens extraction: perspective (v, u) of lens (r, c) is the raw image
/// bilinearly sampled at center + (u - uc, v - vc) pixels. Uses measured
/// centers_px when present, otherwise the nominal lattice.
/// Throws ConfigError when the angular offsets exceed the lens radius.
LensletLightField decode_lenslet(const RawCapture& raw, const LensletGrid& grid,
                                 const DecodeOptions& opts = {});

/// Full decode: per-lens extraction plus hex-to-square resampling onto a
/// (grid.rows x grid.cols) regular grid via the fusion interpolator.
LightField decode(const RawCapture& raw, const LensletGrid& grid, const DecodeOptions& opts = {});

} // namespace lfscan
