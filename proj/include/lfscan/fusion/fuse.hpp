#pragma once

#include <vector>

#include "lfscan/core/light_field.hpp"
#include "lfscan/fusion/interpolate.hpp"
#include "lfscan/reg/lf_register.hpp"

namespace lfscan {

/// Pool one perspective's samples from N registered light fields into
/// physical sensor coordinates: capture k's lens-center positions (hex
/// parity preserved) are offset by -shift_k converted to micrometers, since
/// an estimated content shift of +d pixels means the sensor moved +d*pitch
/// and its samples belong at center - d*pitch in the reference frame.
/// Coincident samples are merged by averaging.
ScatteredSampleSet gather_samples(const std::vector<LensletLightField>& lfs,
                                  const std::vector<ShiftEstimate>& shifts,
                                  const LensletGrid& grid, int persp_v, int persp_u);

struct FusionResult {
    LightField light_field;
    Image validity; // shared by all perspectives: sample positions coincide
};

/// Gather + triangulate + interpolate every perspective onto a regular grid
/// enhancement times denser per axis than the lens lattice. The
/// triangulation is built once and shared across perspectives.
FusionResult fuse(const std::vector<LensletLightField>& lfs,
                  const std::vector<ShiftEstimate>& shifts,
                  const LensletGrid& grid, const FusionConfig& cfg);

/// Hex-to-square resampling of a single light field at enhancement 1;
/// exactly fuse() of one capture with zero shift (shared code path).
LightField rectify_to_square(const LensletLightField& lf, int threads = 1);

} // namespace lfscan
