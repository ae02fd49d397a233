#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lfscan/core/geometry.hpp"
#include "lfscan/core/image.hpp"

namespace lfscan {

/// One frequency band of the bar target: rows y0_um <= y < y1_um carry
/// horizontal bars at the given spatial frequency.
struct ChartBand {
    double y0_um = 0.0;
    double y1_um = 0.0;
    double cycles_per_mm = 0.0;
};

/// Ground-truth scene on the sensor plane, stored as a fine raster covering
/// [origin, origin + extent]. A fronto-parallel Lambertian plane shows every
/// perspective the same image; optional disparity translates the scene
/// proportionally to the angular offset from the center perspective.
struct SceneModel {
    Image image;                    // fine raster, values in [0,1]
    Vec2 origin_um{0.0, 0.0};       // physical position of raster pixel (0,0)
    double pitch_um = 0.7;          // raster spacing
    std::string kind;               // test_chart | natural_image | constant | linear_ramp
    std::vector<ChartBand> bands;   // test_chart frequency-vs-position mapping
    double disparity_um_per_step = 0.0;

    double extent_w_um() const { return (image.width() - 1) * pitch_um; }
    double extent_h_um() const { return (image.height() - 1) * pitch_um; }

    /// Bilinear sample at a physical position for perspective (v, u) of an
    /// ang_rows x ang_cols decode; disparity shifts the lookup by
    /// disparity_um_per_step * (angular offset from center).
    double sample_um(Vec2 pos_um, int v = 0, int u = 0, int ang_rows = 1, int ang_cols = 1) const;

    /// True when every position in [lo, hi] falls inside the raster.
    bool covers(Vec2 lo, Vec2 hi) const;
};

SceneModel make_constant_scene(double value, Vec2 origin_um, double w_um, double h_um,
                               double pitch_um = 0.7);

/// f(x, y) = ax*x + ay*y + c with x, y in micrometers (absolute sensor coords).
SceneModel make_ramp_scene(double ax, double ay, double c, Vec2 origin_um, double w_um,
                           double h_um, double pitch_um = 0.7);

/// Horizontal bars whose frequency steps up linearly with vertical position:
/// n_bands equal-height bands, band i at max_freq_cycles_per_mm * i/(n_bands-1)
/// (band 0 is constant). Throws SimulationError when the top frequency is not
/// below the raster Nyquist rate.
SceneModel make_test_chart(double max_freq_cycles_per_mm, Vec2 origin_um, double w_um,
                           double h_um, double pitch_um = 0.7, int n_bands = 30);

/// Smooth, non-periodic texture: seeded sum of Gaussian blobs over a gentle
/// gradient, normalized to [0.05, 0.95]. Good phase-correlation fodder.
SceneModel make_natural_scene(uint64_t seed, Vec2 origin_um, double w_um, double h_um,
                              double pitch_um = 0.7, int n_blobs = 220);

} // namespace lfscan
