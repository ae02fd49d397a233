#pragma once

#include <cstdint>
#include <vector>

#include "lfscan/core/lenslet_grid.hpp"
#include "lfscan/core/shift_schedule.hpp"
#include "lfscan/sim/scene.hpp"

namespace lfscan {

struct SensorConfig {
    int width_px = 3280;
    int height_px = 3280;
    double pixel_pitch_um = 1.4;
};

/// Smallest sensor that holds the grid footprint plus the schedule's travel.
SensorConfig sensor_for_grid(const LensletGrid& grid, double pixel_pitch_um = 1.4,
                             double margin_um = 30.0);

struct CaptureConfig {
    SensorConfig sensor;
    double psf_sigma_um = 0.0;      // optical blur applied in scene space
    double noise_sigma = 0.0;       // additive Gaussian, fraction of full scale
    double vignette_sigma_um = 0.0; // per-lens falloff; 0 disables (white image then uses pitch/6)
    double actuation_error_um = 0.3;
    uint64_t rng_seed = 0;
    int angular_rows = 7;
    int angular_cols = 7;
    int threads = 1;
};

/// White-scene calibration frame: every lens renders a vignetting blob
/// peaking at its true center; seeded noise added like any capture.
RawCapture render_white_image(const LensletGrid& grid, const CaptureConfig& cfg);

/// One capture under a commanded sensor translation. The sensor moving by
/// +shift makes the scene project at -shift relative to the lens centers, so
/// lens (r, c), perspective (v, u) records the PSF-blurred scene sampled at
/// nominal_center(r, c) - actual_shift, written to the pixel of that angular
/// coordinate (square sub-grid anchored at the rounded center pixel).
/// The seeded actuation error perturbs the commanded shift; noise is added
/// last and the frame is clamped to [0,1].
/// Throws SimulationError when the scene does not cover the shifted footprint.
RawCapture simulate_capture(const SceneModel& scene, const LensletGrid& grid, Vec2 shift_um,
                            const CaptureConfig& cfg, int capture_index = 0,
                            Vec2* actual_shift_out = nullptr);

/// One capture per schedule entry, capture_index 1..N. Deterministic under
/// cfg.rng_seed: each capture derives its own noise stream from its index.
std::vector<RawCapture> simulate_sequence(const SceneModel& scene, const LensletGrid& grid,
                                          const ShiftSchedule& schedule, const CaptureConfig& cfg,
                                          std::vector<Vec2>* actual_shifts_out = nullptr);

/// Scene extent that covers the grid footprint, the schedule travel, and the
/// sampling margin; use when building scenes for a simulation run.
void scene_extent_for(const LensletGrid& grid, const ShiftSchedule& schedule, Vec2& origin_um,
                      double& w_um, double& h_um, double margin_um = 30.0);

} // namespace lfscan
