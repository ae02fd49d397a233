#include "lfscan/sim/sensor_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lfscan/core/errors.hpp"
#include "lfscan/core/parallel.hpp"
#include "lfscan/core/rng.hpp"

namespace lfscan {

namespace {

// pixel (py, px) center in physical coordinates
inline Vec2 pixel_center_um(int px, int py, double pitch) {
    return {(px + 0.5) * pitch, (py + 0.5) * pitch};
}

// physical position -> fractional pixel coordinates
inline Vec2 um_to_px(const Vec2& p, double pitch) {
    return {p.x / pitch - 0.5, p.y / pitch - 0.5};
}

struct LensHit {
    int row = -1;
    int col = -1;
    Vec2 center_um;
    Vec2 center_px;
    int au = 0; // clamped angular offsets
    int av = 0;
};

// assign a pixel to the lens minimizing how far its angular offset falls
// outside the angular sub-grid, tie-broken by center distance then index;
// keeps decode's bilinear reads inside one lens's own pixels
class LensAssigner {
public:
    LensAssigner(const LensletGrid& grid, const CaptureConfig& cfg)
        : grid_(grid), pitch_px_(cfg.sensor.pixel_pitch_um),
          au_max_((cfg.angular_cols - 1) / 2), av_max_((cfg.angular_rows - 1) / 2) {}

    LensHit assign(int px, int py) const {
        const Vec2 pos = pixel_center_um(px, py, pitch_px_);
        const Vec2 local = rotate(pos - grid_.origin_um, -grid_.rotation_rad);
        const int r0 = static_cast<int>(std::lround(local.y / grid_.row_pitch_v_um));
        LensHit best;
        double best_clamp = std::numeric_limits<double>::infinity();
        double best_d2 = std::numeric_limits<double>::infinity();
        for (int r = std::max(0, r0 - 1); r <= std::min(grid_.rows - 1, r0 + 1); ++r) {
            const double off = (r % 2 != 0) ? grid_.odd_row_offset_um : 0.0;
            const int c0 = static_cast<int>(std::lround((local.x - off) / grid_.pitch_u_um));
            for (int c = std::max(0, c0 - 1); c <= std::min(grid_.cols - 1, c0 + 1); ++c) {
                const Vec2 center = grid_.nominal_center(r, c);
                const Vec2 center_px = um_to_px(center, pitch_px_);
                const double ax = px - std::round(center_px.x);
                const double ay = py - std::round(center_px.y);
                const double clamp_dist =
                    std::max({0.0, std::abs(ax) - au_max_, std::abs(ay) - av_max_});
                const double d2 = (pixel_center_um(px, py, pitch_px_) - center).norm2();
                if (clamp_dist < best_clamp - 1e-12 ||
                    (std::abs(clamp_dist - best_clamp) <= 1e-12 && d2 < best_d2)) {
                    best_clamp = clamp_dist;
                    best_d2 = d2;
                    best.row = r;
                    best.col = c;
                    best.center_um = center;
                    best.center_px = center_px;
                    best.au = static_cast<int>(std::clamp(ax, -double(au_max_), double(au_max_)));
                    best.av = static_cast<int>(std::clamp(ay, -double(av_max_), double(av_max_)));
                }
            }
        }
        return best;
    }

    int au_max() const { return au_max_; }
    int av_max() const { return av_max_; }

private:
    const LensletGrid& grid_;
    double pitch_px_;
    int au_max_;
    int av_max_;
};

void validate_config(const LensletGrid& grid, const CaptureConfig& cfg) {
    if (!grid.valid()) throw SimulationError("simulate: invalid lenslet grid");
    if (cfg.psf_sigma_um < 0 || cfg.noise_sigma < 0 || cfg.vignette_sigma_um < 0 ||
        cfg.actuation_error_um < 0)
        throw SimulationError("simulate: sigmas must be >= 0");
    if (cfg.sensor.width_px <= 0 || cfg.sensor.height_px <= 0 || cfg.sensor.pixel_pitch_um <= 0)
        throw SimulationError("simulate: invalid sensor config");
    if (cfg.angular_rows < 1 || cfg.angular_cols < 1 || cfg.angular_rows % 2 == 0 ||
        cfg.angular_cols % 2 == 0)
        throw SimulationError("simulate: angular size must be odd and positive");
    const double max_offset_um =
        std::hypot((cfg.angular_cols - 1) / 2.0, (cfg.angular_rows - 1) / 2.0) *
        cfg.sensor.pixel_pitch_um;
    if (max_offset_um > grid.pitch_u_um / 2.0 + 1e-9)
        throw SimulationError("simulate: angular sub-grid exceeds the lens radius");
}

void add_noise_and_clamp(Image& im, double noise_sigma, uint64_t capture_seed) {
    if (noise_sigma > 0.0) {
        for (int y = 0; y < im.height(); ++y) {
            Rng row_rng(derive_seed(capture_seed, 1 + static_cast<uint64_t>(y)));
            for (int x = 0; x < im.width(); ++x)
                im.at(y, x) += noise_sigma * row_rng.normal();
        }
    }
    clamp01(im);
}

} // namespace

SensorConfig sensor_for_grid(const LensletGrid& grid, double pixel_pitch_um, double margin_um) {
    SensorConfig s;
    s.pixel_pitch_um = pixel_pitch_um;
    double max_x = 0.0, max_y = 0.0;
    for (int r : {0, grid.rows - 1}) {
        for (int c : {0, grid.cols - 1}) {
            const Vec2 p = grid.nominal_center(r, c);
            max_x = std::max(max_x, p.x);
            max_y = std::max(max_y, p.y);
        }
    }
    max_x += grid.odd_row_offset_um;
    s.width_px = static_cast<int>(std::ceil((max_x + margin_um) / pixel_pitch_um));
    s.height_px = static_cast<int>(std::ceil((max_y + margin_um) / pixel_pitch_um));
    return s;
}

void scene_extent_for(const LensletGrid& grid, const ShiftSchedule& schedule, Vec2& origin_um,
                      double& w_um, double& h_um, double margin_um) {
    double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
    double hi_x = -lo_x, hi_y = -lo_y;
    for (int r : {0, grid.rows - 1}) {
        for (int c : {0, grid.cols - 1}) {
            const Vec2 p = grid.nominal_center(r, c);
            lo_x = std::min(lo_x, p.x);
            hi_x = std::max(hi_x, p.x + grid.odd_row_offset_um);
            lo_y = std::min(lo_y, p.y);
            hi_y = std::max(hi_y, p.y);
        }
    }
    double shift_min_x = 0.0, shift_max_x = 0.0, shift_min_y = 0.0, shift_max_y = 0.0;
    for (const Vec2& s : schedule.shifts_um) {
        shift_min_x = std::min(shift_min_x, s.x);
        shift_max_x = std::max(shift_max_x, s.x);
        shift_min_y = std::min(shift_min_y, s.y);
        shift_max_y = std::max(shift_max_y, s.y);
    }
    // sampling positions are centers - shift
    lo_x -= shift_max_x;
    hi_x -= shift_min_x;
    lo_y -= shift_max_y;
    hi_y -= shift_min_y;
    origin_um = Vec2{lo_x - margin_um, lo_y - margin_um};
    w_um = hi_x - lo_x + 2.0 * margin_um;
    h_um = hi_y - lo_y + 2.0 * margin_um;
}

RawCapture render_white_image(const LensletGrid& grid, const CaptureConfig& cfg) {
    validate_config(grid, cfg);
    const double sigma = cfg.vignette_sigma_um > 0 ? cfg.vignette_sigma_um : grid.pitch_u_um / 6.0;
    const double pitch = cfg.sensor.pixel_pitch_um;

    RawCapture cap;
    cap.capture_index = 0;
    cap.image = Image(cfg.sensor.height_px, cfg.sensor.width_px, 0.0);
    Image& im = cap.image;
    parallel_for(cfg.sensor.height_px, cfg.threads, [&](int py) {
        for (int px = 0; px < cfg.sensor.width_px; ++px) {
            const Vec2 pos = pixel_center_um(px, py, pitch);
            const Vec2 local = rotate(pos - grid.origin_um, -grid.rotation_rad);
            const int r0 = static_cast<int>(std::lround(local.y / grid.row_pitch_v_um));
            double v = 0.0;
            for (int r = std::max(0, r0 - 2); r <= std::min(grid.rows - 1, r0 + 2); ++r) {
                const double off = (r % 2 != 0) ? grid.odd_row_offset_um : 0.0;
                const int c0 = static_cast<int>(std::lround((local.x - off) / grid.pitch_u_um));
                for (int c = std::max(0, c0 - 2); c <= std::min(grid.cols - 1, c0 + 2); ++c) {
                    const double d2 = (pos - grid.nominal_center(r, c)).norm2();
                    v += std::exp(-0.5 * d2 / (sigma * sigma));
                }
            }
            im.at(py, px) = v;
        }
    });
    add_noise_and_clamp(im, cfg.noise_sigma, derive_seed(cfg.rng_seed, 0));
    return cap;
}

RawCapture simulate_capture(const SceneModel& scene, const LensletGrid& grid, Vec2 shift_um,
                            const CaptureConfig& cfg, int capture_index, Vec2* actual_shift_out) {
    validate_config(grid, cfg);

    const uint64_t capture_seed = derive_seed(cfg.rng_seed, static_cast<uint64_t>(capture_index));
    Vec2 actual_shift = shift_um;
    if (cfg.actuation_error_um > 0.0) {
        Rng rng(derive_seed(capture_seed, 0));
        actual_shift.x += cfg.actuation_error_um * rng.normal();
        actual_shift.y += cfg.actuation_error_um * rng.normal();
    }
    if (actual_shift_out) *actual_shift_out = actual_shift;

    // sampled positions are lens centers - actual_shift; require coverage
    {
        double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
        double hi_x = -lo_x, hi_y = -lo_y;
        for (int r : {0, grid.rows - 1}) {
            for (int c : {0, grid.cols - 1}) {
                const Vec2 p = grid.nominal_center(r, c) - actual_shift;
                lo_x = std::min(lo_x, p.x);
                hi_x = std::max(hi_x, p.x + grid.odd_row_offset_um);
                lo_y = std::min(lo_y, p.y);
                hi_y = std::max(hi_y, p.y);
            }
        }
        if (!scene.covers(Vec2{lo_x, lo_y}, Vec2{hi_x, hi_y}))
            throw SimulationError("simulate: scene does not cover the shifted grid footprint");
    }

    const SceneModel* scene_ptr = &scene;
    SceneModel blurred;
    if (cfg.psf_sigma_um > 0.0) {
        blurred = scene;
        blurred.image = gaussian_blur(scene.image, cfg.psf_sigma_um / scene.pitch_um);
        scene_ptr = &blurred;
    }

    const LensAssigner assigner(grid, cfg);
    const double vignette_s2 = cfg.vignette_sigma_um * cfg.vignette_sigma_um;

    RawCapture cap;
    cap.capture_index = capture_index;
    cap.commanded_shift_um = shift_um;
    cap.image = Image(cfg.sensor.height_px, cfg.sensor.width_px, 0.0);
    Image& im = cap.image;
    parallel_for(cfg.sensor.height_px, cfg.threads, [&](int py) {
        for (int px = 0; px < cfg.sensor.width_px; ++px) {
            const LensHit hit = assigner.assign(px, py);
            if (hit.row < 0) continue;
            const int v = hit.av + assigner.av_max();
            const int u = hit.au + assigner.au_max();
            double value = scene_ptr->sample_um(hit.center_um - actual_shift, v, u,
                                                cfg.angular_rows, cfg.angular_cols);
            if (vignette_s2 > 0.0) {
                const double d2 =
                    (pixel_center_um(px, py, cfg.sensor.pixel_pitch_um) - hit.center_um).norm2();
                value *= std::exp(-0.5 * d2 / vignette_s2);
            }
            im.at(py, px) = value;
        }
    });
    add_noise_and_clamp(im, cfg.noise_sigma, capture_seed);
    return cap;
}

std::vector<RawCapture> simulate_sequence(const SceneModel& scene, const LensletGrid& grid,
                                          const ShiftSchedule& schedule, const CaptureConfig& cfg,
                                          std::vector<Vec2>* actual_shifts_out) {
    std::vector<RawCapture> captures;
    captures.reserve(schedule.shifts_um.size());
    if (actual_shifts_out) actual_shifts_out->clear();

    // blur once; each capture then sees psf_sigma 0, same code path and result
    const SceneModel* scene_ptr = &scene;
    SceneModel blurred;
    CaptureConfig per_capture = cfg;
    if (cfg.psf_sigma_um > 0.0) {
        blurred = scene;
        blurred.image = gaussian_blur(scene.image, cfg.psf_sigma_um / scene.pitch_um);
        scene_ptr = &blurred;
        per_capture.psf_sigma_um = 0.0;
    }
    for (size_t k = 0; k < schedule.shifts_um.size(); ++k) {
        Vec2 actual;
        captures.push_back(simulate_capture(*scene_ptr, grid, schedule.shifts_um[k], per_capture,
                                            static_cast<int>(k) + 1, &actual));
        if (actual_shifts_out) actual_shifts_out->push_back(actual);
    }
    return captures;
}

} // namespace lfscan
