#include "lfscan/sim/scene.hpp"

#include <algorithm>
#include <cmath>

#include "lfscan/core/errors.hpp"
#include "lfscan/core/rng.hpp"

namespace lfscan {

double SceneModel::sample_um(Vec2 pos_um, int v, int u, int ang_rows, int ang_cols) const {
    if (disparity_um_per_step != 0.0) {
        const double du = u - (ang_cols - 1) / 2.0;
        const double dv = v - (ang_rows - 1) / 2.0;
        pos_um.x -= disparity_um_per_step * du;
        pos_um.y -= disparity_um_per_step * dv;
    }
    const double x = (pos_um.x - origin_um.x) / pitch_um;
    const double y = (pos_um.y - origin_um.y) / pitch_um;
    return bilinear_sample(image, x, y);
}

bool SceneModel::covers(Vec2 lo, Vec2 hi) const {
    const double pad = std::abs(disparity_um_per_step) * 4.0; // up to +-3.x angular steps
    return lo.x - pad >= origin_um.x && lo.y - pad >= origin_um.y &&
           hi.x + pad <= origin_um.x + extent_w_um() && hi.y + pad <= origin_um.y + extent_h_um();
}

namespace {

SceneModel alloc_scene(Vec2 origin_um, double w_um, double h_um, double pitch_um,
                       const std::string& kind) {
    if (w_um <= 0 || h_um <= 0 || pitch_um <= 0)
        throw SimulationError("scene: extent and pitch must be positive");
    SceneModel s;
    s.origin_um = origin_um;
    s.pitch_um = pitch_um;
    s.kind = kind;
    const int w = static_cast<int>(std::ceil(w_um / pitch_um)) + 1;
    const int h = static_cast<int>(std::ceil(h_um / pitch_um)) + 1;
    s.image = Image(h, w);
    return s;
}

} // namespace

SceneModel make_constant_scene(double value, Vec2 origin_um, double w_um, double h_um,
                               double pitch_um) {
    SceneModel s = alloc_scene(origin_um, w_um, h_um, pitch_um, "constant");
    for (int y = 0; y < s.image.height(); ++y)
        for (int x = 0; x < s.image.width(); ++x) s.image.at(y, x) = value;
    return s;
}

SceneModel make_ramp_scene(double ax, double ay, double c, Vec2 origin_um, double w_um,
                           double h_um, double pitch_um) {
    SceneModel s = alloc_scene(origin_um, w_um, h_um, pitch_um, "linear_ramp");
    for (int y = 0; y < s.image.height(); ++y) {
        const double py = origin_um.y + y * pitch_um;
        for (int x = 0; x < s.image.width(); ++x) {
            const double px = origin_um.x + x * pitch_um;
            s.image.at(y, x) = ax * px + ay * py + c;
        }
    }
    return s;
}

SceneModel make_test_chart(double max_freq_cycles_per_mm, Vec2 origin_um, double w_um,
                           double h_um, double pitch_um, int n_bands) {
    if (n_bands < 2) throw SimulationError("test chart: need at least 2 bands");
    const double nyquist = 1000.0 / (2.0 * pitch_um); // cycles per mm
    if (max_freq_cycles_per_mm <= 0 || max_freq_cycles_per_mm >= nyquist)
        throw SimulationError("test chart: max frequency must be below the raster Nyquist rate");
    SceneModel s = alloc_scene(origin_um, w_um, h_um, pitch_um, "test_chart");
    const double band_h = h_um / n_bands;
    for (int i = 0; i < n_bands; ++i) {
        ChartBand band;
        band.y0_um = origin_um.y + i * band_h;
        band.y1_um = origin_um.y + (i + 1) * band_h;
        band.cycles_per_mm = max_freq_cycles_per_mm * i / (n_bands - 1);
        s.bands.push_back(band);
    }
    for (int y = 0; y < s.image.height(); ++y) {
        const double py = origin_um.y + y * pitch_um;
        int bi = std::clamp(static_cast<int>((py - origin_um.y) / band_h), 0, n_bands - 1);
        const ChartBand& band = s.bands[bi];
        const double f_per_um = band.cycles_per_mm / 1000.0;
        const double value = 0.5 + 0.5 * std::cos(2.0 * M_PI * f_per_um * (py - band.y0_um));
        for (int x = 0; x < s.image.width(); ++x) s.image.at(y, x) = value;
    }
    return s;
}

SceneModel make_natural_scene(uint64_t seed, Vec2 origin_um, double w_um, double h_um,
                              double pitch_um, int n_blobs) {
    SceneModel s = alloc_scene(origin_um, w_um, h_um, pitch_um, "natural_image");
    const int h = s.image.height(), w = s.image.width();
    Rng rng(derive_seed(seed, 0x5ce9e));

    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            s.image.at(y, x) = 0.15 * (static_cast<double>(x) / w) + 0.1 * (static_cast<double>(y) / h);

    // scatter seeded Gaussian blobs, feature scales from sub-lens to a few lens pitches
    const double min_scale_px = 2.5 / pitch_um * 0.7;
    for (int k = 0; k < n_blobs; ++k) {
        const double cx = rng.uniform() * w;
        const double cy = rng.uniform() * h;
        const double scale = min_scale_px * std::exp(rng.uniform() * std::log(20.0));
        const double sx = scale * (0.6 + 0.8 * rng.uniform());
        const double sy = scale * (0.6 + 0.8 * rng.uniform());
        const double amp = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.3 + 0.7 * rng.uniform());
        const int x0 = std::max(0, static_cast<int>(cx - 4.3 * sx));
        const int x1 = std::min(w - 1, static_cast<int>(cx + 4.3 * sx) + 1);
        const int y0 = std::max(0, static_cast<int>(cy - 4.3 * sy));
        const int y1 = std::min(h - 1, static_cast<int>(cy + 4.3 * sy) + 1);
        for (int y = y0; y <= y1; ++y) {
            const double dy = (y - cy) / sy;
            for (int x = x0; x <= x1; ++x) {
                const double dx = (x - cx) / sx;
                s.image.at(y, x) += amp * std::exp(-0.5 * (dx * dx + dy * dy));
            }
        }
    }
    const double lo = image_min(s.image), hi = image_max(s.image);
    const double span = std::max(hi - lo, 1e-12);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            s.image.at(y, x) = 0.05 + 0.9 * (s.image.at(y, x) - lo) / span;
    return s;
}

} // namespace lfscan
