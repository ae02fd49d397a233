#pragma once

#include <vector>

#include "lfscan/core/geometry.hpp"
#include "lfscan/core/image.hpp"
#include "lfscan/core/lenslet_grid.hpp"

namespace lfscan {

/// 4D light field on a regular spatial grid: one spatial image per angular
/// coordinate (v, u). Spatial sample (y, x) of any perspective sits at
/// physical position origin_um + (x * pitch_x_um, y * pitch_y_um).
struct LightField {
    std::vector<Image> data; // ang_rows * ang_cols images, index v * ang_cols + u
    int ang_rows = 0;
    int ang_cols = 0;
    int spat_rows = 0;
    int spat_cols = 0;
    double pitch_x_um = 14.0;
    double pitch_y_um = 12.12;
    Vec2 origin_um{0.0, 0.0};

    LightField() = default;
    LightField(int ang_rows_, int ang_cols_, int spat_rows_, int spat_cols_)
        : data(static_cast<size_t>(ang_rows_) * ang_cols_, Image(spat_rows_, spat_cols_)),
          ang_rows(ang_rows_), ang_cols(ang_cols_),
          spat_rows(spat_rows_), spat_cols(spat_cols_) {}

    Image& perspective(int v, int u) { return data[static_cast<size_t>(v) * ang_cols + u]; }
    const Image& perspective(int v, int u) const {
        return data[static_cast<size_t>(v) * ang_cols + u];
    }

    int num_perspectives() const { return ang_rows * ang_cols; }
};

/// Light field still on the lenslet lattice: perspective images are indexed
/// by lens (row, col) and live at the hexagonal centers described by `grid`.
/// This is what fusion consumes; LightField is the square-grid resample.
struct LensletLightField {
    std::vector<Image> data; // ang_rows * ang_cols images of size grid.rows x grid.cols
    int ang_rows = 0;
    int ang_cols = 0;
    LensletGrid grid;

    Image& perspective(int v, int u) { return data[static_cast<size_t>(v) * ang_cols + u]; }
    const Image& perspective(int v, int u) const {
        return data[static_cast<size_t>(v) * ang_cols + u];
    }
};

} // namespace lfscan
