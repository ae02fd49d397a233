#include "lfscan/core/lenslet_grid.hpp"

#include <stdexcept>

namespace lfscan {

Vec2 LensletGrid::nominal_center(int row, int col) const {
    if (row < 0 || row >= rows || col < 0 || col >= cols)
        throw std::out_of_range("LensletGrid::nominal_center: lens index out of range");
    const double parity = (row % 2 != 0) ? odd_row_offset_um : 0.0;
    const Vec2 local{col * pitch_u_um + parity, row * row_pitch_v_um};
    return origin_um + rotate(local, rotation_rad);
}

LensletGrid default_lytro_grid(int rows, int cols) {
    LensletGrid g;
    g.rows = rows;
    g.cols = cols;
    // half-pitch margin keeps lens (0,0) fully on the sensor
    g.origin_um = Vec2{g.pitch_u_um / 2.0, g.row_pitch_v_um / 2.0};
    return g;
}

} // namespace lfscan
