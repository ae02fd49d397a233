#pragma once

#include <vector>

#include "lfscan/core/geometry.hpp"

namespace lfscan {

/// Hexagonal micro-lens layout. Distances in micrometers on the sensor plane.
///
/// Nominal lens centers form a hex lattice: row r is shifted horizontally by
/// odd_row_offset_um when r is odd, rows are row_pitch_v_um apart, and the
/// whole lattice is rotated by rotation_rad about the origin.
struct LensletGrid {
    double pitch_u_um = 14.0;       // center distance within a row
    double row_pitch_v_um = 12.12;  // vertical distance between rows
    double odd_row_offset_um = 7.0; // horizontal offset of odd rows (pitch_u/2 for hex packing)
    double rotation_rad = 0.0;
    Vec2 origin_um{0.0, 0.0};       // center of lens (0,0)
    int rows = 0;
    int cols = 0;

    // Optional measured centers in pixel coordinates, rows*cols entries in
    // row-major (row, col) order. NaN entries mean "not observed, use nominal".
    std::vector<Vec2> centers_px;

    /// Nominal physical center of lens (row, col): parity offset applied to
    /// odd rows, rotation applied last. Throws std::out_of_range.
    Vec2 nominal_center(int row, int col) const;

    bool valid() const { return pitch_u_um > 0.0 && row_pitch_v_um > 0.0 && rows > 0 && cols > 0; }
};

/// Default first-generation Lytro geometry for a given lens-count footprint.
LensletGrid default_lytro_grid(int rows = 378, int cols = 328);

} // namespace lfscan
