#pragma once

#include <vector>

#include "lfscan/core/geometry.hpp"
#include "lfscan/core/image.hpp"
#include "lfscan/core/lenslet_grid.hpp"

namespace lfscan {

/// Ordered list of commanded sensor translations (T_u, T_v) in micrometers.
/// The first entry is always (0, 0), the reference capture.
struct ShiftSchedule {
    std::vector<Vec2> shifts_um;
    int enhancement_factor = 4; // shifts are multiples of pitch/enhancement_factor
};

/// The 16-capture schedule for the first-generation Lytro sensor: T_u a
/// multiple of 14/4 = 3.5 um, T_v a multiple of 12.12/4 = 3.03 um.
ShiftSchedule default_lytro_schedule();

/// Pick `count` captures (1, 2, 4, 8 or 16) from the default 16-capture
/// schedule so that the pooled lens positions approximate a uniform
/// sub-lattice: exhaustive search maximizing the minimum pairwise distance
/// between shifted hex-lattice copies, always keeping the (0,0) reference.
/// Ties are broken lexicographically by capture index.
ShiftSchedule schedule_subset(const ShiftSchedule& schedule, int count);

/// Distance from `d` to the nearest vector of the (infinite) hex lattice
/// spanned by the grid's pitches, including the zero vector.
double hex_lattice_distance(const LensletGrid& grid, const Vec2& d);

/// One raw sensor frame plus the translation it was captured under.
struct RawCapture {
    Image image; // values in [0,1]
    Vec2 commanded_shift_um{0.0, 0.0};
    int capture_index = 0;
};

} // namespace lfscan
