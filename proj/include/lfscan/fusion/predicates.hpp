#pragma once

#include "lfscan/core/geometry.hpp"

namespace lfscan {

/// Sign of the signed area of triangle (a, b, c):
/// +1 counterclockwise, -1 clockwise, 0 collinear. Exact.
int orient2d(const Vec2& a, const Vec2& b, const Vec2& c);

/// Position of d relative to the circumcircle of the counterclockwise
/// triangle (a, b, c): +1 strictly inside, -1 strictly outside, 0 on the
/// circle. Exact.
///
/// Both predicates evaluate in double with a forward-error filter, retry in
/// long double, and fall back to exact rational arithmetic when still
/// undecided. Micro-shift lattices are full of exactly cocircular quadruples,
/// so the exact path is routinely taken, not just a safety net.
int incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

} // namespace lfscan
