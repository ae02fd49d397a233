#include "lfscan/fusion/predicates.hpp"

#include <cmath>

#include <gmpxx.h>

namespace lfscan {

namespace {

// forward-error filter constants, Shewchuk style
constexpr double kEps = 1.1102230246251565e-16;              // 2^-53
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIncircleBound = (10.0 + 96.0 * kEps) * kEps;

constexpr long double kEpsL = 5.42101086242752217e-20L;      // 2^-64
constexpr long double kOrientBoundL = (3.0L + 16.0L * kEpsL) * kEpsL;
constexpr long double kIncircleBoundL = (10.0L + 96.0L * kEpsL) * kEpsL;

template <typename T>
int orient2d_filtered(T ax, T ay, T bx, T by, T cx, T cy, T bound, bool& decided) {
    const T detleft = (ax - cx) * (by - cy);
    const T detright = (ay - cy) * (bx - cx);
    const T det = detleft - detright;
    T detsum;
    if (detleft > 0) {
        if (detright <= 0) { decided = true; return det > 0 ? 1 : (det < 0 ? -1 : 0); }
        detsum = detleft + detright;
    } else if (detleft < 0) {
        if (detright >= 0) { decided = true; return det > 0 ? 1 : (det < 0 ? -1 : 0); }
        detsum = -detleft - detright;
    } else {
        decided = true;
        return det > 0 ? 1 : (det < 0 ? -1 : 0);
    }
    if (std::abs(det) > bound * detsum) {
        decided = true;
        return det > 0 ? 1 : -1;
    }
    decided = false;
    return 0;
}

int orient2d_exact(const Vec2& a, const Vec2& b, const Vec2& c) {
    const mpq_class ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    const mpq_class det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx);
    return sgn(det);
}

template <typename T>
int incircle_filtered(T ax, T ay, T bx, T by, T cx, T cy, T dx, T dy, T bound, bool& decided) {
    const T adx = ax - dx, ady = ay - dy;
    const T bdx = bx - dx, bdy = by - dy;
    const T cdx = cx - dx, cdy = cy - dy;

    const T bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const T cdxady = cdx * ady, adxcdy = adx * cdy;
    const T adxbdy = adx * bdy, bdxady = bdx * ady;
    const T alift = adx * adx + ady * ady;
    const T blift = bdx * bdx + bdy * bdy;
    const T clift = cdx * cdx + cdy * cdy;

    const T det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    const T permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                        (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                        (std::abs(adxbdy) + std::abs(bdxady)) * clift;
    if (std::abs(det) > bound * permanent) {
        decided = true;
        return det > 0 ? 1 : -1;
    }
    decided = false;
    return 0;
}

int incircle_exact(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const mpq_class adx = mpq_class(a.x) - mpq_class(d.x), ady = mpq_class(a.y) - mpq_class(d.y);
    const mpq_class bdx = mpq_class(b.x) - mpq_class(d.x), bdy = mpq_class(b.y) - mpq_class(d.y);
    const mpq_class cdx = mpq_class(c.x) - mpq_class(d.x), cdy = mpq_class(c.y) - mpq_class(d.y);
    const mpq_class det = (adx * adx + ady * ady) * (bdx * cdy - cdx * bdy) +
                          (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy) +
                          (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady);
    return sgn(det);
}

} // namespace

int orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
    bool decided = false;
    int s = orient2d_filtered<double>(a.x, a.y, b.x, b.y, c.x, c.y, kOrientBound, decided);
    if (decided) return s;
    s = orient2d_filtered<long double>(a.x, a.y, b.x, b.y, c.x, c.y, kOrientBoundL, decided);
    if (decided) return s;
    return orient2d_exact(a, b, c);
}

int incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    bool decided = false;
    int s = incircle_filtered<double>(a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y, kIncircleBound, decided);
    if (decided) return s;
    s = incircle_filtered<long double>(a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y, kIncircleBoundL, decided);
    if (decided) return s;
    return incircle_exact(a, b, c, d);
}

} // namespace lfscan
