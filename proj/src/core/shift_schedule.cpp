#include "lfscan/core/shift_schedule.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "lfscan/core/errors.hpp"

namespace lfscan {

ShiftSchedule default_lytro_schedule() {
    ShiftSchedule s;
    s.enhancement_factor = 4;
    s.shifts_um = {
        {0.00, 0.00},   {0.00, -3.03},  {0.00, -6.06},  {0.00, -9.09},
        {0.00, -12.12}, {0.00, -15.15}, {0.00, -18.18}, {0.00, -21.21},
        {3.50, -21.21}, {3.50, -18.18}, {3.50, -15.15}, {3.50, -12.12},
        {3.50, -9.09},  {3.50, -6.06},  {3.50, -3.03},  {3.50, 0.00},
    };
    return s;
}

double hex_lattice_distance(const LensletGrid& grid, const Vec2& d) {
    // lattice vectors: (pitch_u*m + offset*p, row_pitch*n) with p = parity(n)
    const double pu = grid.pitch_u_um;
    const double pv = grid.row_pitch_v_um;
    const double off = grid.odd_row_offset_um;
    const int n0 = static_cast<int>(std::floor(d.y / pv));
    double best = std::numeric_limits<double>::infinity();
    for (int n = n0 - 1; n <= n0 + 2; ++n) {
        const double ox = (n % 2 != 0) ? off : 0.0;
        const int m0 = static_cast<int>(std::floor((d.x - ox) / pu));
        for (int m = m0 - 1; m <= m0 + 2; ++m) {
            const Vec2 g{m * pu + ox, n * pv};
            best = std::min(best, (d - g).norm());
        }
    }
    return best;
}

namespace {

// minimum over pairs of the hex-lattice distance between shifted copies
double subset_score(const LensletGrid& grid, const std::vector<Vec2>& shifts,
                    const std::vector<int>& subset) {
    double score = std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < subset.size(); ++a)
        for (size_t b = a + 1; b < subset.size(); ++b)
            score = std::min(score, hex_lattice_distance(grid, shifts[subset[a]] - shifts[subset[b]]));
    return score;
}

void enumerate_subsets(int n, int k, int start, std::vector<int>& cur,
                       const std::function<void(const std::vector<int>&)>& fn) {
    if (static_cast<int>(cur.size()) == k) {
        fn(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        enumerate_subsets(n, k, i + 1, cur, fn);
        cur.pop_back();
    }
}

} // namespace

ShiftSchedule schedule_subset(const ShiftSchedule& schedule, int count) {
    const int n = static_cast<int>(schedule.shifts_um.size());
    if (count != 1 && count != 2 && count != 4 && count != 8 && count != 16)
        throw ConfigError("schedule_subset: count must be one of 1, 2, 4, 8, 16");
    if (count > n)
        throw ConfigError("schedule_subset: count exceeds schedule size");
    ShiftSchedule out;
    out.enhancement_factor = schedule.enhancement_factor;
    if (count == n) {
        out.shifts_um = schedule.shifts_um;
        return out;
    }
    if (count == 1) {
        out.shifts_um = {schedule.shifts_um.front()};
        return out;
    }

    LensletGrid grid; // default pitches; only the lattice metric is used
    grid.rows = grid.cols = 1;
    std::vector<int> best;
    double best_score = -1.0;
    std::vector<int> cur;
    // subsets always contain capture 0 (the reference); enumerate the rest
    enumerate_subsets(n - 1, count - 1, 0, cur, [&](const std::vector<int>& rest) {
        std::vector<int> subset{0};
        for (int i : rest) subset.push_back(i + 1);
        const double score = subset_score(grid, schedule.shifts_um, subset);
        if (score > best_score) { // strict: lexicographic tie-break by enumeration order
            best_score = score;
            best = subset;
        }
    });
    for (int i : best) out.shifts_um.push_back(schedule.shifts_um[i]);
    return out;
}

} // namespace lfscan
