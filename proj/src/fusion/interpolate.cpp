#include "lfscan/fusion/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lfscan/core/errors.hpp"

namespace lfscan {

void merge_duplicate_points(ScatteredSampleSet& samples, double tol_um) {
    const size_t n = samples.points_um.size();
    if (samples.values.size() != n)
        throw FusionError("scattered samples: points/values length mismatch");
    if (n == 0) return;

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (samples.points_um[a].x != samples.points_um[b].x)
            return samples.points_um[a].x < samples.points_um[b].x;
        return samples.points_um[a].y < samples.points_um[b].y;
    });

    // group along x, then resolve within the sliding window
    std::vector<int> group(n, -1);
    std::vector<Vec2> merged_pts;
    std::vector<double> merged_sum;
    std::vector<int> merged_count;
    std::vector<int> rep_of; // representative original index per group, for stable order
    for (size_t k = 0; k < n; ++k) {
        const int i = order[k];
        const Vec2 p = samples.points_um[i];
        int found = -1;
        for (size_t j = k; j-- > 0;) {
            const int o = order[j];
            if (p.x - samples.points_um[o].x > tol_um) break;
            if (std::abs(p.y - samples.points_um[o].y) <= tol_um &&
                std::abs(p.x - samples.points_um[o].x) <= tol_um) {
                found = group[o];
                break;
            }
        }
        if (found < 0) {
            found = static_cast<int>(merged_pts.size());
            merged_pts.push_back(p);
            merged_sum.push_back(0.0);
            merged_count.push_back(0);
            rep_of.push_back(i);
        }
        group[i] = found;
        merged_sum[found] += samples.values[i];
        merged_count[found] += 1;
        rep_of[found] = std::min(rep_of[found], i);
    }
    if (merged_pts.size() == n) return; // nothing merged

    std::vector<int> group_order(merged_pts.size());
    std::iota(group_order.begin(), group_order.end(), 0);
    std::sort(group_order.begin(), group_order.end(),
              [&](int a, int b) { return rep_of[a] < rep_of[b]; });
    ScatteredSampleSet out;
    out.persp_v = samples.persp_v;
    out.persp_u = samples.persp_u;
    for (int g : group_order) {
        out.points_um.push_back(merged_pts[g]);
        out.values.push_back(merged_sum[g] / merged_count[g]);
    }
    samples = std::move(out);
}

PointGridIndex::PointGridIndex(const std::vector<Vec2>& pts) : pts_(pts) {
    double x1 = 0, y1 = 0;
    x0_ = y0_ = 0;
    if (!pts.empty()) {
        x0_ = x1 = pts[0].x;
        y0_ = y1 = pts[0].y;
        for (const Vec2& p : pts) {
            x0_ = std::min(x0_, p.x);
            x1 = std::max(x1, p.x);
            y0_ = std::min(y0_, p.y);
            y1 = std::max(y1, p.y);
        }
    }
    const double span = std::max({x1 - x0_, y1 - y0_, 1e-12});
    const int target = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(pts.size()))));
    cell_ = span / target;
    nx_ = static_cast<int>((x1 - x0_) / cell_) + 1;
    ny_ = static_cast<int>((y1 - y0_) / cell_) + 1;
    cells_.resize(static_cast<size_t>(nx_) * ny_);
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        const int cx = static_cast<int>((pts[i].x - x0_) / cell_);
        const int cy = static_cast<int>((pts[i].y - y0_) / cell_);
        cells_[static_cast<size_t>(cy) * nx_ + cx].push_back(i);
    }
}

int PointGridIndex::nearest(const Vec2& q) const {
    if (pts_.empty()) return -1;
    const int cx = std::clamp(static_cast<int>((q.x - x0_) / cell_), 0, nx_ - 1);
    const int cy = std::clamp(static_cast<int>((q.y - y0_) / cell_), 0, ny_ - 1);
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int ring = 0; ring < std::max(nx_, ny_) + 1; ++ring) {
        bool any_cell = false;
        for (int dy = -ring; dy <= ring; ++dy) {
            for (int dx = -ring; dx <= ring; ++dx) {
                if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
                const int gx = cx + dx, gy = cy + dy;
                if (gx < 0 || gx >= nx_ || gy < 0 || gy >= ny_) continue;
                any_cell = true;
                for (int i : cells_[static_cast<size_t>(gy) * nx_ + gx]) {
                    const double d2 = (pts_[i] - q).norm2();
                    if (d2 < best_d2 || (d2 == best_d2 && i < best)) {
                        best_d2 = d2;
                        best = i;
                    }
                }
            }
        }
        // one extra ring after the first hit covers diagonal cases
        if (best >= 0 && ring > 0 && (ring - 1) * cell_ > std::sqrt(best_d2)) break;
        if (!any_cell && best >= 0) break;
    }
    return best;
}

GridInterpolator::GridInterpolator(const Triangulation& tri, const GridSpec& grid,
                                   Extrapolation extrapolation)
    : grid_(grid), validity_(grid.rows, grid.cols, 0.0) {
    if (grid.rows <= 0 || grid.cols <= 0 || grid.pitch_x_um <= 0.0 || grid.pitch_y_um <= 0.0)
        throw ConfigError("grid interpolator: invalid output grid");
    plan_.resize(static_cast<size_t>(grid.rows) * grid.cols);

    std::optional<PointGridIndex> nearest_index;
    if (extrapolation == Extrapolation::kNearest) nearest_index.emplace(tri.points());

    for (int r = 0; r < grid.rows; ++r) {
        int hint = -1;
        for (int c = 0; c < grid.cols; ++c) {
            const Vec2 p{grid.origin_um.x + c * grid.pitch_x_um,
                         grid.origin_um.y + r * grid.pitch_y_um};
            const Triangulation::Location loc = tri.locate(p, hint);
            hint = loc.tri;
            PixelPlan& plan = plan_[static_cast<size_t>(r) * grid.cols + c];
            if (loc.inside) {
                for (int i = 0; i < 3; ++i) {
                    plan.idx[i] = loc.verts[i];
                    plan.w[i] = loc.bary[i];
                }
                validity_.at(r, c) = 1.0;
            } else if (extrapolation == Extrapolation::kNearest) {
                plan.idx[0] = nearest_index->nearest(p);
                plan.w[0] = 1.0;
            }
        }
    }
}

Image GridInterpolator::apply(const std::vector<double>& values) const {
    Image out(grid_.rows, grid_.cols, 0.0);
    for (int r = 0; r < grid_.rows; ++r) {
        for (int c = 0; c < grid_.cols; ++c) {
            const PixelPlan& plan = plan_[static_cast<size_t>(r) * grid_.cols + c];
            if (plan.idx[0] < 0) continue; // invalid, left at 0 with validity 0
            double v = values[plan.idx[0]] * plan.w[0];
            if (plan.idx[1] >= 0)
                v += values[plan.idx[1]] * plan.w[1] + values[plan.idx[2]] * plan.w[2];
            out.at(r, c) = v;
        }
    }
    return out;
}

Image interpolate_to_grid(const ScatteredSampleSet& samples, const FusionConfig& cfg) {
    if (!cfg.output_grid)
        throw ConfigError("interpolate_to_grid: output_grid must be specified");
    ScatteredSampleSet merged = samples;
    merge_duplicate_points(merged);
    const Triangulation tri = Triangulation::build(merged.points_um);
    const GridInterpolator interp(tri, *cfg.output_grid, cfg.extrapolation);
    return interp.apply(merged.values);
}

} // namespace lfscan
