#pragma once

#include <optional>
#include <vector>

#include "lfscan/core/geometry.hpp"
#include "lfscan/core/image.hpp"
#include "lfscan/fusion/delaunay.hpp"

namespace lfscan {

/// Scattered samples of one perspective in physical sensor coordinates.
struct ScatteredSampleSet {
    std::vector<Vec2> points_um;
    std::vector<double> values;
    int persp_v = 0;
    int persp_u = 0;
};

/// Merge points closer than tol (exact duplicates and numerically coincident
/// samples) by averaging their values. Keeps first-occurrence order.
void merge_duplicate_points(ScatteredSampleSet& samples, double tol_um = 1e-9);

/// Regular output grid: sample (r, c) sits at
/// origin_um + (c * pitch_x_um, r * pitch_y_um).
struct GridSpec {
    int rows = 0;
    int cols = 0;
    double pitch_x_um = 0.0;
    double pitch_y_um = 0.0;
    Vec2 origin_um{0.0, 0.0};
};

enum class Extrapolation { kNearest, kNone };

struct FusionConfig {
    int enhancement = 4;                 // output density factor per axis
    std::optional<GridSpec> output_grid; // derived from the input when absent
    Extrapolation extrapolation = Extrapolation::kNearest;
    int threads = 1;
};

/// Nearest-point queries over a uniform bucket grid.
class PointGridIndex {
public:
    explicit PointGridIndex(const std::vector<Vec2>& pts);
    int nearest(const Vec2& q) const;

private:
    const std::vector<Vec2>& pts_;
    std::vector<std::vector<int>> cells_;
    int nx_ = 0, ny_ = 0;
    double x0_ = 0, y0_ = 0, cell_ = 1.0;
};

/// Precomputed barycentric-linear interpolation of a triangulated point set
/// onto a regular grid. The triangulation is built once; apply() maps any
/// value vector (aligned with the triangulated points) to an output image,
/// so fusing 49 perspectives shares one geometric plan.
class GridInterpolator {
public:
    GridInterpolator(const Triangulation& tri, const GridSpec& grid,
                     Extrapolation extrapolation);

    /// values.size() must equal the number of triangulated points.
    Image apply(const std::vector<double>& values) const;

    /// 1 where the grid point was inside the convex hull, else 0.
    const Image& validity() const { return validity_; }
    const GridSpec& grid() const { return grid_; }

private:
    struct PixelPlan {
        int idx[3] = {-1, -1, -1}; // idx[1] < 0: nearest-sample fill from idx[0]; idx[0] < 0: invalid
        double w[3] = {0.0, 0.0, 0.0};
    };
    GridSpec grid_;
    std::vector<PixelPlan> plan_;
    Image validity_;
};

/// One-shot convenience: triangulate + interpolate one sample set.
/// cfg.output_grid must be set. Throws on degenerate geometry.
Image interpolate_to_grid(const ScatteredSampleSet& samples, const FusionConfig& cfg);

} // namespace lfscan
