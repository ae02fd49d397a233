#include "lfscan/fusion/fuse.hpp"

#include <cmath>

#include "lfscan/core/errors.hpp"
#include "lfscan/core/parallel.hpp"
#include "lfscan/fusion/delaunay.hpp"

namespace lfscan {

namespace {

struct SampleSource {
    int lf;
    int row;
    int col;
};

void check_inputs(const std::vector<LensletLightField>& lfs,
                  const std::vector<ShiftEstimate>& shifts, const LensletGrid& grid) {
    if (lfs.empty()) throw FusionError("fuse: no light fields");
    if (shifts.size() != lfs.size())
        throw FusionError("fuse: one shift estimate per light field required");
    for (const LensletLightField& lf : lfs) {
        if (lf.ang_rows != lfs[0].ang_rows || lf.ang_cols != lfs[0].ang_cols)
            throw FusionError("fuse: angular sizes differ");
        if (lf.grid.rows != grid.rows || lf.grid.cols != grid.cols)
            throw FusionError("fuse: lens grid sizes differ");
    }
}

std::vector<Vec2> pooled_positions(const std::vector<LensletLightField>& lfs,
                                   const std::vector<ShiftEstimate>& shifts,
                                   const LensletGrid& grid,
                                   std::vector<SampleSource>& sources) {
    std::vector<Vec2> pts;
    pts.reserve(lfs.size() * static_cast<size_t>(grid.rows) * grid.cols);
    sources.clear();
    sources.reserve(pts.capacity());
    for (size_t k = 0; k < lfs.size(); ++k) {
        const Vec2 offset{shifts[k].dx_px * grid.pitch_u_um, shifts[k].dy_px * grid.row_pitch_v_um};
        for (int r = 0; r < grid.rows; ++r) {
            for (int c = 0; c < grid.cols; ++c) {
                pts.push_back(grid.nominal_center(r, c) - offset);
                sources.push_back({static_cast<int>(k), r, c});
            }
        }
    }
    return pts;
}

// merge groups of coincident positions (tolerance 1e-9 um), first-occurrence order
void merge_positions(const std::vector<Vec2>& pts, std::vector<Vec2>& merged,
                     std::vector<std::vector<int>>& groups) {
    ScatteredSampleSet tmp;
    tmp.points_um = pts;
    tmp.values.assign(pts.size(), 0.0);
    merge_duplicate_points(tmp);
    merged = tmp.points_um;
    if (merged.size() == pts.size()) {
        groups.resize(pts.size());
        for (size_t i = 0; i < pts.size(); ++i) groups[i] = {static_cast<int>(i)};
        return;
    }
    // coincidences exist: map each original sample to its merged position
    groups.assign(merged.size(), {});
    const PointGridIndex index(merged);
    for (size_t i = 0; i < pts.size(); ++i) {
        const int g = index.nearest(pts[i]);
        groups[g].push_back(static_cast<int>(i));
    }
}

} // namespace

ScatteredSampleSet gather_samples(const std::vector<LensletLightField>& lfs,
                                  const std::vector<ShiftEstimate>& shifts,
                                  const LensletGrid& grid, int persp_v, int persp_u) {
    check_inputs(lfs, shifts, grid);
    ScatteredSampleSet set;
    set.persp_v = persp_v;
    set.persp_u = persp_u;
    std::vector<SampleSource> sources;
    set.points_um = pooled_positions(lfs, shifts, grid, sources);
    set.values.reserve(set.points_um.size());
    for (const SampleSource& s : sources)
        set.values.push_back(lfs[s.lf].perspective(persp_v, persp_u).at(s.row, s.col));
    merge_duplicate_points(set);
    return set;
}

FusionResult fuse(const std::vector<LensletLightField>& lfs,
                  const std::vector<ShiftEstimate>& shifts,
                  const LensletGrid& grid, const FusionConfig& cfg) {
    check_inputs(lfs, shifts, grid);
    if (cfg.enhancement < 1) throw ConfigError("fuse: enhancement must be >= 1");

    GridSpec out_grid;
    if (cfg.output_grid) {
        out_grid = *cfg.output_grid;
    } else {
        out_grid.rows = grid.rows * cfg.enhancement;
        out_grid.cols = grid.cols * cfg.enhancement;
        out_grid.pitch_x_um = grid.pitch_u_um / cfg.enhancement;
        out_grid.pitch_y_um = grid.row_pitch_v_um / cfg.enhancement;
        out_grid.origin_um = grid.origin_um;
    }

    // sample positions are shared by all perspectives: triangulate once
    std::vector<SampleSource> sources;
    const std::vector<Vec2> raw_pts = pooled_positions(lfs, shifts, grid, sources);
    std::vector<Vec2> merged;
    std::vector<std::vector<int>> groups;
    merge_positions(raw_pts, merged, groups);

    const Triangulation tri = Triangulation::build(merged);
    const GridInterpolator interp(tri, out_grid, cfg.extrapolation);

    const int ang_rows = lfs[0].ang_rows;
    const int ang_cols = lfs[0].ang_cols;
    FusionResult result;
    result.light_field = LightField(ang_rows, ang_cols, out_grid.rows, out_grid.cols);
    result.light_field.pitch_x_um = out_grid.pitch_x_um;
    result.light_field.pitch_y_um = out_grid.pitch_y_um;
    result.light_field.origin_um = out_grid.origin_um;
    result.validity = interp.validity();

    parallel_for(ang_rows * ang_cols, cfg.threads, [&](int p) {
        const int v = p / ang_cols;
        const int u = p % ang_cols;
        std::vector<double> values(merged.size());
        for (size_t g = 0; g < groups.size(); ++g) {
            double acc = 0.0;
            for (int i : groups[g]) {
                const SampleSource& s = sources[i];
                acc += lfs[s.lf].perspective(v, u).at(s.row, s.col);
            }
            values[g] = acc / groups[g].size();
        }
        result.light_field.data[p] = interp.apply(values);
    });
    return result;
}

LightField rectify_to_square(const LensletLightField& lf, int threads) {
    FusionConfig cfg;
    cfg.enhancement = 1;
    cfg.threads = threads;
    const std::vector<ShiftEstimate> zero_shift(1);
    return fuse({lf}, zero_shift, lf.grid, cfg).light_field;
}

} // namespace lfscan
