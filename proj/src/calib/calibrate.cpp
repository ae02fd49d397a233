#include "lfscan/calib/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lfscan/core/errors.hpp"
#include "lfscan/core/parallel.hpp"
#include "lfscan/fusion/fuse.hpp"

namespace lfscan {

namespace {

// background-subtracted centroid over a disk window, iterated to its fixed point
Vec2 refine_centroid(const Image& im, Vec2 start, double radius) {
    Vec2 c = start;
    for (int iter = 0; iter < 8; ++iter) {
        const int x0 = std::max(0, static_cast<int>(std::floor(c.x - radius)));
        const int x1 = std::min(im.width() - 1, static_cast<int>(std::ceil(c.x + radius)));
        const int y0 = std::max(0, static_cast<int>(std::floor(c.y - radius)));
        const int y1 = std::min(im.height() - 1, static_cast<int>(std::ceil(c.y + radius)));
        double background = std::numeric_limits<double>::infinity();
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x)
                if (std::hypot(x - c.x, y - c.y) <= radius)
                    background = std::min(background, im.at(y, x));
        double sw = 0.0, sx = 0.0, sy = 0.0;
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                if (std::hypot(x - c.x, y - c.y) > radius) continue;
                const double w = im.at(y, x) - background;
                if (w <= 0) continue;
                sw += w;
                sx += w * x;
                sy += w * y;
            }
        }
        if (sw <= 0) break;
        const Vec2 next{sx / sw, sy / sw};
        const double move = (next - c).norm();
        c = next;
        if (move < 1e-4) break;
    }
    return c;
}

void solve_spd(int n, double A[4][4], double* b, double* out) {
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A[i][k]) > std::abs(A[piv][k])) piv = i;
        if (std::abs(A[piv][k]) < 1e-12)
            throw CalibrationError("fit_grid: degenerate center span");
        for (int j = 0; j < n; ++j) std::swap(A[k][j], A[piv][j]);
        std::swap(b[k], b[piv]);
        for (int i = k + 1; i < n; ++i) {
            const double f = A[i][k] / A[k][k];
            for (int j = k; j < n; ++j) A[i][j] -= f * A[k][j];
            b[i] -= f * b[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        double r = b[i];
        for (int j = i + 1; j < n; ++j) r -= A[i][j] * out[j];
        out[i] = r / A[i][i];
    }
}

// center = origin + col * u_vec + parity(row) * w_vec + row * v_vec.
// Leaving the odd-row offset vector w free keeps the fit valid whichever
// absolute parity the lowest detected row happens to have.
struct LatticeFit {
    Vec2 origin, u_vec, w_vec, v_vec;
    double rms = 0.0;
};

LatticeFit solve_lattice(const std::vector<CenterEstimate>& centers, bool fit_parity_vec) {
    const int n = fit_parity_vec ? 4 : 3;
    double A[4][4] = {};
    double bx[4] = {}, by[4] = {};
    for (const CenterEstimate& e : centers) {
        const double par = (e.row % 2 != 0) ? 1.0 : 0.0;
        double row_terms[4] = {1.0, static_cast<double>(e.col), static_cast<double>(e.row), par};
        double px = e.position_px.x;
        double py = e.position_px.y;
        if (!fit_parity_vec) {
            // fold parity into the column coordinate: offset fixed at u/2
            row_terms[1] += 0.5 * par;
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) A[i][j] += row_terms[i] * row_terms[j];
            bx[i] += row_terms[i] * px;
            by[i] += row_terms[i] * py;
        }
    }
    double Ax[4][4], Ay[4][4];
    std::copy(&A[0][0], &A[0][0] + 16, &Ax[0][0]);
    std::copy(&A[0][0], &A[0][0] + 16, &Ay[0][0]);
    double solx[4] = {}, soly[4] = {};
    solve_spd(n, Ax, bx, solx);
    solve_spd(n, Ay, by, soly);

    LatticeFit fit;
    fit.origin = Vec2{solx[0], soly[0]};
    fit.u_vec = Vec2{solx[1], soly[1]};
    fit.v_vec = Vec2{solx[2], soly[2]};
    fit.w_vec = fit_parity_vec ? Vec2{solx[3], soly[3]} : fit.u_vec * 0.5;
    double ss = 0.0;
    for (const CenterEstimate& e : centers) {
        const double par = (e.row % 2 != 0) ? 1.0 : 0.0;
        const Vec2 pred = fit.origin + fit.u_vec * static_cast<double>(e.col) +
                          fit.w_vec * par + fit.v_vec * static_cast<double>(e.row);
        ss += (pred - e.position_px).norm2();
    }
    fit.rms = std::sqrt(ss / centers.size());
    return fit;
}

void normalize_indices(std::vector<CenterEstimate>& centers) {
    int min_row = centers[0].row, min_col = centers[0].col;
    for (const CenterEstimate& e : centers) {
        min_row = std::min(min_row, e.row);
        min_col = std::min(min_col, e.col);
    }
    for (CenterEstimate& e : centers) {
        e.row -= min_row;
        e.col -= min_col;
    }
}

int distinct_rows(const std::vector<CenterEstimate>& centers) {
    std::vector<int> rows;
    for (const CenterEstimate& e : centers) rows.push_back(e.row);
    std::sort(rows.begin(), rows.end());
    return static_cast<int>(std::unique(rows.begin(), rows.end()) - rows.begin());
}

} // namespace

std::vector<CenterEstimate> detect_centers(const RawCapture& white, double expected_pitch_px) {
    const Image& im = white.image;
    if (expected_pitch_px <= 2.0)
        throw CalibrationError("detect_centers: expected pitch too small");

    const double mean = image_mean(im);
    const double max = image_max(im);
    if (max - mean < 1e-9)
        throw CalibrationError("detect_centers: featureless white image");
    const double threshold = mean + 0.25 * (max - mean);
    const int sep = std::max(1, static_cast<int>(std::lround(0.35 * expected_pitch_px)));

    std::vector<CenterEstimate> peaks;
    for (int y = 0; y < im.height(); ++y) {
        for (int x = 0; x < im.width(); ++x) {
            const double v = im.at(y, x);
            if (v < threshold) continue;
            bool is_max = true;
            for (int dy = -sep; dy <= sep && is_max; ++dy) {
                const int yy = y + dy;
                if (yy < 0 || yy >= im.height()) continue;
                for (int dx = -sep; dx <= sep; ++dx) {
                    const int xx = x + dx;
                    if (xx < 0 || xx >= im.width() || (dx == 0 && dy == 0)) continue;
                    const double nv = im.at(yy, xx);
                    // strictly greater wins; plateau ties go to the smaller index
                    if (nv > v || (nv == v && (yy < y || (yy == y && xx < x)))) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (!is_max) continue;
            CenterEstimate e;
            e.position_px = refine_centroid(im, Vec2{double(x), double(y)}, expected_pitch_px / 2.0);
            e.peak_value = v;
            peaks.push_back(e);
        }
    }
    // merge estimates that collapsed onto the same lens; peaks arrive in scan
    // order, so only a bounded tail of the merged list needs checking
    std::vector<CenterEstimate> merged;
    const double min_dist = expected_pitch_px / 2.0;
    for (const CenterEstimate& e : peaks) {
        bool dup = false;
        for (size_t j = merged.size(); j-- > 0;) {
            if (e.position_px.y - merged[j].position_px.y > 2.0 * expected_pitch_px) break;
            if ((merged[j].position_px - e.position_px).norm() < min_dist) {
                merged[j].position_px = (merged[j].position_px + e.position_px) * 0.5;
                merged[j].peak_value = std::max(merged[j].peak_value, e.peak_value);
                dup = true;
                break;
            }
        }
        if (!dup) merged.push_back(e);
    }
    if (merged.size() < 4)
        throw CalibrationError("detect_centers: fewer than 4 lens centers found");
    return merged;
}

LensletGrid fit_grid(std::vector<CenterEstimate>& centers, double pixel_pitch_um) {
    if (centers.size() < 4) throw CalibrationError("fit_grid: need at least 4 centers");
    if (pixel_pitch_um <= 0) throw CalibrationError("fit_grid: pixel pitch must be positive");

    // initial rotation/pitch estimate from near-horizontal nearest neighbors
    std::vector<double> angles, spacings;
    for (size_t i = 0; i < centers.size(); ++i) {
        double best_d = std::numeric_limits<double>::infinity();
        Vec2 best_delta;
        for (size_t j = 0; j < centers.size(); ++j) {
            if (i == j) continue;
            Vec2 d = centers[j].position_px - centers[i].position_px;
            if (d.x < 0) d = Vec2{-d.x, -d.y};
            if (std::abs(d.y) > std::abs(d.x) * 0.5) continue;
            const double dist = d.norm();
            if (dist < best_d) {
                best_d = dist;
                best_delta = d;
            }
        }
        if (std::isfinite(best_d)) {
            angles.push_back(std::atan2(best_delta.y, best_delta.x));
            spacings.push_back(best_d);
        }
    }
    if (angles.size() < 2) throw CalibrationError("fit_grid: degenerate center span");
    std::sort(angles.begin(), angles.end());
    std::sort(spacings.begin(), spacings.end());
    double rotation = angles[angles.size() / 2];
    double pitch_px = spacings[spacings.size() / 2];

    // round 1 association: cluster derotated rows, parity-blind columns on the
    // half-pitch lattice, then let the parity vector absorb the offsets
    {
        std::vector<double> ys(centers.size());
        for (size_t i = 0; i < centers.size(); ++i)
            ys[i] = rotate(centers[i].position_px, -rotation).y;
        std::vector<size_t> order(centers.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return ys[a] < ys[b]; });
        const double row_pitch_guess = pitch_px * 0.866;
        int row = 0;
        double row_anchor = ys[order[0]];
        for (size_t k = 0; k < order.size(); ++k) {
            if (ys[order[k]] - row_anchor > row_pitch_guess / 2.0) {
                row += static_cast<int>(std::lround((ys[order[k]] - row_anchor) / row_pitch_guess));
                row_anchor = ys[order[k]];
            }
            centers[order[k]].row = row;
        }
        // per-row parity from the mean fractional column offset
        const int n_rows = centers[0].row + 1 + [&] {
            int m = 0;
            for (const CenterEstimate& e : centers) m = std::max(m, e.row);
            return m - centers[0].row;
        }();
        std::vector<double> frac_sum(n_rows, 0.0);
        std::vector<int> frac_n(n_rows, 0);
        double base_x = std::numeric_limits<double>::infinity();
        for (const CenterEstimate& e : centers)
            base_x = std::min(base_x, rotate(e.position_px, -rotation).x);
        for (const CenterEstimate& e : centers) {
            const double rel = (rotate(e.position_px, -rotation).x - base_x) / pitch_px;
            const double frac = rel - std::floor(rel + 0.5);
            frac_sum[e.row] += frac;
            frac_n[e.row] += 1;
        }
        for (CenterEstimate& e : centers) {
            const double rel = (rotate(e.position_px, -rotation).x - base_x) / pitch_px;
            const double row_frac = frac_sum[e.row] / std::max(1, frac_n[e.row]);
            // rows sitting near half-pitch offsets are odd: shift before rounding
            const bool odd = std::abs(row_frac) > 0.25;
            if (odd && e.row % 2 == 0) {
                // relabel rows so measured parity matches the index parity
                for (CenterEstimate& f : centers) f.row += 1;
                return fit_grid(centers, pixel_pitch_um);
            }
            e.col = static_cast<int>(std::lround(rel - (odd ? 0.5 : 0.0)));
        }
        normalize_indices(centers);
    }

    LatticeFit fit;
    for (int round = 0; round < 2; ++round) {
        const bool parity_vec = distinct_rows(centers) >= 3;
        fit = solve_lattice(centers, parity_vec);
        if (round == 1) break;
        // round 2 association straight from the fitted lattice
        const double det = fit.u_vec.x * fit.v_vec.y - fit.u_vec.y * fit.v_vec.x;
        if (std::abs(det) < 1e-9) throw CalibrationError("fit_grid: degenerate lattice fit");
        const double wu = (fit.w_vec.x * fit.u_vec.x + fit.w_vec.y * fit.u_vec.y) /
                          fit.u_vec.norm2();
        for (CenterEstimate& e : centers) {
            const Vec2 d = e.position_px - fit.origin;
            const double s = (d.x * fit.v_vec.y - d.y * fit.v_vec.x) / det;
            const double t = (fit.u_vec.x * d.y - fit.u_vec.y * d.x) / det;
            const int r = static_cast<int>(std::lround(t));
            const double par = (((r % 2) + 2) % 2 != 0) ? 1.0 : 0.0;
            e.row = r;
            e.col = static_cast<int>(std::lround(s - par * wu));
        }
        normalize_indices(centers);
    }

    if (fit.rms > fit.u_vec.norm() / 4.0)
        throw CalibrationError("fit_grid: residual RMS exceeds a quarter pitch");
    if (distinct_rows(centers) < 2)
        throw CalibrationError("fit_grid: centers span fewer than 2 rows");

    rotation = std::atan2(fit.u_vec.y, fit.u_vec.x);
    LensletGrid g;
    g.pitch_u_um = fit.u_vec.norm() * pixel_pitch_um;
    g.row_pitch_v_um = std::abs(rotate(fit.v_vec, -rotation).y) * pixel_pitch_um;
    g.odd_row_offset_um = (fit.w_vec.x * fit.u_vec.x + fit.w_vec.y * fit.u_vec.y) /
                          fit.u_vec.norm() * pixel_pitch_um;
    g.rotation_rad = rotation;
    g.origin_um = fit.origin * pixel_pitch_um;
    int rows = 0, cols = 0;
    for (const CenterEstimate& e : centers) {
        rows = std::max(rows, e.row + 1);
        cols = std::max(cols, e.col + 1);
    }
    if (rows < 2 || cols < 2)
        throw CalibrationError("fit_grid: centers span fewer than 2 rows or 2 columns");
    g.rows = rows;
    g.cols = cols;
    g.centers_px.assign(static_cast<size_t>(rows) * cols, Vec2{std::nan(""), std::nan("")});
    for (const CenterEstimate& e : centers)
        g.centers_px[static_cast<size_t>(e.row) * cols + e.col] = e.position_px;
    return g;
}

LensletLightField decode_lenslet(const RawCapture& raw, const LensletGrid& grid,
                                 const DecodeOptions& opts) {
    if (!grid.valid()) throw DecodeError("decode: invalid grid");
    if (opts.angular_rows < 1 || opts.angular_cols < 1)
        throw ConfigError("decode: angular size must be positive");
    const double max_offset_um =
        std::hypot((opts.angular_cols - 1) / 2.0, (opts.angular_rows - 1) / 2.0) *
        opts.pixel_pitch_um;
    if (max_offset_um > grid.pitch_u_um / 2.0 + 1e-9)
        throw ConfigError("decode: angular offsets exceed the lens radius");

    LensletLightField lf;
    lf.ang_rows = opts.angular_rows;
    lf.ang_cols = opts.angular_cols;
    lf.grid = grid;
    lf.data.assign(static_cast<size_t>(opts.angular_rows) * opts.angular_cols,
                   Image(grid.rows, grid.cols));
    const int uc = (opts.angular_cols - 1) / 2;
    const int vc = (opts.angular_rows - 1) / 2;
    const bool have_centers = !grid.centers_px.empty();

    parallel_for(grid.rows, opts.threads, [&](int r) {
        for (int c = 0; c < grid.cols; ++c) {
            Vec2 center_px;
            bool measured = false;
            if (have_centers) {
                const Vec2 m = grid.centers_px[static_cast<size_t>(r) * grid.cols + c];
                if (!std::isnan(m.x)) {
                    center_px = m;
                    measured = true;
                }
            }
            if (!measured) {
                const Vec2 um = grid.nominal_center(r, c);
                center_px = Vec2{um.x / opts.pixel_pitch_um - 0.5, um.y / opts.pixel_pitch_um - 0.5};
            }
            for (int v = 0; v < opts.angular_rows; ++v) {
                for (int u = 0; u < opts.angular_cols; ++u) {
                    const double x = center_px.x + (u - uc);
                    const double y = center_px.y + (v - vc);
                    lf.perspective(v, u).at(r, c) = bilinear_sample(raw.image, x, y);
                }
            }
        }
    });
    return lf;
}

LightField decode(const RawCapture& raw, const LensletGrid& grid, const DecodeOptions& opts) {
    return rectify_to_square(decode_lenslet(raw, grid, opts), opts.threads);
}

} // namespace lfscan
