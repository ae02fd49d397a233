#include "lfscan/fusion/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "lfscan/core/errors.hpp"
#include "lfscan/fusion/predicates.hpp"

namespace lfscan {

namespace {

inline uint64_t next_rng(uint64_t& s) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return s >> 33;
}

// p strictly inside the open segment (a, b); a, b, p known collinear
bool strictly_within_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    if (a.x != b.x) {
        const double lo = std::min(a.x, b.x), hi = std::max(a.x, b.x);
        return p.x > lo && p.x < hi;
    }
    const double lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
    return p.y > lo && p.y < hi;
}

} // namespace

void Triangulation::ghost_edge(int t, int& a, int& b) const {
    const Tri& tr = tris_[t];
    if (tr.v[0] == kGhost) { a = tr.v[1]; b = tr.v[2]; }
    else if (tr.v[1] == kGhost) { a = tr.v[2]; b = tr.v[0]; }
    else { a = tr.v[0]; b = tr.v[1]; }
}

bool Triangulation::in_circumdisk(int t, const Vec2& p) const {
    const Tri& tr = tris_[t];
    if (is_ghost(t)) {
        int a, b;
        ghost_edge(t, a, b);
        const int o = orient2d(pts_[a], pts_[b], p);
        if (o > 0) return true;
        if (o == 0) return strictly_within_segment(pts_[a], pts_[b], p);
        return false;
    }
    return incircle(pts_[tr.v[0]], pts_[tr.v[1]], pts_[tr.v[2]], p) > 0;
}

int Triangulation::new_tri(int a, int b, int c) {
    int id;
    if (!free_.empty()) {
        id = free_.back();
        free_.pop_back();
        alive_[id] = 1;
        tris_[id].v = {a, b, c};
        tris_[id].nb = {-1, -1, -1};
    } else {
        id = static_cast<int>(tris_.size());
        tris_.push_back(Tri{{a, b, c}, {-1, -1, -1}});
        alive_.push_back(1);
        stamp_.push_back(0);
    }
    return id;
}

int Triangulation::walk_to_disk(const Vec2& p, int hint, uint64_t& rng) const {
    int cur = (hint >= 0 && hint < static_cast<int>(tris_.size()) && alive_[hint]) ? hint : first_finite_;
    const size_t max_steps = 4 * tris_.size() + 64;
    for (size_t step = 0; step < max_steps; ++step) {
        if (is_ghost(cur)) {
            if (in_circumdisk(cur, p)) return cur;
            // step to the finite side and keep walking
            const Tri& tr = tris_[cur];
            for (int i = 0; i < 3; ++i) {
                if (tr.v[i] == kGhost) { cur = tr.nb[i]; break; }
            }
            continue;
        }
        const Tri& tr = tris_[cur];
        const int spin = static_cast<int>(next_rng(rng) % 3);
        int next = -1;
        for (int k = 0; k < 3; ++k) {
            const int e = (k + spin) % 3;
            const Vec2& ea = pts_[tr.v[(e + 1) % 3]];
            const Vec2& eb = pts_[tr.v[(e + 2) % 3]];
            if (orient2d(ea, eb, p) < 0) { next = tr.nb[e]; break; }
        }
        if (next < 0) return cur; // p in closed triangle, hence in its open circumdisk
        cur = next;
    }
    // pathological walk: fall back to a full scan
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
        if (alive_[t] && in_circumdisk(t, p)) return t;
    throw FusionError("delaunay: point location failed");
}

void Triangulation::insert(int point_index, int& hint, uint64_t& rng) {
    const Vec2 p = pts_[point_index];
    const int seed = walk_to_disk(p, hint, rng);

    // duplicate guard: a twin vertex must be a corner of the triangle found
    if (!is_ghost(seed)) {
        for (int i = 0; i < 3; ++i)
            if (pts_[tris_[seed].v[i]] == p)
                throw FusionError("delaunay: duplicate point");
    }

    ++round_;
    const uint32_t in_mark = 2 * round_, out_mark = 2 * round_ + 1;

    // grow the cavity: every triangle whose open circumdisk contains p
    std::vector<int> cavity{seed};
    stamp_[seed] = in_mark;
    std::vector<std::pair<int, int>> boundary; // (cavity tri, edge index)
    for (size_t qi = 0; qi < cavity.size(); ++qi) {
        const int t = cavity[qi];
        for (int e = 0; e < 3; ++e) {
            const int n = tris_[t].nb[e];
            if (stamp_[n] == in_mark) continue;
            if (stamp_[n] != out_mark && in_circumdisk(n, p)) {
                stamp_[n] = in_mark;
                cavity.push_back(n);
            } else {
                stamp_[n] = out_mark;
                boundary.emplace_back(t, e);
            }
        }
    }

    // retriangulate: one new triangle per boundary edge, joined at p
    std::unordered_map<int, int> tri_starting_at; // first edge vertex -> new tri
    std::vector<int> fresh;
    fresh.reserve(boundary.size());
    std::vector<std::array<int, 3>> fresh_edge; // (x, y, outer neighbor)
    for (const auto& [t, e] : boundary) {
        const int x = tris_[t].v[(e + 1) % 3];
        const int y = tris_[t].v[(e + 2) % 3];
        const int outer = tris_[t].nb[e];
        // which edge of `outer` faced the cavity triangle t
        int outer_edge = -1;
        for (int i = 0; i < 3; ++i)
            if (tris_[outer].nb[i] == t) { outer_edge = i; break; }
        const int nt = new_tri(x, y, point_index);
        fresh.push_back(nt);
        fresh_edge.push_back({x, y, outer});
        tris_[nt].nb[2] = outer;
        tris_[outer].nb[outer_edge] = nt;
        tri_starting_at[x] = nt;
    }
    // stitch the fan: edge (y, p) of (x, y, p) meets the triangle starting at y
    for (size_t i = 0; i < fresh.size(); ++i) {
        const int nt = fresh[i];
        const int y = fresh_edge[i][1];
        tris_[nt].nb[0] = tri_starting_at.at(y); // opposite x: edge (y, p)
        tris_[tri_starting_at.at(y)].nb[1] = nt; // its edge (p, x) with x == y
    }
    for (int t : cavity) {
        alive_[t] = 0;
        free_.push_back(t);
    }
    hint = fresh.front();
    if (!is_ghost(hint)) {
        first_finite_ = hint;
    } else {
        for (int t : fresh)
            if (!is_ghost(t)) { first_finite_ = t; break; }
    }
}

Triangulation Triangulation::build(std::vector<Vec2> points) {
    if (points.size() < 3)
        throw DegenerateGeometryError("delaunay: need at least 3 points");

    Triangulation T;
    T.pts_ = std::move(points);
    const int n = static_cast<int>(T.pts_.size());

    // spatially coherent insertion order keeps walks short
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (T.pts_[a].y != T.pts_[b].y) return T.pts_[a].y < T.pts_[b].y;
        return T.pts_[a].x < T.pts_[b].x;
    });
    for (int i = 0; i + 1 < n; ++i)
        if (T.pts_[order[i]] == T.pts_[order[i + 1]])
            throw FusionError("delaunay: duplicate point");

    // first triangle: first two points plus the first non-collinear point
    int i2 = -1, ori = 0;
    for (int i = 2; i < n; ++i) {
        ori = orient2d(T.pts_[order[0]], T.pts_[order[1]], T.pts_[order[i]]);
        if (ori != 0) { i2 = i; break; }
    }
    if (i2 < 0)
        throw DegenerateGeometryError("delaunay: all points collinear");

    int a = order[0], b = order[1], c = order[i2];
    if (ori < 0) std::swap(b, c);
    const int t0 = T.new_tri(a, b, c);
    const int g0 = T.new_tri(b, a, kGhost);
    const int g1 = T.new_tri(c, b, kGhost);
    const int g2 = T.new_tri(a, c, kGhost);
    T.tris_[t0].nb = {g1, g2, g0};
    T.tris_[g0].nb = {g2, g1, t0};
    T.tris_[g1].nb = {g0, g2, t0};
    T.tris_[g2].nb = {g1, g0, t0};
    T.first_finite_ = t0;

    uint64_t rng = 0x853c49e6748fea9bULL;
    int hint = t0;
    for (int i = 2; i < n; ++i) {
        if (i == i2) continue;
        T.insert(order[i], hint, rng);
    }
    return T;
}

std::vector<std::array<int, 3>> Triangulation::finite_triangles() const {
    std::vector<std::array<int, 3>> out;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
        if (alive_[t] && !is_ghost(t)) out.push_back(tris_[t].v);
    return out;
}

size_t Triangulation::num_finite_triangles() const {
    size_t c = 0;
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
        if (alive_[t] && !is_ghost(t)) ++c;
    return c;
}

Triangulation::Location Triangulation::locate(const Vec2& p, int hint) const {
    Location loc;
    int cur = first_finite_;
    if (hint >= 0 && hint < static_cast<int>(tris_.size()) && alive_[hint] && !is_ghost(hint))
        cur = hint;
    uint64_t rng = 0xda3e39cb94b95bdbULL;
    const size_t max_steps = 4 * tris_.size() + 64;
    for (size_t step = 0; step < max_steps; ++step) {
        if (is_ghost(cur)) {
            loc.inside = false;
            loc.tri = cur;
            return loc;
        }
        const Tri& tr = tris_[cur];
        const int spin = static_cast<int>(next_rng(rng) % 3);
        int next = -1;
        for (int k = 0; k < 3; ++k) {
            const int e = (k + spin) % 3;
            const Vec2& ea = pts_[tr.v[(e + 1) % 3]];
            const Vec2& eb = pts_[tr.v[(e + 2) % 3]];
            if (orient2d(ea, eb, p) < 0) { next = tr.nb[e]; break; }
        }
        if (next < 0) return make_inside_location(cur, p);
        cur = next;
    }
    // pathological walk: scan everything
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
        if (!alive_[t] || is_ghost(t)) continue;
        const Tri& tr = tris_[t];
        bool contained = true;
        for (int e = 0; e < 3 && contained; ++e)
            contained = orient2d(pts_[tr.v[(e + 1) % 3]], pts_[tr.v[(e + 2) % 3]], p) >= 0;
        if (contained) return make_inside_location(t, p);
    }
    loc.inside = false;
    loc.tri = -1;
    return loc;
}

Triangulation::Location Triangulation::make_inside_location(int t, const Vec2& p) const {
    Location loc;
    loc.inside = true;
    loc.tri = t;
    loc.verts = tris_[t].v;
    const Vec2& A = pts_[loc.verts[0]];
    const Vec2& B = pts_[loc.verts[1]];
    const Vec2& C = pts_[loc.verts[2]];
    const double area = (B.x - A.x) * (C.y - A.y) - (B.y - A.y) * (C.x - A.x);
    double w0 = ((B.x - p.x) * (C.y - p.y) - (B.y - p.y) * (C.x - p.x)) / area;
    double w1 = ((C.x - p.x) * (A.y - p.y) - (C.y - p.y) * (A.x - p.x)) / area;
    double w2 = 1.0 - w0 - w1;
    w0 = std::clamp(w0, 0.0, 1.0);
    w1 = std::clamp(w1, 0.0, 1.0);
    w2 = std::clamp(w2, 0.0, 1.0);
    const double s = w0 + w1 + w2;
    loc.bary = {w0 / s, w1 / s, w2 / s};
    return loc;
}

} // namespace lfscan
