#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lfscan/core/geometry.hpp"

namespace lfscan {

/// Delaunay triangulation of a planar point set.
///
/// Bowyer-Watson incremental insertion over a triangulation augmented with
/// ghost triangles (one per convex-hull edge, sharing a symbolic vertex at
/// infinity), so points outside the current hull need no special casing.
/// All orientation/in-circumdisk decisions go through the exact predicates,
/// which keeps the construction correct on the exactly-cocircular lattices
/// micro-shift schedules produce.
///
/// Immutable once built; locate() is const and safe to call concurrently.
class Triangulation {
public:
    static constexpr int kGhost = -1;

    /// Builds the triangulation. Requires >= 3 points, at least one
    /// non-collinear triple, and no duplicate points.
    /// Throws DegenerateGeometryError / FusionError otherwise.
    static Triangulation build(std::vector<Vec2> points);

    const std::vector<Vec2>& points() const { return pts_; }

    /// Vertex index triples of all finite triangles, counterclockwise.
    std::vector<std::array<int, 3>> finite_triangles() const;
    size_t num_finite_triangles() const;

    struct Location {
        bool inside = false;
        std::array<int, 3> verts{{-1, -1, -1}};
        std::array<double, 3> bary{{0.0, 0.0, 0.0}};
        int tri = -1; // pass back as `hint` for a nearby follow-up query
    };

    /// Finds the triangle whose closed region contains p and its barycentric
    /// coordinates (clamped to [0,1] and renormalized against roundoff).
    /// Points outside the convex hull return inside = false.
    Location locate(const Vec2& p, int hint = -1) const;

private:
    struct Tri {
        std::array<int, 3> v{{0, 0, 0}};  // kGhost marks the infinite vertex
        std::array<int, 3> nb{{-1, -1, -1}}; // nb[i] shares the edge opposite v[i]
    };

    bool is_ghost(int t) const { return tris_[t].v[0] == kGhost || tris_[t].v[1] == kGhost || tris_[t].v[2] == kGhost; }
    void ghost_edge(int t, int& a, int& b) const; // finite directed pair (a, b)
    Location make_inside_location(int t, const Vec2& p) const;
    bool in_circumdisk(int t, const Vec2& p) const;
    int walk_to_disk(const Vec2& p, int hint, uint64_t& rng) const;
    void insert(int point_index, int& hint, uint64_t& rng);
    int new_tri(int a, int b, int c);

    std::vector<Vec2> pts_;
    std::vector<Tri> tris_;
    std::vector<uint8_t> alive_;
    std::vector<int> free_;
    // per-insertion visit stamps for cavity search
    mutable std::vector<uint32_t> stamp_;
    uint32_t round_ = 0;
    int first_finite_ = 0;
};

} // namespace lfscan
