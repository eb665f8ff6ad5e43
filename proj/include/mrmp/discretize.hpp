#pragma once

#include <random>
#include <vector>

#include "mrmp/corridors.hpp"
#include "mrmp/region.hpp"

namespace mrmp {

struct DegenerateGrid : GeometryError {
    explicit DegenerateGrid(const std::string& what) : GeometryError(what) {}
};

struct OverlayFace {
    Face geometry;                // one connected component of F within a cell
    std::vector<int> vertex_ids;  // into OverlayFaceSet::vertices
    int cell_ix = 0;
    int cell_iy = 0;
};

// The grid overlay of the free space: faces are connected components of
// F intersected with individual grid cells; vertices are shared via ids.
struct OverlayFaceSet {
    std::vector<OverlayFace> faces;
    std::vector<Point> vertices;
    double cell_radius = 0.0;  // grid pitch
    Point jitter;
};

// Overlay of the jittered uniform grid (lines at jitter + k*cell_radius) with
// f, restricted to f.
OverlayFaceSet build_overlay(const PolygonalRegion& f, double cell_radius, Point jitter);

// Draws jitter until no anchor point lies within eta of a grid line
// (32 attempts, then DegenerateGrid).
OverlayFaceSet build_overlay_jittered(const PolygonalRegion& f, double cell_radius,
                                      const std::vector<Point>& anchors, std::mt19937& rng,
                                      Point* jitter_out = nullptr);

struct CandidateVertices {
    std::vector<Point> points;
};

// Vertices of all overlay faces whose exact minimum L-infinity distance to the
// anchor set is at most delta.
CandidateVertices select_candidates(const OverlayFaceSet& overlay, const AnchorSet& x,
                                    double delta);

}  // namespace mrmp
