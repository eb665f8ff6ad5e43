#pragma once

#include <array>
#include <optional>
#include <vector>

#include "mrmp/region.hpp"

namespace mrmp {

// A narrow trapezoid of the free space bounded by two blocker edges and two
// portals normal to its direction; one robot cannot pass the other inside it.
struct Corridor {
    Segment blocker_i;
    Segment blocker_j;
    Segment portal_l;         // at the lower offset along direction
    Segment portal_r;
    Point direction;          // unit vector, angle k*pi/4 with k in {0..3}
    double length = 0.0;      // L-infinity distance between the portal lines
    int edge_i = -1;          // indices of the supporting free-space edges
    int edge_j = -1;

    // Corner order: portal_l then portal_r reversed, giving a simple quad.
    std::array<Point, 4> quad() const {
        return {blocker_i.a, blocker_j.a, blocker_j.b, blocker_i.b};
    }
    bool contains(const Point& p, double eps = kEta) const;

    // Trapezoid at L-infinity offset 10 inward from each portal; nullopt when
    // length < 20 (degenerate single segment at length exactly 20).
    std::optional<std::array<Point, 4>> sanctum() const;
};

struct Configuration;  // see plans.hpp

struct AnchorSet {
    std::vector<Point> points;

    bool contains(const Point& p, double eps = kEta) const;
    double linf_distance_to(const Point& p) const;
};

// All maximal corridors of f, pairwise interior-disjoint, reported in
// workspace coordinates with ties resolved by lexicographic blocker-edge
// indices.
std::vector<Corridor> enumerate_corridors(const PolygonalRegion& f);

// Vertices of f, the four query placements, and all corridor portal
// endpoints; duplicates within eta merged.
AnchorSet build_anchor_set(const PolygonalRegion& f, const std::vector<Corridor>& corridors,
                           const std::vector<Point>& placements);

}  // namespace mrmp
