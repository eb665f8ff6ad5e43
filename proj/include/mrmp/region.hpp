#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mrmp/geometry.hpp"

namespace mrmp {

// Ring vertices are stored without the closing duplicate.
struct Ring {
    Polyline pts;

    double signed_area() const;
    Box bounds() const { return bbox_of(pts); }
    size_t size() const { return pts.size(); }
};

struct Face {
    Ring outer;              // counterclockwise
    std::vector<Ring> holes; // clockwise, strictly inside outer
};

enum class PointClass { Interior, Boundary, Outside };

struct Classification {
    PointClass cls = PointClass::Outside;
    int component = -1;  // stable for a fixed region; -1 when Outside
};

// A closed polygonal region: a set of interior-disjoint faces (outer ring plus
// holes) together with zero-area "filament" segments. Filaments represent
// boundary-only pieces of the region (e.g. the measure-zero remainder of a
// subtraction); they are part of the point set but carry no area.
class PolygonalRegion {
public:
    PolygonalRegion() = default;
    PolygonalRegion(std::vector<Face> faces, std::vector<Segment> filaments = {});

    // Builds a region from raw input rings (one outer, optional holes) and
    // checks validity: simple rings, holes inside the outer ring.
    static PolygonalRegion from_rings(const Ring& outer, const std::vector<Ring>& holes);

    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<Segment>& filaments() const { return filaments_; }

    bool empty() const { return faces_.empty() && filaments_.empty(); }
    bool has_area() const { return !faces_.empty(); }
    Box bounds() const { return bounds_; }
    double area() const;
    double perimeter() const;
    size_t vertex_count() const;

    // All ring vertices plus filament endpoints.
    std::vector<Point> node_points() const;

    Classification classify(const Point& p, double eta = kEta) const;
    bool contains(const Point& p, double eta = kEta) const {
        return classify(p, eta).cls != PointClass::Outside;
    }
    // True iff the whole closed segment a-b lies in the region.
    bool contains_segment(const Point& a, const Point& b, double eta = kEta) const;

    int component_count() const { return component_count_; }
    int face_component(size_t face_idx) const { return face_component_[face_idx]; }

    uint64_t fingerprint() const { return fingerprint_; }

    template <typename F>
    void for_each_edge(F&& f) const {
        for (const Face& face : faces_) {
            auto ring_edges = [&](const Ring& r) {
                size_t n = r.pts.size();
                for (size_t i = 0; i < n; ++i) f(r.pts[i], r.pts[(i + 1) % n]);
            };
            ring_edges(face.outer);
            for (const Ring& h : face.holes) ring_edges(h);
        }
    }

private:
    void finalize();

    std::vector<Face> faces_;
    std::vector<Segment> filaments_;
    Box bounds_{};
    std::vector<int> face_component_;
    std::vector<int> filament_component_;
    int component_count_ = 0;
    uint64_t fingerprint_ = 0;
};

PolygonalRegion make_box_region(const Box& b);

// F = { p : p + unit square subset of W }, the L-infinity inward offset of W
// by 1. An empty result is a valid empty region. Measure-zero filaments of the
// erosion (passages of width exactly 2) are dropped.
PolygonalRegion erode_to_free_space(const PolygonalRegion& w);

// Closure of F minus the open square int(p + 2*square), i.e. the placements of
// one robot when the other is parked at p. Boundary-only remainders are kept
// as filaments.
PolygonalRegion subtract_robot_square(const PolygonalRegion& f, const Point& p);

// Region clipped to a closed axis-aligned box (filaments clipped too).
PolygonalRegion intersect_box(const PolygonalRegion& r, const Box& b);

// The connected component of r containing p, or an empty region if p is
// outside r.
PolygonalRegion component_containing(const PolygonalRegion& r, const Point& p,
                                     double eta = kEta);

double symmetric_difference_area(const PolygonalRegion& a, const PolygonalRegion& b);

// Region equality: symmetric-difference area below eta times total perimeter.
bool region_equal(const PolygonalRegion& a, const PolygonalRegion& b, double eta = kEta);

// Maximal parameter intervals of segment a-b that lie inside the region.
std::vector<std::pair<double, double>> inside_intervals(const PolygonalRegion& r,
                                                        const Point& a, const Point& b,
                                                        double eta = kEta);

}  // namespace mrmp
