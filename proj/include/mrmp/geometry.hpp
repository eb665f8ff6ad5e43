#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrmp {

// Default snapping/comparison tolerance. Vertex coordinates are snapped to a
// grid of this pitch after boolean operations.
inline constexpr double kEta = 1e-9;

struct Tolerance {
    double eta = kEta;
};

struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

struct PointOutsideRegion : GeometryError {
    explicit PointOutsideRegion(const std::string& what) : GeometryError(what) {}
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    Point() = default;
    Point(double px, double py) : x(px), y(py) {}

    Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
    Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    Point operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Point& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Point& o) const { return !(*this == o); }
};

using Polyline = std::vector<Point>;

struct Segment {
    Point a;
    Point b;
};

struct Box {
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    bool empty() const { return max_x < min_x || max_y < min_y; }
    bool contains(const Point& p, double slack = 0.0) const {
        return p.x >= min_x - slack && p.x <= max_x + slack &&
               p.y >= min_y - slack && p.y <= max_y + slack;
    }
    void expand(double r) { min_x -= r; min_y -= r; max_x += r; max_y += r; }
    Box intersect(const Box& o) const {
        return {std::max(min_x, o.min_x), std::max(min_y, o.min_y),
                std::min(max_x, o.max_x), std::min(max_y, o.max_y)};
    }
};

inline double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }

inline double norm_l1(const Point& p) { return std::abs(p.x) + std::abs(p.y); }
inline double norm_l2(const Point& p) { return std::hypot(p.x, p.y); }
inline double norm_linf(const Point& p) { return std::max(std::abs(p.x), std::abs(p.y)); }

inline double dist_l1(const Point& a, const Point& b) { return norm_l1(a - b); }
inline double dist_l2(const Point& a, const Point& b) { return norm_l2(a - b); }
inline double linf_distance(const Point& a, const Point& b) { return norm_linf(a - b); }

inline double snap_coord(double v, double eta = kEta) {
    double s = std::round(v / eta) * eta;
    return s == 0.0 ? 0.0 : s;  // normalize -0
}
inline Point snap_point(const Point& p, double eta = kEta) {
    return {snap_coord(p.x, eta), snap_coord(p.y, eta)};
}

inline bool near(double a, double b, double eps = kEta) { return std::abs(a - b) <= eps; }
inline bool near(const Point& a, const Point& b, double eps = kEta) {
    return linf_distance(a, b) <= eps;
}

inline Box bbox_of(const Polyline& pts) {
    Box b{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
          std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    for (const Point& p : pts) {
        b.min_x = std::min(b.min_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_x = std::max(b.max_x, p.x);
        b.max_y = std::max(b.max_y, p.y);
    }
    return b;
}

inline double polyline_length_l2(const Polyline& pts) {
    double len = 0.0;
    for (size_t i = 1; i < pts.size(); ++i) len += dist_l2(pts[i - 1], pts[i]);
    return len;
}
inline double polyline_length_l1(const Polyline& pts) {
    double len = 0.0;
    for (size_t i = 1; i < pts.size(); ++i) len += dist_l1(pts[i - 1], pts[i]);
    return len;
}

// Closest squared L2 distance from point p to segment, and the parameter of
// the closest point.
double point_segment_dist_l2(const Point& p, const Segment& s, double* t_out = nullptr);

// Exact L-infinity distance from point p to segment. The distance along the
// segment is a convex piecewise-linear function of the parameter, so the
// minimum is attained at one of a handful of breakpoints.
double point_segment_dist_linf(const Point& p, const Segment& s);

// Minimum L-infinity distance from a fixed point to a moving point that
// traverses the segment a->b (same function as above; named for its role in
// separation checks of one moving robot against a parked one).
inline double min_separation_linf(const Point& parked, const Point& a, const Point& b) {
    return point_segment_dist_linf(parked, Segment{a, b});
}

enum class SegXKind { None, Proper, Touch, Overlap };

struct SegXResult {
    SegXKind kind = SegXKind::None;
    // Intersection parameters on the first segment (for Overlap, the range).
    double t0 = 0.0, t1 = 0.0;
};

// Intersection of segment pq with segment uv, classified with tolerance eps.
// Proper: interiors cross at a single point. Touch: single point involving an
// endpoint or a tangency. Overlap: collinear with a shared sub-segment.
SegXResult segment_intersect(const Point& p, const Point& q, const Point& u,
                             const Point& v, double eps = kEta);

// True if segment pq intersects the open axis-aligned box (strict interior).
bool segment_crosses_open_box(const Point& p, const Point& q, const Box& box,
                              double eps = kEta);

// Parameters t in [0,1] at which segment pq meets segment uv (both endpoints
// of the overlap range for collinear contact). Appends to ts.
void collect_hit_params(const Point& p, const Point& q, const Point& u, const Point& v,
                        std::vector<double>& ts, double eps = kEta);

}  // namespace mrmp
