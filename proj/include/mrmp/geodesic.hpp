#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mrmp/region.hpp"

namespace mrmp {

struct GeodesicResult {
    double length = 0.0;
    Polyline path;  // from a to b, endpoints included
};

// Visibility graph over the node points of a region, memoized per region
// fingerprint (the planner issues many queries against the same free space).
class VisibilityGraph {
public:
    explicit VisibilityGraph(const PolygonalRegion& region);

    const PolygonalRegion& region() const { return *region_; }
    const std::vector<Point>& nodes() const { return nodes_; }
    bool visible(int i, int j) const { return vis_[static_cast<size_t>(i) * nodes_.size() + j]; }

    // Shared cache keyed by region fingerprint; safe for concurrent use.
    static std::shared_ptr<const VisibilityGraph> for_region(const PolygonalRegion& region);

private:
    std::shared_ptr<const PolygonalRegion> region_;
    std::vector<Point> nodes_;
    std::vector<char> vis_;
};

// Shortest path between two points of the region. Returns nullopt when a and
// b lie in different components. Throws PointOutsideRegion if a or b is not in
// the region.
std::optional<GeodesicResult> shortest_path(const PolygonalRegion& region, const Point& a,
                                            const Point& b);

// One-to-many lengths from a; Outside or unreachable targets yield nullopt.
std::vector<std::optional<double>> shortest_paths_from(const PolygonalRegion& region,
                                                       const Point& a,
                                                       const std::vector<Point>& targets);

}  // namespace mrmp
