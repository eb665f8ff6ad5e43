#include "mrmp/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace mrmp {

namespace {

struct VertexInterner {
    std::unordered_map<uint64_t, int> ids;
    std::vector<Point> pts;

    int intern(const Point& raw) {
        Point p = snap_point(raw);
        uint64_t kx = static_cast<uint64_t>(static_cast<int64_t>(std::llround(p.x / (4 * kEta))));
        uint64_t ky = static_cast<uint64_t>(static_cast<int64_t>(std::llround(p.y / (4 * kEta))));
        uint64_t key = kx * 1000003ULL ^ ky;
        auto [it, inserted] = ids.try_emplace(key, static_cast<int>(pts.size()));
        if (inserted) pts.push_back(p);
        return it->second;
    }
};

}  // namespace

OverlayFaceSet build_overlay(const PolygonalRegion& f, double cell_radius, Point jitter) {
    if (cell_radius <= 0.0 || cell_radius > 1e6)
        throw GeometryError("build_overlay: bad cell_radius");
    OverlayFaceSet out;
    out.cell_radius = cell_radius;
    out.jitter = jitter;
    if (!f.has_area()) return out;

    Box b = f.bounds();
    double c = cell_radius;
    auto cell_of = [&](double v, double j) { return std::floor((v - j) / c); };
    long ix0 = static_cast<long>(cell_of(b.min_x, jitter.x)) - 1;
    long ix1 = static_cast<long>(cell_of(b.max_x, jitter.x)) + 1;
    long iy0 = static_cast<long>(cell_of(b.min_y, jitter.y)) - 1;
    long iy1 = static_cast<long>(cell_of(b.max_y, jitter.y)) + 1;

    VertexInterner interner;
    for (long ix = ix0; ix <= ix1; ++ix) {
        for (long iy = iy0; iy <= iy1; ++iy) {
            Box cell{jitter.x + ix * c, jitter.y + iy * c, jitter.x + (ix + 1) * c,
                     jitter.y + (iy + 1) * c};
            if (cell.max_x < b.min_x || cell.min_x > b.max_x || cell.max_y < b.min_y ||
                cell.min_y > b.max_y)
                continue;
            PolygonalRegion clipped = intersect_box(f, cell);
            for (const Face& face : clipped.faces()) {
                OverlayFace of;
                of.geometry = face;
                of.cell_ix = static_cast<int>(ix);
                of.cell_iy = static_cast<int>(iy);
                for (const Point& p : face.outer.pts) of.vertex_ids.push_back(interner.intern(p));
                for (const Ring& h : face.holes)
                    for (const Point& p : h.pts) of.vertex_ids.push_back(interner.intern(p));
                std::sort(of.vertex_ids.begin(), of.vertex_ids.end());
                of.vertex_ids.erase(std::unique(of.vertex_ids.begin(), of.vertex_ids.end()),
                                    of.vertex_ids.end());
                out.faces.push_back(std::move(of));
            }
        }
    }
    out.vertices = std::move(interner.pts);
    return out;
}

OverlayFaceSet build_overlay_jittered(const PolygonalRegion& f, double cell_radius,
                                      const std::vector<Point>& anchors, std::mt19937& rng,
                                      Point* jitter_out) {
    std::uniform_real_distribution<double> u(0.0, cell_radius);
    for (int attempt = 0; attempt < 32; ++attempt) {
        Point jitter{u(rng), u(rng)};
        bool clean = true;
        for (const Point& a : anchors) {
            double fx = std::remainder(a.x - jitter.x, cell_radius);
            double fy = std::remainder(a.y - jitter.y, cell_radius);
            if (std::abs(fx) < 16 * kEta || std::abs(fy) < 16 * kEta) {
                clean = false;
                break;
            }
        }
        if (!clean) continue;
        if (jitter_out) *jitter_out = jitter;
        return build_overlay(f, cell_radius, jitter);
    }
    throw DegenerateGrid("build_overlay_jittered: 32 jitter attempts failed");
}

CandidateVertices select_candidates(const OverlayFaceSet& overlay, const AnchorSet& x,
                                    double delta) {
    CandidateVertices out;
    if (x.points.empty()) return out;
    std::vector<char> take(overlay.vertices.size(), 0);
    for (const OverlayFace& of : overlay.faces) {
        // Exact minimum L-infinity distance from the face to the anchor set:
        // zero when an anchor lies inside, otherwise attained on an edge.
        double best = std::numeric_limits<double>::max();
        const Ring& ring = of.geometry.outer;
        size_t n = ring.pts.size();
        for (const Point& a : x.points) {
            bool inside = true;
            {
                // point-in-polygon (outer ring only; holes cannot contain an
                // anchor closer than the boundary)
                bool in = false;
                for (size_t i = 0, j = n - 1; i < n; j = i++) {
                    if ((ring.pts[i].y > a.y) != (ring.pts[j].y > a.y)) {
                        double xi = ring.pts[i].x + (a.y - ring.pts[i].y) *
                                                        (ring.pts[j].x - ring.pts[i].x) /
                                                        (ring.pts[j].y - ring.pts[i].y);
                        if (a.x < xi) in = !in;
                    }
                }
                inside = in;
            }
            if (inside) {
                best = 0.0;
                break;
            }
            for (size_t i = 0; i < n; ++i) {
                best = std::min(best,
                                point_segment_dist_linf(a, {ring.pts[i], ring.pts[(i + 1) % n]}));
                if (best == 0.0) break;
            }
            if (best == 0.0) break;
        }
        if (best <= delta + kEta)
            for (int id : of.vertex_ids) take[id] = 1;
    }
    for (size_t i = 0; i < overlay.vertices.size(); ++i)
        if (take[i]) out.points.push_back(overlay.vertices[i]);
    return out;
}

}  // namespace mrmp
