#define BOOST_GEOMETRY_NO_ROBUSTNESS
#include "mrmp/region.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>

namespace bg = boost::geometry;

namespace mrmp {
namespace {

using BgPoint = bg::model::d2::point_xy<double>;
using BgPoly = bg::model::polygon<BgPoint, false, true>;  // ccw outer, closed
using BgMulti = bg::model::multi_polygon<BgPoly>;

constexpr double kSliverArea = 1e-9;

BgPoly to_bg(const Face& f) {
    BgPoly poly;
    for (const Point& p : f.outer.pts) poly.outer().emplace_back(p.x, p.y);
    if (!f.outer.pts.empty())
        poly.outer().emplace_back(f.outer.pts.front().x, f.outer.pts.front().y);
    for (const Ring& h : f.holes) {
        poly.inners().emplace_back();
        auto& inner = poly.inners().back();
        for (const Point& p : h.pts) inner.emplace_back(p.x, p.y);
        if (!h.pts.empty()) inner.emplace_back(h.pts.front().x, h.pts.front().y);
    }
    return poly;
}

BgMulti to_bg(const std::vector<Face>& faces) {
    BgMulti m;
    for (const Face& f : faces) m.push_back(to_bg(f));
    return m;
}

Ring sanitize_ring(const std::vector<BgPoint>& src) {
    Ring r;
    for (const BgPoint& bp : src) {
        Point p = snap_point({bg::get<0>(bp), bg::get<1>(bp)});
        if (!r.pts.empty() && near(p, r.pts.back(), kEta)) continue;
        r.pts.push_back(p);
    }
    while (r.pts.size() > 1 && near(r.pts.front(), r.pts.back(), kEta)) r.pts.pop_back();
    return r;
}

std::vector<Face> from_bg(const BgMulti& m) {
    std::vector<Face> faces;
    for (const BgPoly& poly : m) {
        Face f;
        f.outer = sanitize_ring(poly.outer());
        if (f.outer.pts.size() < 3 || std::abs(f.outer.signed_area()) < kSliverArea)
            continue;
        for (const auto& inner : poly.inners()) {
            Ring h = sanitize_ring(inner);
            if (h.pts.size() < 3 || std::abs(h.signed_area()) < kSliverArea) continue;
            f.holes.push_back(std::move(h));
        }
        faces.push_back(std::move(f));
    }
    return faces;
}

bool point_in_ring(const Ring& ring, const Point& p) {
    // Crossing number; callers guarantee p is not within tolerance of the
    // boundary, so the open/closed distinction does not matter here.
    bool inside = false;
    size_t n = ring.pts.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& a = ring.pts[i];
        const Point& b = ring.pts[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            double xint = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < xint) inside = !inside;
        }
    }
    return inside;
}

bool point_in_face(const Face& f, const Point& p) {
    if (!point_in_ring(f.outer, p)) return false;
    for (const Ring& h : f.holes)
        if (point_in_ring(h, p)) return false;
    return true;
}

uint64_t fnv1a(uint64_t h, const void* data, size_t len) {
    const unsigned char* bytes = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ULL;
    }
    return h;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

double Ring::signed_area() const {
    double a2 = 0.0;
    size_t n = pts.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) a2 += cross(pts[j], pts[i]);
    return a2 / 2.0;
}

PolygonalRegion::PolygonalRegion(std::vector<Face> faces, std::vector<Segment> filaments)
    : faces_(std::move(faces)), filaments_(std::move(filaments)) {
    finalize();
}

PolygonalRegion PolygonalRegion::from_rings(const Ring& outer, const std::vector<Ring>& holes) {
    Face f;
    f.outer = outer;
    f.holes = holes;
    BgPoly poly = to_bg(f);
    bg::correct(poly);
    std::string reason;
    if (!bg::is_valid(poly, reason))
        throw GeometryError("invalid polygon: " + reason);
    BgMulti m{poly};
    return PolygonalRegion(from_bg(m));
}

void PolygonalRegion::finalize() {
    // Snap filaments, drop degenerate ones, and merge collinear overlaps so
    // repeated subtractions stay idempotent.
    std::vector<Segment> fil;
    for (Segment s : filaments_) {
        s.a = snap_point(s.a);
        s.b = snap_point(s.b);
        if (dist_l2(s.a, s.b) > 10 * kEta) fil.push_back(s);
    }
    for (bool merged = true; merged;) {
        merged = false;
        for (size_t i = 0; i < fil.size() && !merged; ++i) {
            for (size_t j = i + 1; j < fil.size() && !merged; ++j) {
                const Segment &s = fil[i], &t = fil[j];
                if (point_segment_dist_l2(t.a, s) > 2 * kEta &&
                    point_segment_dist_l2(t.b, s) > 2 * kEta)
                    continue;
                Point d = s.b - s.a;
                double len = norm_l2(d);
                Point u = d * (1.0 / len);
                if (std::abs(cross(u, t.b - t.a)) > 2 * kEta * std::max(1.0, dist_l2(t.a, t.b)))
                    continue;
                if (std::abs(cross(u, t.a - s.a)) > 2 * kEta) continue;
                double pa = 0, pb = len;
                double qa = dot(t.a - s.a, u), qb = dot(t.b - s.a, u);
                if (qa > qb) std::swap(qa, qb);
                if (qb < pa - kEta || qa > pb + kEta) continue;  // disjoint on the line
                double lo = std::min(pa, qa), hi = std::max(pb, qb);
                fil[i] = Segment{s.a + u * lo, s.a + u * hi};
                fil.erase(fil.begin() + static_cast<long>(j));
                merged = true;
            }
        }
    }
    filaments_ = std::move(fil);

    bounds_ = Box{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
                  std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
    auto grow = [&](const Point& p) {
        bounds_.min_x = std::min(bounds_.min_x, p.x);
        bounds_.min_y = std::min(bounds_.min_y, p.y);
        bounds_.max_x = std::max(bounds_.max_x, p.x);
        bounds_.max_y = std::max(bounds_.max_y, p.y);
    };
    for (const Face& f : faces_) {
        for (const Point& p : f.outer.pts) grow(p);
    }
    for (const Segment& s : filaments_) {
        grow(s.a);
        grow(s.b);
    }
    if (faces_.empty() && filaments_.empty()) bounds_ = Box{0, 0, 0, 0};

    // Connected components over faces and filaments: elements touch if they
    // share a vertex or a vertex of one lies on an edge of the other.
    size_t nf = faces_.size(), ns = filaments_.size();
    UnionFind uf(nf + ns);

    auto elem_points = [&](size_t e) {
        std::vector<Point> pts;
        if (e < nf) {
            pts = faces_[e].outer.pts;
            for (const Ring& h : faces_[e].holes)
                pts.insert(pts.end(), h.pts.begin(), h.pts.end());
        } else {
            pts = {filaments_[e - nf].a, filaments_[e - nf].b};
        }
        return pts;
    };
    auto point_on_elem = [&](size_t e, const Point& p) {
        if (e < nf) {
            const Face& f = faces_[e];
            auto on_ring = [&](const Ring& r) {
                size_t n = r.pts.size();
                for (size_t i = 0; i < n; ++i)
                    if (point_segment_dist_l2(p, {r.pts[i], r.pts[(i + 1) % n]}) <= kEta)
                        return true;
                return false;
            };
            if (point_in_face(f, p)) return true;
            if (on_ring(f.outer)) return true;
            for (const Ring& h : f.holes)
                if (on_ring(h)) return true;
            return false;
        }
        return point_segment_dist_l2(p, filaments_[e - nf]) <= kEta;
    };

    size_t total = nf + ns;
    for (size_t i = 0; i < total; ++i) {
        for (size_t j = i + 1; j < total; ++j) {
            if (uf.find(static_cast<int>(i)) == uf.find(static_cast<int>(j))) continue;
            bool touch = false;
            for (const Point& p : elem_points(i)) {
                if (point_on_elem(j, p)) { touch = true; break; }
            }
            if (!touch) {
                for (const Point& p : elem_points(j)) {
                    if (point_on_elem(i, p)) { touch = true; break; }
                }
            }
            if (touch) uf.unite(static_cast<int>(i), static_cast<int>(j));
        }
    }
    face_component_.assign(nf, -1);
    filament_component_.assign(ns, -1);
    std::map<int, int> remap;
    for (size_t e = 0; e < total; ++e) {
        int root = uf.find(static_cast<int>(e));
        auto [it, inserted] = remap.try_emplace(root, static_cast<int>(remap.size()));
        if (e < nf)
            face_component_[e] = it->second;
        else
            filament_component_[e - nf] = it->second;
    }
    component_count_ = static_cast<int>(remap.size());

    uint64_t h = 1469598103934665603ULL;
    for (const Face& f : faces_) {
        h = fnv1a(h, f.outer.pts.data(), f.outer.pts.size() * sizeof(Point));
        for (const Ring& r : f.holes) h = fnv1a(h, r.pts.data(), r.pts.size() * sizeof(Point));
    }
    for (const Segment& s : filaments_) h = fnv1a(h, &s, sizeof(Segment));
    fingerprint_ = h;
}

double PolygonalRegion::area() const {
    double a = 0.0;
    for (const Face& f : faces_) {
        a += f.outer.signed_area();
        for (const Ring& h : f.holes) a += h.signed_area();  // holes negative
    }
    return a;
}

double PolygonalRegion::perimeter() const {
    double len = 0.0;
    for_each_edge([&](const Point& a, const Point& b) { len += dist_l2(a, b); });
    for (const Segment& s : filaments_) len += dist_l2(s.a, s.b);
    return len;
}

size_t PolygonalRegion::vertex_count() const {
    size_t n = 0;
    for (const Face& f : faces_) {
        n += f.outer.pts.size();
        for (const Ring& h : f.holes) n += h.pts.size();
    }
    return n;
}

std::vector<Point> PolygonalRegion::node_points() const {
    std::vector<Point> pts;
    for (const Face& f : faces_) {
        pts.insert(pts.end(), f.outer.pts.begin(), f.outer.pts.end());
        for (const Ring& h : f.holes) pts.insert(pts.end(), h.pts.begin(), h.pts.end());
    }
    for (const Segment& s : filaments_) {
        pts.push_back(s.a);
        pts.push_back(s.b);
    }
    return pts;
}

Classification PolygonalRegion::classify(const Point& p, double eta) const {
    if (!bounds_.contains(p, eta) && !empty()) return {PointClass::Outside, -1};

    // Boundary first.
    for (size_t fi = 0; fi < faces_.size(); ++fi) {
        const Face& f = faces_[fi];
        Box fb = f.outer.bounds();
        fb.expand(eta);
        if (!fb.contains(p)) continue;
        auto on_ring = [&](const Ring& r) {
            size_t n = r.pts.size();
            for (size_t i = 0; i < n; ++i)
                if (point_segment_dist_l2(p, {r.pts[i], r.pts[(i + 1) % n]}) <= eta)
                    return true;
            return false;
        };
        if (on_ring(f.outer)) return {PointClass::Boundary, face_component_[fi]};
        for (const Ring& h : f.holes)
            if (on_ring(h)) return {PointClass::Boundary, face_component_[fi]};
    }
    for (size_t si = 0; si < filaments_.size(); ++si) {
        if (point_segment_dist_l2(p, filaments_[si]) <= eta)
            return {PointClass::Boundary, filament_component_[si]};
    }
    for (size_t fi = 0; fi < faces_.size(); ++fi) {
        if (point_in_face(faces_[fi], p))
            return {PointClass::Interior, face_component_[fi]};
    }
    return {PointClass::Outside, -1};
}

bool PolygonalRegion::contains_segment(const Point& a, const Point& b, double eta) const {
    if (classify(a, eta).cls == PointClass::Outside) return false;
    if (classify(b, eta).cls == PointClass::Outside) return false;
    if (near(a, b, eta)) return true;

    std::vector<double> ts{0.0, 1.0};
    Box sb = bbox_of({a, b});
    sb.expand(eta);
    for_each_edge([&](const Point& u, const Point& v) {
        Box eb = bbox_of({u, v});
        eb.expand(eta);
        if (eb.max_x < sb.min_x || eb.min_x > sb.max_x || eb.max_y < sb.min_y ||
            eb.min_y > sb.max_y)
            return;
        collect_hit_params(a, b, u, v, ts, eta);
    });
    for (const Segment& s : filaments_) collect_hit_params(a, b, s.a, s.b, ts, eta);

    std::sort(ts.begin(), ts.end());
    double seg_len = dist_l2(a, b);
    double teps = eta / std::max(seg_len, eta);
    Point d = b - a;
    for (size_t i = 1; i < ts.size(); ++i) {
        if (ts[i] - ts[i - 1] <= teps) continue;
        double tm = (ts[i] + ts[i - 1]) / 2;
        if (classify(a + d * tm, eta).cls == PointClass::Outside) return false;
    }
    return true;
}

PolygonalRegion make_box_region(const Box& b) {
    if (b.empty()) return {};
    Face f;
    f.outer.pts = {{b.min_x, b.min_y}, {b.max_x, b.min_y}, {b.max_x, b.max_y}, {b.min_x, b.max_y}};
    return PolygonalRegion({f});
}

namespace {

// Convex hull (monotone chain) used for edge dilation parts.
std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Point> hull(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    size_t lower = k + 1;
    for (size_t i = pts.size() - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

BgPoly hull_poly(const std::vector<Point>& pts) {
    std::vector<Point> h = convex_hull(pts);
    Face f;
    f.outer.pts = std::move(h);
    BgPoly poly = to_bg(f);
    bg::correct(poly);
    return poly;
}

BgMulti multi_union(BgMulti acc, const BgPoly& part) {
    BgMulti out;
    bg::union_(acc, part, out);
    return out;
}

// Maximal parameter intervals of segment ab lying inside region r.
std::vector<std::pair<double, double>> inside_intervals_impl(const PolygonalRegion& r,
                                                             const Point& a, const Point& b,
                                                             double eta) {
    std::vector<double> ts{0.0, 1.0};
    r.for_each_edge([&](const Point& u, const Point& v) { collect_hit_params(a, b, u, v, ts, eta); });
    for (const Segment& s : r.filaments()) collect_hit_params(a, b, s.a, s.b, ts, eta);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end(),
                         [&](double x, double y) { return std::abs(x - y) <= 1e-12; }),
             ts.end());
    Point d = b - a;
    std::vector<std::pair<double, double>> out;
    for (size_t i = 1; i < ts.size(); ++i) {
        double lo = ts[i - 1], hi = ts[i];
        if (hi <= 0.0 || lo >= 1.0) continue;
        lo = std::max(lo, 0.0);
        hi = std::min(hi, 1.0);
        if (hi - lo <= 0) continue;
        Point m = a + d * ((lo + hi) / 2);
        if (r.classify(m, eta).cls == PointClass::Outside) continue;
        if (!out.empty() && std::abs(out.back().second - lo) <= 1e-12)
            out.back().second = hi;
        else
            out.emplace_back(lo, hi);
    }
    return out;
}

}  // namespace

PolygonalRegion erode_to_free_space(const PolygonalRegion& w) {
    if (!w.has_area()) return {};
    Box ext = w.bounds();
    ext.expand(2.0);
    BgMulti wm = to_bg(w.faces());
    BgMulti complement;
    bg::difference(to_bg(make_box_region(ext).faces()), wm, complement);

    BgMulti dilated = complement;
    for (const BgPoly& poly : complement) {
        auto dilate_ring = [&](const auto& ring) {
            for (size_t i = 0; i + 1 < ring.size(); ++i) {
                Point u{bg::get<0>(ring[i]), bg::get<1>(ring[i])};
                Point v{bg::get<0>(ring[i + 1]), bg::get<1>(ring[i + 1])};
                std::vector<Point> pts;
                for (double sx : {-1.0, 1.0})
                    for (double sy : {-1.0, 1.0}) {
                        pts.push_back({u.x + sx, u.y + sy});
                        pts.push_back({v.x + sx, v.y + sy});
                    }
                dilated = multi_union(std::move(dilated), hull_poly(pts));
            }
        };
        dilate_ring(poly.outer());
        for (const auto& inner : poly.inners()) dilate_ring(inner);
    }
    BgMulti result;
    bg::difference(wm, dilated, result);
    return PolygonalRegion(from_bg(result));
}

PolygonalRegion subtract_robot_square(const PolygonalRegion& f, const Point& p) {
    Box sq{p.x - 2, p.y - 2, p.x + 2, p.y + 2};
    Box fb = f.bounds();
    fb.expand(kEta);
    if (sq.min_x > fb.max_x || sq.max_x < fb.min_x || sq.min_y > fb.max_y ||
        sq.max_y < fb.min_y)
        return f;

    BgMulti diff;
    bg::difference(to_bg(f.faces()), to_bg(make_box_region(sq).faces()), diff);
    std::vector<Face> faces = from_bg(diff);
    PolygonalRegion result_faces(faces);

    std::vector<Segment> filaments;
    // Boundary-only remainder: parts of the square boundary inside f that are
    // not adjacent to any remaining face.
    Point corners[4] = {{sq.min_x, sq.min_y}, {sq.max_x, sq.min_y},
                        {sq.max_x, sq.max_y}, {sq.min_x, sq.max_y}};
    for (int e = 0; e < 4; ++e) {
        Point a = corners[e], b = corners[(e + 1) % 4];
        auto inside = inside_intervals_impl(f, a, b, kEta);
        if (inside.empty()) continue;
        // Parameter intervals of result-face edges collinear with this edge.
        std::vector<std::pair<double, double>> covered;
        Point d = b - a;
        double len2 = dot(d, d);
        result_faces.for_each_edge([&](const Point& u, const Point& v) {
            if (point_segment_dist_l2(u, {a, b}) > 2 * kEta) return;
            if (point_segment_dist_l2(v, {a, b}) > 2 * kEta) return;
            double tu = dot(u - a, d) / len2;
            double tv = dot(v - a, d) / len2;
            covered.emplace_back(std::min(tu, tv), std::max(tu, tv));
        });
        std::sort(covered.begin(), covered.end());
        for (auto [lo, hi] : inside) {
            double cur = lo;
            for (auto [clo, chi] : covered) {
                if (chi <= cur) continue;
                if (clo >= hi) break;
                if (clo > cur) filaments.push_back({a + d * cur, a + d * clo});
                cur = std::max(cur, chi);
                if (cur >= hi) break;
            }
            if (cur < hi) filaments.push_back({a + d * cur, a + d * hi});
        }
    }
    // Clip existing filaments against the open square.
    for (const Segment& s : f.filaments()) {
        if (!segment_crosses_open_box(s.a, s.b, sq)) {
            filaments.push_back(s);
            continue;
        }
        // Keep the sub-parts at L-infinity distance >= 2 from p.
        std::vector<double> ts{0.0, 1.0};
        Point d = s.b - s.a;
        for (int e = 0; e < 4; ++e)
            collect_hit_params(s.a, s.b, corners[e], corners[(e + 1) % 4], ts);
        std::sort(ts.begin(), ts.end());
        for (size_t i = 1; i < ts.size(); ++i) {
            double lo = ts[i - 1], hi = ts[i];
            if (hi - lo <= 1e-12) continue;
            Point m = s.a + d * ((lo + hi) / 2);
            if (linf_distance(m, p) >= 2.0 - kEta)
                filaments.push_back({s.a + d * lo, s.a + d * hi});
        }
    }
    return PolygonalRegion(std::move(faces), std::move(filaments));
}

PolygonalRegion intersect_box(const PolygonalRegion& r, const Box& b) {
    if (b.empty() || r.empty()) return {};
    BgMulti out;
    bg::intersection(to_bg(r.faces()), to_bg(make_box_region(b).faces()), out);
    std::vector<Segment> filaments;
    for (const Segment& s : r.filaments()) {
        std::vector<double> ts{0.0, 1.0};
        Point d = s.b - s.a;
        Point corners[4] = {{b.min_x, b.min_y}, {b.max_x, b.min_y},
                            {b.max_x, b.max_y}, {b.min_x, b.max_y}};
        for (int e = 0; e < 4; ++e)
            collect_hit_params(s.a, s.b, corners[e], corners[(e + 1) % 4], ts);
        std::sort(ts.begin(), ts.end());
        for (size_t i = 1; i < ts.size(); ++i) {
            double lo = ts[i - 1], hi = ts[i];
            if (hi - lo <= 1e-12) continue;
            Point m = s.a + d * ((lo + hi) / 2);
            if (b.contains(m, kEta)) filaments.push_back({s.a + d * lo, s.a + d * hi});
        }
    }
    return PolygonalRegion(from_bg(out), std::move(filaments));
}

PolygonalRegion component_containing(const PolygonalRegion& r, const Point& p, double eta) {
    Classification c = r.classify(p, eta);
    if (c.cls == PointClass::Outside) return {};
    std::vector<Face> faces;
    std::vector<Segment> filaments;
    for (size_t i = 0; i < r.faces().size(); ++i)
        if (r.face_component(i) == c.component) faces.push_back(r.faces()[i]);
    for (size_t i = 0; i < r.filaments().size(); ++i) {
        // Recheck against the connected component id of the filament.
        Classification fc = r.classify(r.filaments()[i].a, eta);
        if (fc.component == c.component) filaments.push_back(r.filaments()[i]);
    }
    return PolygonalRegion(std::move(faces), std::move(filaments));
}

double symmetric_difference_area(const PolygonalRegion& a, const PolygonalRegion& b) {
    BgMulti out;
    bg::sym_difference(to_bg(a.faces()), to_bg(b.faces()), out);
    return std::abs(bg::area(out));
}

bool region_equal(const PolygonalRegion& a, const PolygonalRegion& b, double eta) {
    double per = std::max(a.perimeter() + b.perimeter(), 1.0);
    return symmetric_difference_area(a, b) < eta * per;
}

std::vector<std::pair<double, double>> inside_intervals(const PolygonalRegion& r,
                                                        const Point& a, const Point& b,
                                                        double eta) {
    return inside_intervals_impl(r, a, b, eta);
}

}  // namespace mrmp
