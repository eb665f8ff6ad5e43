#include "mrmp/corridors.hpp"

#include <algorithm>
#include <cmath>

namespace mrmp {

namespace {

constexpr double kGeomEps = 1e-9;

struct EdgeRec {
    Point a, b;
    Box bb;
};

struct Quad {
    std::array<Point, 4> pts;  // ccw
};

Quad make_ccw_quad(const Point& p0, const Point& p1, const Point& p2, const Point& p3) {
    Quad q{{p0, p1, p2, p3}};
    double a2 = 0.0;
    for (int i = 0; i < 4; ++i) a2 += cross(q.pts[i], q.pts[(i + 1) % 4]);
    if (a2 < 0) std::reverse(q.pts.begin(), q.pts.end());
    return q;
}

bool point_in_quad(const Quad& q, const Point& p, double eps) {
    for (int i = 0; i < 4; ++i) {
        Point e = q.pts[(i + 1) % 4] - q.pts[i];
        if (cross(e, p - q.pts[i]) < -eps * std::max(1.0, norm_l2(e))) return false;
    }
    return true;
}

bool point_strictly_in_quad(const Quad& q, const Point& p, double eps) {
    for (int i = 0; i < 4; ++i) {
        Point e = q.pts[(i + 1) % 4] - q.pts[i];
        double len = norm_l2(e);
        if (len <= eps) continue;  // degenerate side
        if (cross(e, p - q.pts[i]) <= eps * len) return false;
    }
    return true;
}

// Clip segment ab to the quad; returns the parameter range on ab or nullopt.
std::optional<std::pair<double, double>> clip_to_quad(const Quad& q, const Point& a,
                                                      const Point& b) {
    double t0 = 0.0, t1 = 1.0;
    Point d = b - a;
    for (int i = 0; i < 4; ++i) {
        Point v0 = q.pts[i];
        Point e = q.pts[(i + 1) % 4] - v0;
        double f0 = cross(e, a - v0);
        double fd = cross(e, d);
        // inside: f0 + t*fd >= 0
        if (std::abs(fd) < 1e-300) {
            if (f0 < 0) return std::nullopt;
            continue;
        }
        double r = -f0 / fd;
        if (fd > 0) {
            if (r > t0) t0 = r;
        } else {
            if (r < t1) t1 = r;
        }
        if (t0 > t1) return std::nullopt;
    }
    return std::make_pair(t0, t1);
}

// True if an axis-aligned square (given by its closed box) fits inside f.
bool square_fits(const PolygonalRegion& f, const Box& sq, double eps) {
    Point cpts[5] = {{sq.min_x, sq.min_y}, {sq.max_x, sq.min_y}, {sq.max_x, sq.max_y},
                     {sq.min_x, sq.max_y}, {(sq.min_x + sq.max_x) / 2, (sq.min_y + sq.max_y) / 2}};
    for (const Point& p : cpts)
        if (!f.contains(p, 2 * eps)) return false;
    Box inner = sq;
    inner.expand(-eps);
    bool crossed = false;
    f.for_each_edge([&](const Point& u, const Point& v) {
        if (!crossed && segment_crosses_open_box(u, v, inner)) crossed = true;
    });
    return !crossed;
}

struct DirInfo {
    Point u;       // corridor direction (unit)
    bool diagonal; // portal normal is diagonal
    double linf_per_s;  // L-infinity distance between portal lines per unit s
};

}  // namespace

bool Corridor::contains(const Point& p, double eps) const {
    return point_in_quad(make_ccw_quad(blocker_i.a, blocker_j.a, blocker_j.b, blocker_i.b), p,
                         eps);
}

std::optional<std::array<Point, 4>> Corridor::sanctum() const {
    if (length < 20.0 - kGeomEps) return std::nullopt;
    // Shift fraction along the corridor corresponding to L-infinity offset 10.
    double f = 10.0 / length;
    auto lerp = [](const Point& a, const Point& b, double t) {
        return Point{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
    };
    Point i1 = lerp(blocker_i.a, blocker_i.b, f);
    Point i2 = lerp(blocker_i.a, blocker_i.b, 1.0 - f);
    Point j1 = lerp(blocker_j.a, blocker_j.b, f);
    Point j2 = lerp(blocker_j.a, blocker_j.b, 1.0 - f);
    return std::array<Point, 4>{i1, j1, j2, i2};
}

bool AnchorSet::contains(const Point& p, double eps) const {
    for (const Point& q : points)
        if (near(p, q, eps)) return true;
    return false;
}

double AnchorSet::linf_distance_to(const Point& p) const {
    double best = std::numeric_limits<double>::max();
    for (const Point& q : points) best = std::min(best, linf_distance(p, q));
    return best;
}

std::vector<Corridor> enumerate_corridors(const PolygonalRegion& f) {
    std::vector<Corridor> out;
    if (!f.has_area()) return out;

    std::vector<EdgeRec> edges;
    f.for_each_edge([&](const Point& a, const Point& b) {
        Box bb = bbox_of({a, b});
        edges.push_back({a, b, bb});
    });
    std::vector<Point> vertices = f.node_points();

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const DirInfo dirs[4] = {
        {{1, 0}, false, 1.0},
        {{0, 1}, false, 1.0},
        {{inv_sqrt2, inv_sqrt2}, true, inv_sqrt2},
        {{-inv_sqrt2, inv_sqrt2}, true, inv_sqrt2},
    };

    for (size_t i = 0; i < edges.size(); ++i) {
        for (size_t j = i + 1; j < edges.size(); ++j) {
            // Proximity prefilter: portals are short, so blockers are close.
            const EdgeRec &ei = edges[i], &ej = edges[j];
            double gapx = std::max({ei.bb.min_x - ej.bb.max_x, ej.bb.min_x - ei.bb.max_x, 0.0});
            double gapy = std::max({ei.bb.min_y - ej.bb.max_y, ej.bb.min_y - ei.bb.max_y, 0.0});
            if (std::max(gapx, gapy) > 4.0 + kGeomEps) continue;

            bool ei_axis = near(ei.a.x, ei.b.x, kGeomEps) || near(ei.a.y, ei.b.y, kGeomEps);
            bool ej_axis = near(ej.a.x, ej.b.x, kGeomEps) || near(ej.a.y, ej.b.y, kGeomEps);

            for (const DirInfo& dir : dirs) {
                // Diagonal corridors only arise from opposite-corner contacts,
                // which axis-parallel blockers never force (the contact vertex
                // can be re-chosen to make the direction axis-parallel).
                if (dir.diagonal && (ei_axis || ej_axis)) continue;

                const Point& u = dir.u;
                Point di = ei.b - ei.a, dj = ej.b - ej.a;
                double si_a = dot(ei.a, u), si_b = dot(ei.b, u);
                double sj_a = dot(ej.a, u), sj_b = dot(ej.b, u);
                double proj_i = si_b - si_a, proj_j = sj_b - sj_a;
                if (std::abs(proj_i) < kGeomEps || std::abs(proj_j) < kGeomEps)
                    continue;  // blocker parallel to portals
                double lo = std::max(std::min(si_a, si_b), std::min(sj_a, sj_b));
                double hi = std::min(std::max(si_a, si_b), std::max(sj_a, sj_b));
                if (hi - lo < kGeomEps) continue;

                // Point on each edge at offset s.
                auto pt_i = [&](double s) { return ei.a + di * ((s - si_a) / proj_i); };
                auto pt_j = [&](double s) { return ej.a + dj * ((s - sj_a) / proj_j); };

                // Portal L-infinity length is max of two |linear| functions of
                // s; restrict to <= 2.
                Point g0 = pt_i(lo) - pt_j(lo);
                Point g1 = pt_i(hi) - pt_j(hi);
                double span = hi - lo;
                auto clip_abs_linear = [&](double v0, double v1, double& l, double& h) {
                    // |v0 + (s-lo)/span*(v1-v0)| <= 2 on [l,h]
                    double dv = (v1 - v0) / span;
                    if (std::abs(dv) < 1e-15) {
                        if (std::abs(v0) > 2.0 + kGeomEps) h = l - 1;
                        return;
                    }
                    double t1 = (-2.0 - v0) / dv, t2 = (2.0 - v0) / dv;
                    if (t1 > t2) std::swap(t1, t2);
                    l = std::max(l, lo + t1);
                    h = std::min(h, lo + t2);
                };
                double l2lo = lo, l2hi = hi;
                clip_abs_linear(g0.x, g1.x, l2lo, l2hi);
                if (l2hi - l2lo < kGeomEps) continue;
                clip_abs_linear(g0.y, g1.y, l2lo, l2hi);
                if (l2hi - l2lo < kGeomEps) continue;

                // Sidedness: the free interior lies to the left of each
                // directed edge; the opposite blocker must be on that side.
                double smid = (l2lo + l2hi) / 2;
                Point pi_m = pt_i(smid), pj_m = pt_j(smid);
                if (cross(di, pj_m - pi_m) < kGeomEps) continue;
                if (cross(dj, pi_m - pj_m) < kGeomEps) continue;

                // Portal degenerate to a point inside the range splits it.
                std::vector<double> blocked_points;
                auto portal_len = [&](double s) { return norm_linf(pt_i(s) - pt_j(s)); };
                // Zeros of the two linear functions.
                for (auto [v0, v1] : {std::pair{g0.x, g1.x}, std::pair{g0.y, g1.y}}) {
                    double dv = (v1 - v0) / span;
                    if (std::abs(dv) < 1e-15) continue;
                    double sz = lo - v0 / dv;
                    if (sz > l2lo + kGeomEps && sz < l2hi - kGeomEps &&
                        portal_len(sz) < kGeomEps)
                        blocked_points.push_back(sz);
                }

                Quad whole = make_ccw_quad(pt_i(l2lo), pt_j(l2lo), pt_j(l2hi), pt_i(l2hi));
                // Vertices strictly inside block a single offset.
                for (const Point& v : vertices) {
                    if (!point_strictly_in_quad(whole, v, kGeomEps)) continue;
                    double sv = dot(v, u);
                    if (sv > l2lo + kGeomEps && sv < l2hi - kGeomEps)
                        blocked_points.push_back(sv);
                }
                // Other edges passing strictly inside block their s-range.
                std::vector<std::pair<double, double>> blocked_ranges;
                for (size_t k = 0; k < edges.size(); ++k) {
                    if (k == i || k == j) continue;
                    auto clip = clip_to_quad(whole, edges[k].a, edges[k].b);
                    if (!clip) continue;
                    auto [t0, t1] = *clip;
                    if (t1 - t0 < 1e-9) continue;
                    Point d = edges[k].b - edges[k].a;
                    Point mid = edges[k].a + d * ((t0 + t1) / 2);
                    if (!point_strictly_in_quad(whole, mid, kGeomEps)) continue;
                    double sa = dot(edges[k].a + d * t0, u);
                    double sb = dot(edges[k].a + d * t1, u);
                    if (sa > sb) std::swap(sa, sb);
                    blocked_ranges.emplace_back(sa, sb);
                }

                // Assemble candidate maximal intervals.
                std::vector<double> cuts{l2lo, l2hi};
                for (double s : blocked_points) cuts.push_back(s);
                for (auto [a, b] : blocked_ranges) {
                    cuts.push_back(a);
                    cuts.push_back(b);
                }
                std::sort(cuts.begin(), cuts.end());
                for (size_t c = 0; c + 1 < cuts.size(); ++c) {
                    double s1 = cuts[c], s2 = cuts[c + 1];
                    if (s2 - s1 < 1e-7) continue;
                    double sm = (s1 + s2) / 2;
                    bool blocked = false;
                    for (auto [a, b] : blocked_ranges)
                        if (sm > a + kGeomEps && sm < b - kGeomEps) { blocked = true; break; }
                    if (blocked) continue;
                    if (portal_len(sm) < kGeomEps) continue;

                    // Supporting square at the midpoint portal: the portal is
                    // a side (axis direction) or the diagonal of the square.
                    Point a_m = pt_i(sm), b_m = pt_j(sm);
                    bool supported = false;
                    if (dir.diagonal) {
                        Box sq{std::min(a_m.x, b_m.x), std::min(a_m.y, b_m.y),
                               std::max(a_m.x, b_m.x), std::max(a_m.y, b_m.y)};
                        supported = square_fits(f, sq, kGeomEps);
                    } else {
                        double side = std::abs(dir.u.x) > 0.5 ? std::abs(a_m.y - b_m.y)
                                                              : std::abs(a_m.x - b_m.x);
                        for (double sgn : {1.0, -1.0}) {
                            Point ext = u * (side * sgn);
                            Box sq{std::min({a_m.x, b_m.x, a_m.x + ext.x, b_m.x + ext.x}),
                                   std::min({a_m.y, b_m.y, a_m.y + ext.y, b_m.y + ext.y}),
                                   std::max({a_m.x, b_m.x, a_m.x + ext.x, b_m.x + ext.x}),
                                   std::max({a_m.y, b_m.y, a_m.y + ext.y, b_m.y + ext.y})};
                            if (square_fits(f, sq, kGeomEps)) { supported = true; break; }
                        }
                    }
                    if (!supported) continue;

                    // Portal midpoint must be inside the free space.
                    if (f.classify((a_m + b_m) * 0.5).cls == PointClass::Outside) continue;

                    Corridor K;
                    K.blocker_i = {pt_i(s1), pt_i(s2)};
                    K.blocker_j = {pt_j(s1), pt_j(s2)};
                    K.portal_l = {pt_i(s1), pt_j(s1)};
                    K.portal_r = {pt_i(s2), pt_j(s2)};
                    K.direction = u;
                    K.length = (s2 - s1) * dir.linf_per_s;
                    K.edge_i = static_cast<int>(i);
                    K.edge_j = static_cast<int>(j);
                    if (K.length < 1e-7) continue;
                    out.push_back(K);
                }
            }
        }
    }

    // Overlap filter: maximal corridors are pairwise interior-disjoint; when a
    // numerically marginal duplicate overlaps a longer one, drop the shorter.
    std::sort(out.begin(), out.end(), [](const Corridor& a, const Corridor& b) {
        if (a.length != b.length) return a.length > b.length;
        return std::tie(a.edge_i, a.edge_j) < std::tie(b.edge_i, b.edge_j);
    });
    std::vector<Corridor> kept;
    for (const Corridor& k : out) {
        bool overlaps = false;
        Quad qk = make_ccw_quad(k.blocker_i.a, k.blocker_j.a, k.blocker_j.b, k.blocker_i.b);
        for (const Corridor& other : kept) {
            Quad qo = make_ccw_quad(other.blocker_i.a, other.blocker_j.a, other.blocker_j.b,
                                    other.blocker_i.b);
            Point mid = (k.blocker_i.a + k.blocker_j.b) * 0.5;
            Point mid2 = (other.blocker_i.a + other.blocker_j.b) * 0.5;
            if (point_strictly_in_quad(qo, mid, 1e-7) ||
                point_strictly_in_quad(qk, mid2, 1e-7)) {
                overlaps = true;
                break;
            }
        }
        if (!overlaps) kept.push_back(k);
    }
    std::sort(kept.begin(), kept.end(), [](const Corridor& a, const Corridor& b) {
        return std::tie(a.edge_i, a.edge_j, a.length) < std::tie(b.edge_i, b.edge_j, b.length);
    });
    return kept;
}

AnchorSet build_anchor_set(const PolygonalRegion& f, const std::vector<Corridor>& corridors,
                           const std::vector<Point>& placements) {
    AnchorSet x;
    auto add = [&](const Point& p) {
        if (!x.contains(p, kEta)) x.points.push_back(snap_point(p));
    };
    for (const Point& p : f.node_points()) add(p);
    for (const Point& p : placements) add(p);
    for (const Corridor& k : corridors) {
        add(k.portal_l.a);
        add(k.portal_l.b);
        add(k.portal_r.a);
        add(k.portal_r.b);
    }
    return x;
}

}  // namespace mrmp
