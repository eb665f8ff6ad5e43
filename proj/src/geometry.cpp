#include "mrmp/geometry.hpp"

#include <algorithm>

namespace mrmp {

double point_segment_dist_l2(const Point& p, const Segment& s, double* t_out) {
    Point d = s.b - s.a;
    double len2 = dot(d, d);
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
    if (t_out) *t_out = t;
    return dist_l2(p, s.a + d * t);
}

double point_segment_dist_linf(const Point& p, const Segment& s) {
    // f(t) = max(|ax + t*dx|, |ay + t*dy|) is convex piecewise linear; its
    // minimum over [0,1] lies at 0, 1, a zero of either coordinate, or a
    // crossing of the two absolute-value terms.
    double ax = s.a.x - p.x, ay = s.a.y - p.y;
    double dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
    double cand[6];
    int n = 0;
    cand[n++] = 0.0;
    cand[n++] = 1.0;
    if (dx != 0.0) cand[n++] = -ax / dx;
    if (dy != 0.0) cand[n++] = -ay / dy;
    // |ax + t dx| = |ay + t dy| -> ax + t dx = +-(ay + t dy)
    double d1 = dx - dy, d2 = dx + dy;
    if (d1 != 0.0) cand[n++] = (ay - ax) / d1;
    if (d2 != 0.0) cand[n++] = (-ay - ax) / d2;
    double best = std::numeric_limits<double>::max();
    for (int i = 0; i < n; ++i) {
        double t = std::clamp(cand[i], 0.0, 1.0);
        double v = std::max(std::abs(ax + t * dx), std::abs(ay + t * dy));
        best = std::min(best, v);
    }
    return best;
}

namespace {

// Signed area orientation with absolute tolerance scaled by segment extents.
double orient(const Point& a, const Point& b, const Point& c) {
    return cross(b - a, c - a);
}

bool param_on_segment(double t, double eps) { return t >= -eps && t <= 1.0 + eps; }

}  // namespace

SegXResult segment_intersect(const Point& p, const Point& q, const Point& u,
                             const Point& v, double eps) {
    SegXResult r;
    Point d1 = q - p, d2 = v - u;
    double denom = cross(d1, d2);
    double scale = std::max({norm_linf(d1), norm_linf(d2), 1.0});
    double area_eps = eps * scale;

    double o_u = orient(p, q, u);
    double o_v = orient(p, q, v);
    double o_p = orient(u, v, p);
    double o_q = orient(u, v, q);

    if (std::abs(denom) <= area_eps * 1e-3 && std::abs(o_u) <= area_eps && std::abs(o_v) <= area_eps) {
        // Collinear: project u,v onto pq.
        double len2 = dot(d1, d1);
        if (len2 == 0.0) {
            // pq degenerate point
            if (point_segment_dist_l2(p, Segment{u, v}) <= eps) {
                r.kind = SegXKind::Touch;
                r.t0 = r.t1 = 0.0;
            }
            return r;
        }
        double tu = dot(u - p, d1) / len2;
        double tv = dot(v - p, d1) / len2;
        double lo = std::min(tu, tv), hi = std::max(tu, tv);
        lo = std::max(lo, 0.0);
        hi = std::min(hi, 1.0);
        if (hi < lo - eps) return r;
        if (hi - lo <= eps) {
            r.kind = SegXKind::Touch;
            r.t0 = r.t1 = std::clamp((lo + hi) / 2, 0.0, 1.0);
        } else {
            r.kind = SegXKind::Overlap;
            r.t0 = lo;
            r.t1 = hi;
        }
        return r;
    }
    if (denom == 0.0) return r;  // parallel, not collinear

    double t = cross(u - p, d2) / denom;   // on pq
    double s = cross(u - p, d1) / denom;   // on uv
    double teps = eps / std::max(norm_l2(d1), eps);
    double seps = eps / std::max(norm_l2(d2), eps);
    if (!param_on_segment(t, teps) || !param_on_segment(s, seps)) return r;
    r.t0 = r.t1 = std::clamp(t, 0.0, 1.0);
    bool interior_t = t > teps && t < 1.0 - teps;
    bool interior_s = s > seps && s < 1.0 - seps;
    r.kind = (interior_t && interior_s) ? SegXKind::Proper : SegXKind::Touch;
    return r;
}

bool segment_crosses_open_box(const Point& p, const Point& q, const Box& box, double eps) {
    // Liang-Barsky clip of pq against the closed box; the clipped portion
    // meets the open interior iff it has positive length inside the strict
    // inequalities (or a clipped point is strictly inside).
    double t0 = 0.0, t1 = 1.0;
    double dx = q.x - p.x, dy = q.y - p.y;
    auto clip = [&](double pi, double qi) {
        if (pi == 0.0) return qi >= 0.0;
        double r = qi / pi;
        if (pi < 0.0) {
            if (r > t1) return false;
            if (r > t0) t0 = r;
        } else {
            if (r < t0) return false;
            if (r < t1) t1 = r;
        }
        return true;
    };
    if (!clip(-dx, p.x - box.min_x)) return false;
    if (!clip(dx, box.max_x - p.x)) return false;
    if (!clip(-dy, p.y - box.min_y)) return false;
    if (!clip(dy, box.max_y - p.y)) return false;
    if (t1 < t0) return false;
    // Midpoint of the clipped range must be strictly interior.
    double tm = (t0 + t1) / 2;
    Point m{p.x + tm * dx, p.y + tm * dy};
    return m.x > box.min_x + eps && m.x < box.max_x - eps &&
           m.y > box.min_y + eps && m.y < box.max_y - eps;
}

void collect_hit_params(const Point& p, const Point& q, const Point& u, const Point& v,
                        std::vector<double>& ts, double eps) {
    SegXResult r = segment_intersect(p, q, u, v, eps);
    switch (r.kind) {
        case SegXKind::None: break;
        case SegXKind::Proper:
        case SegXKind::Touch: ts.push_back(r.t0); break;
        case SegXKind::Overlap:
            ts.push_back(r.t0);
            ts.push_back(r.t1);
            break;
    }
}

}  // namespace mrmp
