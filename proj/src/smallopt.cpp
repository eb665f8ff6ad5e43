#include "mrmp/smallopt.hpp"

#include <algorithm>
#include <cmath>

#include "mrmp/geodesic.hpp"

namespace mrmp {

namespace {

constexpr double kTol = 1e-9;

Box quarter_box_intersection(const Point& u, const Point& v) {
    Box bu{u.x - 0.25, u.y - 0.25, u.x + 0.25, u.y + 0.25};
    Box bv{v.x - 0.25, v.y - 0.25, v.x + 0.25, v.y + 0.25};
    return bu.intersect(bv);
}

// Axis reflections, transposition, and the robot swap used to reach the
// orientation Step III assumes.
struct FrameTransform {
    bool swap_xy = false;
    bool neg_x = false;
    bool neg_y = false;
    bool swap_robots = false;

    Point apply(Point p) const {
        if (swap_xy) std::swap(p.x, p.y);
        if (neg_x) p.x = -p.x;
        if (neg_y) p.y = -p.y;
        return p;
    }
    Point invert(Point p) const {
        if (neg_y) p.y = -p.y;
        if (neg_x) p.x = -p.x;
        if (swap_xy) std::swap(p.x, p.y);
        return p;
    }
    Configuration apply(const Configuration& c) const {
        Configuration out{apply(c.a), apply(c.b)};
        if (swap_robots) std::swap(out.a, out.b);
        return out;
    }
    Robot invert(Robot r) const { return swap_robots ? other(r) : r; }

    PolygonalRegion apply(const PolygonalRegion& r) const {
        bool reverse = (static_cast<int>(swap_xy) + neg_x + neg_y) % 2 == 1;
        std::vector<Face> faces;
        for (const Face& f : r.faces()) {
            Face g;
            for (const Point& p : f.outer.pts) g.outer.pts.push_back(apply(p));
            if (reverse) std::reverse(g.outer.pts.begin(), g.outer.pts.end());
            for (const Ring& h : f.holes) {
                Ring hh;
                for (const Point& p : h.pts) hh.pts.push_back(apply(p));
                if (reverse) std::reverse(hh.pts.begin(), hh.pts.end());
                g.holes.push_back(std::move(hh));
            }
            faces.push_back(std::move(g));
        }
        std::vector<Segment> fil;
        for (const Segment& s : r.filaments()) fil.push_back({apply(s.a), apply(s.b)});
        return PolygonalRegion(std::move(faces), std::move(fil));
    }

    Plan invert(const Plan& p) const {
        Plan out;
        out.source = {invert(p.source.a), invert(p.source.b)};
        out.target = {invert(p.target.a), invert(p.target.b)};
        if (swap_robots) {
            std::swap(out.source.a, out.source.b);
            std::swap(out.target.a, out.target.b);
        }
        for (const Move& m : p.moves) {
            Move mm;
            mm.robot = invert(m.robot);
            mm.parked = invert(m.parked);
            for (const Point& q : m.path) mm.path.push_back(invert(q));
            out.moves.push_back(std::move(mm));
        }
        return out;
    }
};

struct ScoredPlan {
    double l1 = std::numeric_limits<double>::max();
    double l2 = std::numeric_limits<double>::max();
    Plan plan;
};

void consider(std::optional<ScoredPlan>& best, ScoredPlan cand) {
    if (!best || cand.l1 < best->l1 - kTol ||
        (std::abs(cand.l1 - best->l1) <= kTol && cand.l2 < best->l2))
        best = std::move(cand);
}

// Step II for a fixed order: `first` moves from source to target inside its
// box component while `second` is parked at its source, then `second` moves.
std::optional<ScoredPlan> step2_order(const PolygonalRegion& comp_first,
                                      const PolygonalRegion& comp_second,
                                      const Configuration& s, const Configuration& t,
                                      Robot first) {
    Robot second = other(first);
    PolygonalRegion r1 = component_containing(
        subtract_robot_square(comp_first, s.of(second)), s.of(first));
    if (r1.empty() || r1.classify(t.of(first)).cls == PointClass::Outside) return std::nullopt;
    PolygonalRegion r2 = component_containing(
        subtract_robot_square(comp_second, t.of(first)), t.of(second));
    if (r2.empty() || r2.classify(s.of(second)).cls == PointClass::Outside) return std::nullopt;

    auto p1 = xy_monotone_path(r1, s.of(first), t.of(first));
    auto p2 = xy_monotone_path(r2, s.of(second), t.of(second));
    if (!p1 || !p2) return std::nullopt;

    ScoredPlan sp;
    sp.plan.source = s;
    sp.plan.target = t;
    sp.plan.moves.push_back({first, *p1, s.of(second)});
    sp.plan.moves.push_back({second, *p2, t.of(first)});
    auto [l2, l1] = plan_cost(sp.plan);
    sp.l1 = l1;
    sp.l2 = l2;
    return sp;
}

// Step III in the normalized frame: s is x-separated with B left of A, t is
// y-separated with B below A. A moves first.
std::optional<ScoredPlan> step3_normalized(const PolygonalRegion& comp_a,
                                           const PolygonalRegion& comp_b,
                                           const Configuration& s, const Configuration& t) {
    const Point phi{1.0, 1.0};
    PolygonalRegion ca = component_containing(subtract_robot_square(comp_a, s.b), s.a);
    PolygonalRegion cb = component_containing(subtract_robot_square(comp_b, t.a), t.b);
    if (ca.empty() || cb.empty()) return std::nullopt;

    // Vertex x-coordinates of the overlay of (ca - phi), (cb + phi), and the
    // axis-parallel lines through the four placements shifted by -phi/+phi.
    std::vector<Segment> ea, eb;
    ca.for_each_edge([&](const Point& u, const Point& v) { ea.push_back({u - phi, v - phi}); });
    for (const Segment& f : ca.filaments()) ea.push_back({f.a - phi, f.b - phi});
    cb.for_each_edge([&](const Point& u, const Point& v) { eb.push_back({u + phi, v + phi}); });
    for (const Segment& f : cb.filaments()) eb.push_back({f.a + phi, f.b + phi});

    std::vector<double> vlines{s.a.x - 1, t.a.x - 1, s.b.x + 1, t.b.x + 1};
    std::vector<double> hlines{s.a.y - 1, t.a.y - 1, s.b.y + 1, t.b.y + 1};

    std::vector<double> xs;
    for (double c : vlines) xs.push_back(c);
    auto add_seg_vertices = [&](const std::vector<Segment>& es) {
        for (const Segment& e : es) {
            xs.push_back(e.a.x);
            xs.push_back(e.b.x);
        }
    };
    add_seg_vertices(ea);
    add_seg_vertices(eb);
    for (const Segment& e1 : ea) {
        for (const Segment& e2 : eb) {
            SegXResult r = segment_intersect(e1.a, e1.b, e2.a, e2.b);
            if (r.kind == SegXKind::Proper || r.kind == SegXKind::Touch) {
                Point d = e1.b - e1.a;
                xs.push_back(e1.a.x + d.x * r.t0);
            }
        }
    }
    auto add_hline_hits = [&](const std::vector<Segment>& es) {
        for (const Segment& e : es) {
            for (double y : hlines) {
                double y0 = e.a.y, y1 = e.b.y;
                if ((y0 - y) * (y1 - y) > 0 || std::abs(y1 - y0) < 1e-15) continue;
                double tt = (y - y0) / (y1 - y0);
                xs.push_back(e.a.x + (e.b.x - e.a.x) * tt);
            }
        }
    };
    add_hline_hits(ea);
    add_hline_hits(eb);

    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](double a, double b) { return std::abs(a - b) <= 1e-9; }),
             xs.end());

    // For each column, the candidate y-values are the crossings of the column
    // with every overlay edge and line.
    auto column_ys = [&](double x) {
        std::vector<double> ys = hlines;
        auto hit = [&](const std::vector<Segment>& es) {
            for (const Segment& e : es) {
                double x0 = e.a.x, x1 = e.b.x;
                if (std::abs(x1 - x0) < 1e-15) {
                    if (std::abs(x0 - x) <= 1e-9) {
                        ys.push_back(e.a.y);
                        ys.push_back(e.b.y);
                    }
                    continue;
                }
                if ((x0 - x) * (x1 - x) > 1e-18) continue;
                double tt = (x - x0) / (x1 - x0);
                if (tt < -1e-9 || tt > 1 + 1e-9) continue;
                ys.push_back(e.a.y + (e.b.y - e.a.y) * std::clamp(tt, 0.0, 1.0));
            }
        };
        hit(ea);
        hit(eb);
        std::sort(ys.begin(), ys.end());
        ys.erase(std::unique(ys.begin(), ys.end(),
                             [](double a, double b) { return std::abs(a - b) <= 1e-9; }),
                 ys.end());
        return ys;
    };

    // Candidate pairs on a common vertical line, p~A above p~B, both mapped
    // back into their components; minimize the L1 cost in closed form.
    struct BestPair {
        double l1 = std::numeric_limits<double>::max();
        double l2 = std::numeric_limits<double>::max();
        Point pa, pb;
        bool found = false;
    } best;
    auto l1_cost = [&](const Point& pa, const Point& pb) {
        return dist_l1(s.a, pa) + dist_l1(pa, t.a) + dist_l1(s.b, pb) + dist_l1(pb, t.b);
    };
    auto l2_proxy = [&](const Point& pa, const Point& pb) {
        return dist_l2(s.a, pa) + dist_l2(pa, t.a) + dist_l2(s.b, pb) + dist_l2(pb, t.b);
    };
    for (double x : xs) {
        std::vector<double> ys = column_ys(x);
        std::vector<char> in_a(ys.size()), in_b(ys.size());
        for (size_t i = 0; i < ys.size(); ++i) {
            Point q{x, ys[i]};
            in_a[i] = ca.classify(q + phi, kTol).cls != PointClass::Outside;
            in_b[i] = cb.classify(q - phi, kTol).cls != PointClass::Outside;
        }
        for (size_t i = 0; i < ys.size(); ++i) {
            if (!in_a[i]) continue;
            Point pa{x + phi.x, ys[i] + phi.y};
            for (size_t j = 0; j <= i; ++j) {
                if (!in_b[j]) continue;
                Point pb{x - phi.x, ys[j] - phi.y};
                double l1 = l1_cost(pa, pb);
                if (l1 > best.l1 + kTol) continue;
                double l2 = l2_proxy(pa, pb);
                if (best.found && l1 > best.l1 - kTol && l2 >= best.l2) continue;
                best = {l1, l2, pa, pb, true};
            }
        }
    }
    if (!best.found) return std::nullopt;

    // Materialize the four xy-monotone moves for the winning pair.
    const Point &pa = best.pa, &pb = best.pb;
    auto path1 = xy_monotone_path(ca, s.a, pa);
    PolygonalRegion r2 = component_containing(subtract_robot_square(comp_b, pa), s.b);
    auto path2 = r2.empty() ? std::nullopt : xy_monotone_path(r2, s.b, pb);
    PolygonalRegion r3 = component_containing(subtract_robot_square(comp_a, pb), pa);
    auto path3 = r3.empty() ? std::nullopt : xy_monotone_path(r3, pa, t.a);
    auto path4 = xy_monotone_path(cb, pb, t.b);
    if (!path1 || !path2 || !path3 || !path4)
        throw InternalConsistencyError("small_opt step III: candidate pair admits no plan");

    ScoredPlan sp;
    sp.plan.source = s;
    sp.plan.target = t;
    sp.plan.moves.push_back({Robot::A, *path1, s.b});
    sp.plan.moves.push_back({Robot::B, *path2, pa});
    sp.plan.moves.push_back({Robot::A, *path3, pb});
    sp.plan.moves.push_back({Robot::B, *path4, t.a});
    auto [l2, l1] = plan_cost(sp.plan);
    sp.l1 = l1;
    sp.l2 = l2;
    return sp;
}

}  // namespace

std::optional<Polyline> xy_monotone_path(const PolygonalRegion& component, const Point& a,
                                         const Point& b) {
    if (component.classify(a).cls == PointClass::Outside ||
        component.classify(b).cls == PointClass::Outside)
        return std::nullopt;
    auto res = shortest_path(component, a, b);
    if (!res) return std::nullopt;
    return res->path;
}

SmallOptOutcome small_opt_in_free(const PolygonalRegion& f, const Configuration& s,
                                  const Configuration& t) {
    SmallOptOutcome out;
    if (near(s.a, t.a, kTol) && near(s.b, t.b, kTol)) {
        out.gamma = 0.0;
        out.plan.source = s;
        out.plan.target = t;
        return out;
    }

    // Step I: both robots must stay inside their quarter boxes.
    Box box_a = quarter_box_intersection(s.a, t.a);
    Box box_b = quarter_box_intersection(s.b, t.b);
    if (box_a.empty() || box_b.empty()) return out;
    if (linf_distance(s.a, t.a) > 0.25 + kTol || linf_distance(s.b, t.b) > 0.25 + kTol)
        return out;

    PolygonalRegion comp_a = component_containing(intersect_box(f, box_a), s.a);
    PolygonalRegion comp_b = component_containing(intersect_box(f, box_b), s.b);
    if (comp_a.empty() || comp_a.classify(t.a).cls == PointClass::Outside) return out;
    if (comp_b.empty() || comp_b.classify(t.b).cls == PointClass::Outside) return out;

    // Step II, both robot orders.
    std::optional<ScoredPlan> best;
    if (auto sp = step2_order(comp_a, comp_b, s, t, Robot::A)) consider(best, std::move(*sp));
    if (auto sp = step2_order(comp_b, comp_a, s, t, Robot::B)) consider(best, std::move(*sp));

    if (!best) {
        // Step III under every symmetry image whose orientation matches the
        // assumed normalized form.
        for (int mask = 0; mask < 16; ++mask) {
            FrameTransform tr;
            tr.swap_xy = mask & 1;
            tr.neg_x = mask & 2;
            tr.neg_y = mask & 4;
            tr.swap_robots = mask & 8;
            Configuration ss = tr.apply(s), tt = tr.apply(t);
            if (!(ss.b.x <= ss.a.x - 2 + kTol)) continue;
            if (!(tt.b.y <= tt.a.y - 2 + kTol)) continue;
            PolygonalRegion ft = tr.apply(f);
            Box ba = quarter_box_intersection(ss.a, tt.a);
            Box bb = quarter_box_intersection(ss.b, tt.b);
            PolygonalRegion ca = component_containing(intersect_box(ft, ba), ss.a);
            PolygonalRegion cb = component_containing(intersect_box(ft, bb), ss.b);
            if (ca.empty() || cb.empty()) continue;
            auto sp = step3_normalized(ca, cb, ss, tt);
            if (!sp) continue;
            ScoredPlan mapped;
            mapped.l1 = sp->l1;
            mapped.l2 = sp->l2;
            mapped.plan = tr.invert(sp->plan);
            consider(best, std::move(mapped));
        }
    }
    if (!best) return out;

    out.gamma = best->l2;
    out.plan = std::move(best->plan);
    return out;
}

SmallOptOutcome small_opt(const PolygonalRegion& w, const Configuration& s,
                          const Configuration& t) {
    return small_opt_in_free(erode_to_free_space(w), s, t);
}

}  // namespace mrmp
