#include "mrmp/plans.hpp"

#include <algorithm>

namespace mrmp {

std::pair<double, double> plan_cost(const Plan& p) {
    double l2 = 0.0, l1 = 0.0;
    for (const Move& m : p.moves) {
        l2 += polyline_length_l2(m.path);
        l1 += polyline_length_l1(m.path);
    }
    return {l2, l1};
}

Plan compress(const Plan& p) {
    Plan out;
    out.source = p.source;
    out.target = p.target;
    for (const Move& m : p.moves) {
        if (m.path.size() < 2 || polyline_length_l2(m.path) <= kEta) {
            // Zero-length move: skip unless it is the only record of a parking
            // change (it never is, paths are continuous).
            continue;
        }
        if (!out.moves.empty() && out.moves.back().robot == m.robot) {
            Polyline& path = out.moves.back().path;
            for (size_t i = 1; i < m.path.size(); ++i) path.push_back(m.path[i]);
        } else {
            out.moves.push_back(m);
        }
    }
    return out;
}

Plan reverse_plan(const Plan& p) {
    Plan out;
    out.source = p.target;
    out.target = p.source;
    out.moves.reserve(p.moves.size());
    for (auto it = p.moves.rbegin(); it != p.moves.rend(); ++it) {
        Move m = *it;
        std::reverse(m.path.begin(), m.path.end());
        out.moves.push_back(std::move(m));
    }
    return out;
}

bool configuration_free(const PolygonalRegion& f, const Configuration& c, double eta) {
    if (c.separation() < 2.0 - eta) return false;
    return f.contains(c.a, eta) && f.contains(c.b, eta);
}

namespace {

double point_outside_depth(const PolygonalRegion& f, const Point& p) {
    if (f.contains(p)) return 0.0;
    if (f.empty()) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::max();
    f.for_each_edge([&](const Point& a, const Point& b) {
        best = std::min(best, point_segment_dist_linf(p, {a, b}));
    });
    for (const Segment& s : f.filaments())
        best = std::min(best, point_segment_dist_linf(p, s));
    return best;
}

}  // namespace

ValidationReport validate_plan_in_free(const PolygonalRegion& f, const Configuration& s,
                                       const Configuration& t, const Plan& p) {
    ValidationReport rep;
    std::tie(rep.cost_l2, rep.cost_l1) = plan_cost(p);

    // Continuity: each move starts at the mover's current placement and parks
    // the other robot at its current placement.
    Configuration cur = s;
    double cont = 0.0;
    cont = std::max(cont, linf_distance(p.source.a, s.a));
    cont = std::max(cont, linf_distance(p.source.b, s.b));
    for (const Move& m : p.moves) {
        if (m.path.empty()) {
            cont = std::numeric_limits<double>::infinity();
            break;
        }
        cont = std::max(cont, linf_distance(m.path.front(), cur.of(m.robot)));
        cont = std::max(cont, linf_distance(m.parked, cur.of(other(m.robot))));
        cur.of(m.robot) = m.path.back();
    }
    cont = std::max(cont, linf_distance(cur.a, t.a));
    cont = std::max(cont, linf_distance(cur.b, t.b));
    cont = std::max(cont, linf_distance(p.target.a, t.a));
    cont = std::max(cont, linf_distance(p.target.b, t.b));
    rep.continuity_error = cont;

    // Workspace feasibility: the moving robot's path and the parked placement
    // must stay in the free space.
    double violation = 0.0;
    auto check_point = [&](const Point& q) {
        violation = std::max(violation, point_outside_depth(f, q));
    };
    check_point(s.a);
    check_point(s.b);
    for (const Move& m : p.moves) {
        check_point(m.parked);
        for (size_t i = 0; i + 1 < m.path.size(); ++i) {
            const Point &a = m.path[i], &b = m.path[i + 1];
            if (f.contains_segment(a, b)) continue;
            auto iv = inside_intervals(f, a, b);
            Point d = b - a;
            double prev = 0.0;
            auto probe_gap = [&](double lo, double hi) {
                if (hi - lo <= 1e-12) return;
                check_point(a + d * ((lo + hi) / 2));
                check_point(a + d * lo);
                check_point(a + d * hi);
            };
            for (auto [lo, hi] : iv) {
                probe_gap(prev, lo);
                prev = hi;
            }
            probe_gap(prev, 1.0);
        }
    }
    rep.max_boundary_violation = violation;

    // Robot-robot separation, exact per moving segment.
    Plan cp = compress(p);
    rep.alternations = static_cast<int>(cp.moves.size());
    double min_sep = s.separation();
    for (const Move& m : cp.moves) {
        double move_min = std::numeric_limits<double>::max();
        for (size_t i = 0; i + 1 < m.path.size(); ++i)
            move_min = std::min(move_min, min_separation_linf(m.parked, m.path[i], m.path[i + 1]));
        if (m.path.size() == 1) move_min = linf_distance(m.parked, m.path[0]);
        rep.kissing_gaps.push_back(move_min - 2.0);
        min_sep = std::min(min_sep, move_min);
    }
    rep.min_separation = min_sep;

    rep.feasible = min_sep >= 2.0 - kEta && violation <= kEta && cont <= kEta;
    return rep;
}

ValidationReport validate_plan(const PolygonalRegion& w, const Configuration& s,
                               const Configuration& t, const Plan& p) {
    return validate_plan_in_free(erode_to_free_space(w), s, t, p);
}

}  // namespace mrmp
