#include "doctest.h"
#include "mrmp/geodesic.hpp"
#include "mrmp/oracle.hpp"
#include "mrmp/smallopt.hpp"

using namespace mrmp;

namespace {

// Workspace whose free space is a large room over a wide obstacle block with
// a thin vertical slot (free width 0.1) cut into the block's top face. The
// slot admits one robot center but forces careful coordination to enter.
PolygonalRegion slot_workspace() {
    Ring outer;
    outer.pts = {{-10, -10}, {10, -10}, {10, 10}, {-10, 10}};
    Ring hole;
    hole.pts = {{-5, -5},    {5, -5},    {5, -2.93},     {-0.69, -2.93},
                {-0.69, -3.1}, {-2.79, -3.1}, {-2.79, -2.93}, {-5, -2.93}};
    return PolygonalRegion::from_rings(outer, {hole});
}

}  // namespace

TEST_CASE("small_opt trivial identity") {
    PolygonalRegion w = make_box_region({-6, -6, 6, 6});
    Configuration s{{0, 0}, {3, 0}};
    SmallOptOutcome out = small_opt(w, s, s);
    REQUIRE_FALSE(out.big_opt());
    CHECK(*out.gamma == 0.0);
    CHECK(out.plan.moves.empty());
}

TEST_CASE("small_opt reports big when a quarter box is empty") {
    PolygonalRegion w = make_box_region({-10, -10, 10, 10});
    Configuration s{{0, 0}, {5, 5}};
    Configuration t{{5, 0}, {5, 5}};  // A displaced by 5
    CHECK(small_opt(w, s, t).big_opt());
}

TEST_CASE("small_opt two-move case is optimal in the open") {
    PolygonalRegion w = make_box_region({-8, -8, 8, 8});
    Configuration s{{0, 0}, {3, 0}};
    Configuration t{{0.2, 0.1}, {3.1, 0.2}};
    SmallOptOutcome out = small_opt(w, s, t);
    REQUIRE_FALSE(out.big_opt());
    double expect = dist_l2(s.a, t.a) + dist_l2(s.b, t.b);
    CHECK(*out.gamma == doctest::Approx(expect).epsilon(1e-9));
    ValidationReport rep = validate_plan(w, s, t, out.plan);
    CHECK(rep.feasible);
    CHECK(rep.alternations <= 2);
}

TEST_CASE("small_opt step III coordinates the slot entry") {
    PolygonalRegion w = slot_workspace();
    PolygonalRegion f = erode_to_free_space(w);
    // s is x-separated only, t is y-separated only; entering the slot while
    // the other robot sits at its target is impossible, so both two-move
    // orders fail and the four-move search must run.
    Configuration s{{0, 0}, {-2, -1.85}};
    Configuration t{{0.2, 0}, {-1.79, -2.05}};
    REQUIRE(configuration_free(f, s));
    REQUIRE(configuration_free(f, t));

    SmallOptOutcome out = small_opt_in_free(f, s, t);
    REQUIRE_FALSE(out.big_opt());
    CHECK(*out.gamma <= 2.0 + 1e-9);
    ValidationReport rep = validate_plan_in_free(f, s, t, out.plan);
    CHECK(rep.feasible);
    CHECK(rep.alternations <= 4);
    CHECK(rep.alternations >= 3);  // genuinely needs intermediate parking
    CHECK(rep.cost_l2 == doctest::Approx(*out.gamma).epsilon(1e-9));

    // All placements stay within the quarter boxes.
    Box box_a{std::max(s.a.x, t.a.x) - 0.25, std::max(s.a.y, t.a.y) - 0.25,
              std::min(s.a.x, t.a.x) + 0.25, std::min(s.a.y, t.a.y) + 0.25};
    Box box_b{std::max(s.b.x, t.b.x) - 0.25, std::max(s.b.y, t.b.y) - 0.25,
              std::min(s.b.x, t.b.x) + 0.25, std::min(s.b.y, t.b.y) + 0.25};
    for (const Move& m : out.plan.moves) {
        const Box& box = m.robot == Robot::A ? box_a : box_b;
        for (const Point& p : m.path) CHECK(box.contains(p, 1e-9));
    }

    // 8-approximation against the oracle on the restricted domain.
    OracleOptions opts;
    opts.restrict_a = Box{s.a.x - 0.3, s.a.y - 0.3, s.a.x + 0.3, s.a.y + 0.3};
    opts.restrict_b = Box{s.b.x - 0.3, s.b.y - 0.3, s.b.x + 0.3, s.b.y + 0.3};
    auto orc = oracle_plan_in_free(f, s, t, 0.01, opts);
    REQUIRE(orc.has_value());
    CHECK(*out.gamma >= orc->cost - orc->slack - 1e-9);  // gamma >= OPT
    CHECK(*out.gamma <= 8 * orc->cost + 8 * orc->slack);
}

TEST_CASE("small_opt xy-monotone moves") {
    PolygonalRegion w = slot_workspace();
    Configuration s{{0, 0}, {-2, -1.85}};
    Configuration t{{0.2, 0}, {-1.79, -2.05}};
    SmallOptOutcome out = small_opt(w, s, t);
    REQUIRE_FALSE(out.big_opt());
    for (const Move& m : out.plan.moves) {
        int sx = 0, sy = 0;
        for (size_t i = 1; i < m.path.size(); ++i) {
            double dx = m.path[i].x - m.path[i - 1].x;
            double dy = m.path[i].y - m.path[i - 1].y;
            if (dx > 1e-9) { CHECK(sx >= 0); sx = 1; }
            if (dx < -1e-9) { CHECK(sx <= 0); sx = -1; }
            if (dy > 1e-9) { CHECK(sy >= 0); sy = 1; }
            if (dy < -1e-9) { CHECK(sy <= 0); sy = -1; }
        }
    }
}

TEST_CASE("xy_monotone_path in an L-shaped component") {
    // L-shaped region: geodesic hugs the reflex corner and stays monotone.
    Ring outer;
    outer.pts = {{0, 0}, {0.5, 0}, {0.5, 0.2}, {0.2, 0.2}, {0.2, 0.5}, {0, 0.5}};
    PolygonalRegion c = PolygonalRegion::from_rings(outer, {});
    auto path = xy_monotone_path(c, {0.45, 0.05}, {0.05, 0.45});
    REQUIRE(path.has_value());
    auto direct = shortest_path(c, {0.45, 0.05}, {0.05, 0.45});
    CHECK(polyline_length_l2(*path) == doctest::Approx(direct->length));
    CHECK(path->size() == 3);  // bends at the reflex corner (0.2, 0.2)
}
