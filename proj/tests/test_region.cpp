#include <random>

#include "doctest.h"
#include "mrmp/region.hpp"

using namespace mrmp;

namespace {

PolygonalRegion square_region(double half, Point c = {0, 0}) {
    return make_box_region({c.x - half, c.y - half, c.x + half, c.y + half});
}

PolygonalRegion square_with_hole(double outer_half, double hole_half) {
    Ring outer;
    outer.pts = {{-outer_half, -outer_half}, {outer_half, -outer_half},
                 {outer_half, outer_half}, {-outer_half, outer_half}};
    Ring hole;
    hole.pts = {{-hole_half, -hole_half}, {hole_half, -hole_half},
                {hole_half, hole_half}, {-hole_half, hole_half}};
    return PolygonalRegion::from_rings(outer, {hole});
}

// Independent check that the unit square at p fits inside w: corners, edge
// midpoints and center must be in w, and no boundary edge of w may cross the
// open square.
bool unit_square_fits(const PolygonalRegion& w, const Point& p) {
    for (double dx : {-1.0, 0.0, 1.0})
        for (double dy : {-1.0, 0.0, 1.0})
            if (!w.contains({p.x + dx, p.y + dy})) return false;
    Box open_sq{p.x - 1, p.y - 1, p.x + 1, p.y + 1};
    bool crossed = false;
    w.for_each_edge([&](const Point& a, const Point& b) {
        if (!crossed && segment_crosses_open_box(a, b, open_sq)) crossed = true;
    });
    return !crossed;
}

}  // namespace

TEST_CASE("classify basic") {
    PolygonalRegion r = make_box_region({0, 0, 1, 1});
    CHECK(r.classify({0.5, 0.5}).cls == PointClass::Interior);
    CHECK(r.classify({0.0, 0.5}).cls == PointClass::Boundary);
    CHECK(r.classify({-0.1, 0.5}).cls == PointClass::Outside);
}

TEST_CASE("classify components are distinct for disjoint squares") {
    Face f1, f2;
    f1.outer.pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    f2.outer.pts = {{5, 0}, {6, 0}, {6, 1}, {5, 1}};
    PolygonalRegion r({f1, f2});
    auto c1 = r.classify({0.5, 0.5});
    auto c2 = r.classify({5.5, 0.5});
    CHECK(c1.cls == PointClass::Interior);
    CHECK(c2.cls == PointClass::Interior);
    CHECK(c1.component != c2.component);
    CHECK(r.component_count() == 2);
}

TEST_CASE("erode square workspace") {
    PolygonalRegion w = square_region(3);
    PolygonalRegion f = erode_to_free_space(w);
    CHECK(region_equal(f, square_region(2)));
}

TEST_CASE("erode square with hole dilates the hole") {
    PolygonalRegion w = square_with_hole(3, 0.5);
    PolygonalRegion f = erode_to_free_space(w);
    PolygonalRegion expect = square_with_hole(2, 1.5);
    CHECK(region_equal(f, expect));
}

TEST_CASE("erode triangle, sampled membership oracle") {
    Ring outer;
    outer.pts = {{0, 0}, {8, 0}, {0, 8}};
    PolygonalRegion w = PolygonalRegion::from_rings(outer, {});
    PolygonalRegion f = erode_to_free_space(w);

    Ring expect_ring;
    expect_ring.pts = {{1, 1}, {5, 1}, {1, 5}};
    PolygonalRegion expect = PolygonalRegion::from_rings(expect_ring, {});
    CHECK(region_equal(f, expect));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ux(-1, 9), uy(-1, 9);
    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
        Point p{ux(rng), uy(rng)};
        // Skip the tolerance shell around the expected boundary.
        bool in_f = f.contains(p);
        bool fits = unit_square_fits(w, p);
        double margin = std::abs(p.x - 1) * std::abs(p.y - 1) * std::abs(p.x + p.y - 6);
        if (margin < 1e-3) continue;
        CHECK(in_f == fits);
        ++checked;
    }
    CHECK(checked > 9000);
}

TEST_CASE("erode to empty region") {
    PolygonalRegion w = square_region(0.9);
    PolygonalRegion f = erode_to_free_space(w);
    CHECK(f.empty());
}

TEST_CASE("subtract robot square, disjoint") {
    PolygonalRegion f = square_region(2);
    PolygonalRegion g = subtract_robot_square(f, {10, 10});
    CHECK(region_equal(f, g));
    CHECK(g.filaments().empty());
}

TEST_CASE("subtract robot square, centered hole") {
    PolygonalRegion f = square_region(4);
    PolygonalRegion g = subtract_robot_square(f, {0, 0});
    CHECK(region_equal(g, square_with_hole(4, 2)));
    CHECK(g.filaments().empty());
}

TEST_CASE("subtract robot square, boundary-only remainder") {
    // F = [-2,2]^2 minus the open square of radius 2 at the origin leaves just
    // the boundary frame; verified against point classification on a grid.
    PolygonalRegion f = square_region(2);
    PolygonalRegion g = subtract_robot_square(f, {0, 0});
    CHECK(g.faces().empty());
    CHECK(g.filaments().size() >= 4);
    for (double x = -2.2; x <= 2.2; x += 0.01) {
        for (double y : {-2.0, 0.0, 2.0}) {
            Point p{x, y};
            bool expect = f.contains(p) && linf_distance(p, {0, 0}) >= 2.0 - kEta;
            bool got = g.contains(p);
            if (std::abs(std::abs(x) - 2) < 1e-6) continue;  // tolerance shell
            CHECK(got == expect);
        }
    }
    // Idempotent subtraction.
    PolygonalRegion g2 = subtract_robot_square(g, {0, 0});
    CHECK(g2.faces().empty());
    CHECK(g2.filaments().size() == g.filaments().size());
}

TEST_CASE("subtract keeps pinched corners connected") {
    // A 8x8 free square minus the centered robot square leaves a frame of
    // width 2: one component, paths can round the corners.
    PolygonalRegion f = square_region(4);
    PolygonalRegion g = subtract_robot_square(f, {0, 0});
    CHECK(g.component_count() == 1);
}

TEST_CASE("boundary points classify as boundary, never outside") {
    PolygonalRegion f = square_with_hole(3, 1);
    for (double t = -3.0; t <= 3.0; t += 0.37) {
        CHECK(f.classify({t, 3.0}).cls == PointClass::Boundary);
        CHECK(f.classify({-3.0, t}).cls == PointClass::Boundary);
    }
    for (double t = -1.0; t <= 1.0; t += 0.21) {
        CHECK(f.classify({t, 1.0}).cls == PointClass::Boundary);
    }
}

TEST_CASE("contains_segment across holes") {
    PolygonalRegion f = square_with_hole(3, 1);
    CHECK(f.contains_segment({-3, -3}, {3, -3}));        // along the boundary
    CHECK(f.contains_segment({-2.5, -2.5}, {2.5, -2.5}));
    CHECK_FALSE(f.contains_segment({-2.5, 0}, {2.5, 0}));  // crosses the hole
    CHECK(f.contains_segment({-3, 1}, {3, 1}));            // tangent to hole top edge
}

TEST_CASE("from_rings rejects self-intersecting ring") {
    Ring bad;
    bad.pts = {{0, 0}, {2, 2}, {2, 0}, {0, 2}};
    CHECK_THROWS_AS(PolygonalRegion::from_rings(bad, {}), GeometryError);
}

TEST_CASE("inside_intervals reports the in-region parts") {
    PolygonalRegion f = square_with_hole(3, 1);
    auto iv = inside_intervals(f, {-3, 0}, {3, 0});
    REQUIRE(iv.size() == 2);
    CHECK(iv[0].first == doctest::Approx(0.0));
    CHECK(iv[0].second == doctest::Approx(1.0 / 3.0));
    CHECK(iv[1].first == doctest::Approx(2.0 / 3.0));
    CHECK(iv[1].second == doctest::Approx(1.0));
}
