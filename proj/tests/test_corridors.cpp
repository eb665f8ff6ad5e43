#include <random>

#include "doctest.h"
#include "mrmp/corridors.hpp"

using namespace mrmp;

namespace {

// Dumbbell free space: two blobs joined by a horizontal slab of given height.
PolygonalRegion dumbbell(double slab_h) {
    Ring outer;
    outer.pts = {{-6, -3}, {0, -3},  {0, 0},      {40, 0},     {40, -3}, {46, -3},
                 {46, 4},  {40, 4},  {40, slab_h}, {0, slab_h}, {0, 4},   {-6, 4}};
    return PolygonalRegion::from_rings(outer, {});
}

// Diagonal band of vertical width 2 joining two blobs.
PolygonalRegion diagonal_band() {
    Ring outer;
    outer.pts = {{-6, -6}, {0, -6}, {0, 0},  {8, 8},  {14, 8},
                 {14, 14}, {8, 14}, {8, 10}, {0, 2},  {-6, 2}};
    return PolygonalRegion::from_rings(outer, {});
}

bool has_revolving_area(const PolygonalRegion& f, const Point& p) {
    for (double qx = p.x - 1; qx <= p.x + 1 + 1e-12; qx += 0.05) {
        for (double qy = p.y - 1; qy <= p.y + 1 + 1e-12; qy += 0.05) {
            if (linf_distance({qx, qy}, p) > 1.0) continue;
            bool ok = true;
            for (double cx : {-1.0, 0.0, 1.0})
                for (double cy : {-1.0, 0.0, 1.0})
                    if (!f.contains({qx + cx, qy + cy})) ok = false;
            if (!ok) continue;
            Box open_sq{qx - 1, qy - 1, qx + 1, qy + 1};
            bool crossed = false;
            f.for_each_edge([&](const Point& a, const Point& b) {
                if (!crossed && segment_crosses_open_box(a, b, open_sq)) crossed = true;
            });
            if (!crossed) return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("convex square free space has no corridors") {
    PolygonalRegion f = make_box_region({-2, 2, -2, 2});
    CHECK(enumerate_corridors(f).empty());
    f = make_box_region({-2, -2, 2, 2});
    CHECK(enumerate_corridors(f).empty());
}

TEST_CASE("dumbbell slab forms one corridor") {
    PolygonalRegion f = dumbbell(1.5);
    auto ks = enumerate_corridors(f);
    REQUIRE(ks.size() == 1);
    const Corridor& k = ks[0];
    CHECK(k.length == doctest::Approx(40.0));
    CHECK(std::abs(k.direction.x) == doctest::Approx(1.0));
    CHECK(k.direction.y == doctest::Approx(0.0));
    // Portals at x=0 and x=40, spanning y in [0,1.5].
    auto portal_x = [](const Segment& s) { return (s.a.x + s.b.x) / 2; };
    double xl = std::min(portal_x(k.portal_l), portal_x(k.portal_r));
    double xr = std::max(portal_x(k.portal_l), portal_x(k.portal_r));
    CHECK(xl == doctest::Approx(0.0));
    CHECK(xr == doctest::Approx(40.0));
    CHECK(linf_distance(k.portal_l.a, k.portal_l.b) == doctest::Approx(1.5));

    // Sanctum: slab shifted 10 inward from each portal.
    auto sanct = k.sanctum();
    REQUIRE(sanct.has_value());
    Box sb = bbox_of({(*sanct)[0], (*sanct)[1], (*sanct)[2], (*sanct)[3]});
    CHECK(sb.min_x == doctest::Approx(10.0));
    CHECK(sb.max_x == doctest::Approx(30.0));
    CHECK(sb.min_y == doctest::Approx(0.0));
    CHECK(sb.max_y == doctest::Approx(1.5));
}

TEST_CASE("slab of height 2.5 is not a corridor") {
    PolygonalRegion f = dumbbell(2.5);
    for (const Corridor& k : enumerate_corridors(f)) {
        // No corridor may span the slab (portal longer than 2).
        CHECK(linf_distance(k.portal_l.a, k.portal_l.b) <= 2.0 + 1e-9);
        CHECK(k.length < 39.0);
    }
}

TEST_CASE("sanctum thresholds") {
    Corridor k;
    k.blocker_i = {{0, 0}, {19, 0}};
    k.blocker_j = {{0, 1}, {19, 1}};
    k.portal_l = {{0, 0}, {0, 1}};
    k.portal_r = {{19, 0}, {19, 1}};
    k.direction = {1, 0};
    k.length = 19;
    CHECK_FALSE(k.sanctum().has_value());
    k.length = 20;
    k.blocker_i.b = {20, 0};
    k.blocker_j.b = {20, 1};
    k.portal_r = {{20, 0}, {20, 1}};
    auto s = k.sanctum();
    REQUIRE(s.has_value());
    CHECK(near((*s)[0], (*s)[3], 1e-9));  // degenerate: single segment
}

TEST_CASE("diagonal band forms a diagonal corridor") {
    PolygonalRegion f = diagonal_band();
    auto ks = enumerate_corridors(f);
    REQUIRE(ks.size() == 1);
    const Corridor& k = ks[0];
    CHECK(std::abs(k.direction.x) == doctest::Approx(std::sqrt(0.5)));
    CHECK(std::abs(k.direction.y) == doctest::Approx(std::sqrt(0.5)));
    CHECK(k.length == doctest::Approx(7.0));
    CHECK(linf_distance(k.portal_l.a, k.portal_l.b) == doctest::Approx(1.0));
}

TEST_CASE("corridors are pairwise interior-disjoint") {
    for (auto* f : {new PolygonalRegion(dumbbell(1.5)), new PolygonalRegion(diagonal_band())}) {
        auto ks = enumerate_corridors(*f);
        for (size_t i = 0; i < ks.size(); ++i) {
            for (size_t j = i + 1; j < ks.size(); ++j) {
                Point mi = (ks[i].blocker_i.a + ks[i].blocker_j.b) * 0.5;
                Point mj = (ks[j].blocker_i.a + ks[j].blocker_j.b) * 0.5;
                CHECK_FALSE(ks[j].contains(mi, -1e-7));
                CHECK_FALSE(ks[i].contains(mj, -1e-7));
            }
        }
        delete f;
    }
}

TEST_CASE("revolving-area dichotomy on sampled points") {
    for (const PolygonalRegion& f : {dumbbell(1.5), diagonal_band()}) {
        auto ks = enumerate_corridors(f);
        AnchorSet x = build_anchor_set(f, ks, {});
        std::mt19937 rng(3);
        Box b = f.bounds();
        std::uniform_real_distribution<double> ux(b.min_x, b.max_x), uy(b.min_y, b.max_y);
        int tested = 0;
        for (int i = 0; i < 4000 && tested < 300; ++i) {
            Point p{ux(rng), uy(rng)};
            if (!f.contains(p)) continue;
            if (x.linf_distance_to(p) < 1.0) continue;
            bool in_corridor = false;
            for (const Corridor& k : ks)
                if (k.contains(p, 1e-9)) { in_corridor = true; break; }
            if (in_corridor) continue;
            ++tested;
            CHECK(has_revolving_area(f, p));
        }
        CHECK(tested > 50);
    }
}

TEST_CASE("anchor set contents") {
    PolygonalRegion f = dumbbell(1.5);
    auto ks = enumerate_corridors(f);
    std::vector<Point> placements{{-3, 0}, {-3, 2}, {43, 0}, {43, 2}};
    AnchorSet x = build_anchor_set(f, ks, placements);
    for (const Point& p : placements) CHECK(x.contains(p));
    for (const Point& p : {Point{0, 0}, Point{0, 1.5}, Point{40, 0}, Point{40, 1.5}})
        CHECK(x.contains(p));
    // Duplicate placement equal to an F vertex merges.
    AnchorSet x2 = build_anchor_set(f, ks, {{-6, -3}});
    size_t count = 0;
    for (const Point& p : x2.points)
        if (near(p, {-6, -3})) ++count;
    CHECK(count == 1);
}
