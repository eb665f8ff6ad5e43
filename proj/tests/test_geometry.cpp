#include "doctest.h"
#include "mrmp/geometry.hpp"

using namespace mrmp;

TEST_CASE("linf distance") {
    CHECK(linf_distance({0, 0}, {0, 0}) == 0.0);
    CHECK(linf_distance({0, 0}, {2, 1}) == 2.0);
    CHECK(linf_distance({1, -3}, {-2, 1}) == 4.0);
}

TEST_CASE("point-segment linf distance") {
    // Vertical segment at x=2, the L-inf distance from origin is 2 anywhere
    // along y in [-1,1].
    CHECK(point_segment_dist_linf({0, 0}, {{2, -1}, {2, 1}}) == doctest::Approx(2.0));
    // Diagonal segment passing through (1,1): distance max(|1|,|1|)=1 at that point.
    CHECK(point_segment_dist_linf({0, 0}, {{0, 2}, {2, 0}}) == doctest::Approx(1.0));
    // Far segment: closest endpoint decides.
    CHECK(point_segment_dist_linf({0, 0}, {{5, 7}, {6, 9}}) == doctest::Approx(7.0));
    // Segment through the point.
    CHECK(point_segment_dist_linf({1, 1}, {{0, 0}, {2, 2}}) == doctest::Approx(0.0));
}

TEST_CASE("segment intersection classification") {
    auto r = segment_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0});
    CHECK(r.kind == SegXKind::Proper);
    CHECK(r.t0 == doctest::Approx(0.5));

    r = segment_intersect({0, 0}, {2, 0}, {1, 0}, {1, 5});
    CHECK(r.kind == SegXKind::Touch);

    r = segment_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0});
    CHECK(r.kind == SegXKind::Overlap);
    CHECK(r.t0 == doctest::Approx(0.5));
    CHECK(r.t1 == doctest::Approx(1.0));

    r = segment_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1});
    CHECK(r.kind == SegXKind::None);
}

TEST_CASE("segment vs open box") {
    Box b{0, 0, 2, 2};
    CHECK(segment_crosses_open_box({-1, 1}, {3, 1}, b));
    CHECK_FALSE(segment_crosses_open_box({-1, 2}, {3, 2}, b));   // grazes the top edge
    CHECK_FALSE(segment_crosses_open_box({-1, 3}, {3, 3}, b));   // misses
    CHECK_FALSE(segment_crosses_open_box({2, 0}, {2, 2}, b));    // along the right edge
    CHECK(segment_crosses_open_box({1, 1}, {1.5, 1.5}, b));      // fully inside
    CHECK(segment_crosses_open_box({0, 2}, {2, 0}, b));          // corner-to-corner diagonal
}

TEST_CASE("moving-segment separation to fixed point") {
    // Robot sliding along x at y-offset 2: separation stays 2.
    CHECK(min_separation_linf({0, 0}, {-3, 2}, {3, 2}) == doctest::Approx(2.0));
    // Diagonal pass at closest L-inf distance 1.5.
    CHECK(min_separation_linf({0, 0}, {-4, 1.5}, {4, 1.5}) == doctest::Approx(1.5));
}
