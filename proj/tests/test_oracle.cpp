#include "doctest.h"
#include "mrmp/oracle.hpp"

using namespace mrmp;

namespace {

PolygonalRegion open_workspace(double half) { return make_box_region({-half, -half, half, half}); }

}  // namespace

TEST_CASE("oracle trivial identity") {
    PolygonalRegion w = open_workspace(6);
    Configuration s{{-2, 0}, {2, 0}};
    auto r = oracle_plan(w, s, s, 0.1);
    REQUIRE(r.has_value());
    CHECK(r->cost == 0.0);
    CHECK(r->plan.moves.empty());
}

TEST_CASE("oracle independent straight moves reach the lower bound") {
    PolygonalRegion w = open_workspace(6);
    Configuration s{{-3, -3}, {3, -3}};
    Configuration t{{-3, 3}, {3, 3}};
    auto r = oracle_plan(w, s, t, 0.1);
    REQUIRE(r.has_value());
    double lb = dist_l2(s.a, t.a) + dist_l2(s.b, t.b);
    CHECK(r->cost >= lb - 1e-9);
    CHECK(r->cost <= lb + r->slack);
    ValidationReport rep = validate_plan(w, s, t, r->plan);
    CHECK(rep.feasible);
    CHECK(rep.cost_l2 == doctest::Approx(r->cost).epsilon(1e-9));
}

TEST_CASE("oracle coordinates a swap in a dead-end pocket") {
    // Robots must trade x-order inside a 10x6 room: B backs into the upper
    // half while A passes.
    PolygonalRegion w = open_workspace(5);
    Configuration s{{-3, -2}, {3, -2}};
    Configuration t{{3, -2}, {-3, -2}};
    auto r = oracle_plan(w, s, t, 0.125);
    REQUIRE(r.has_value());
    ValidationReport rep = validate_plan(w, s, t, r->plan);
    CHECK(rep.feasible);
    double lb = dist_l2(s.a, t.a) + dist_l2(s.b, t.b);
    CHECK(r->cost >= lb - 1e-9);
    // The swap needs a sidestep: strictly longer than the lower bound.
    CHECK(r->cost > lb + 1.0);
    CHECK(r->cost < lb + 8.0);
}

TEST_CASE("oracle infeasible across disconnected components") {
    Ring outer;
    outer.pts = {{0, 0}, {19, 0}, {19, 7}, {0, 7}};
    Ring wall;  // full-height wall splitting the workspace
    wall.pts = {{9, 0.001}, {10, 0.001}, {10, 6.999}, {9, 6.999}};
    PolygonalRegion w = PolygonalRegion::from_rings(outer, {wall});
    Configuration s{{2, 2}, {2, 5}};
    Configuration t{{16, 2}, {2, 5}};
    auto r = oracle_plan(w, s, t, 0.125);
    CHECK_FALSE(r.has_value());
    PolygonalRegion f = erode_to_free_space(w);
    CHECK_FALSE(single_robot_reachable(f, s.a, t.a, 0.125));
    CHECK(single_robot_reachable(f, s.b, t.b, 0.125));
}

TEST_CASE("oracle resolution convergence") {
    PolygonalRegion w = open_workspace(4);
    Configuration s{{-2, -2}, {2, -2}};
    Configuration t{{-2, 2}, {2, 2}};
    auto coarse = oracle_plan(w, s, t, 0.25);
    auto fine = oracle_plan(w, s, t, 0.125);
    REQUIRE(coarse.has_value());
    REQUIRE(fine.has_value());
    CHECK(fine->cost <= coarse->cost + coarse->slack);
}

TEST_CASE("oracle respects domain restriction") {
    PolygonalRegion w = open_workspace(6);
    Configuration s{{-0.1, -3}, {-0.1, 3}};
    Configuration t{{0.1, -3}, {0.1, 3}};
    OracleOptions opts;
    opts.restrict_a = Box{-1, -4, 1, -2};
    opts.restrict_b = Box{-1, 2, 1, 4};
    auto r = oracle_plan(w, s, t, 0.05, opts);
    REQUIRE(r.has_value());
    CHECK(r->cost <= 0.2 + r->slack);
    ValidationReport rep = validate_plan(w, s, t, r->plan);
    CHECK(rep.feasible);
}
