#pragma once

#include <vector>

#include "mrmp/region.hpp"

namespace mrmp {

enum class Robot : int { A = 0, B = 1 };

inline Robot other(Robot r) { return r == Robot::A ? Robot::B : Robot::A; }

// Joint placement of the two robots (centers). Free iff both lie in the free
// space and the L-infinity separation is at least 2.
struct Configuration {
    Point a;
    Point b;

    const Point& of(Robot r) const { return r == Robot::A ? a : b; }
    Point& of(Robot r) { return r == Robot::A ? a : b; }
    double separation() const { return linf_distance(a, b); }
};

// One move of a decoupled plan: `robot` travels along `path` while the other
// robot is parked at `parked`.
struct Move {
    Robot robot = Robot::A;
    Polyline path;
    Point parked;
};

struct Plan {
    std::vector<Move> moves;
    Configuration source;
    Configuration target;
};

struct ValidationReport {
    bool feasible = false;
    double cost_l2 = 0.0;
    double cost_l1 = 0.0;
    int alternations = 0;
    double min_separation = 0.0;
    double max_boundary_violation = 0.0;
    double continuity_error = 0.0;
    std::vector<double> kissing_gaps;  // per compressed move: closest approach minus 2
};

std::pair<double, double> plan_cost(const Plan& p);  // (l2, l1)

// Merges consecutive moves of the same robot (identical parked placement).
Plan compress(const Plan& p);

Plan reverse_plan(const Plan& p);

// Structural and geometric validation: exact segment containment against the
// free space of w, exact per-segment separation against parked placements,
// continuity of the move sequence, and alternation count after compression.
ValidationReport validate_plan(const PolygonalRegion& w, const Configuration& s,
                               const Configuration& t, const Plan& p);

// Same, with the robot free space already eroded from the workspace.
ValidationReport validate_plan_in_free(const PolygonalRegion& f, const Configuration& s,
                                       const Configuration& t, const Plan& p);

bool configuration_free(const PolygonalRegion& f, const Configuration& c, double eta = kEta);

}  // namespace mrmp
