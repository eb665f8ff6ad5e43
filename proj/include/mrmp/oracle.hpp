#pragma once

#include <optional>

#include "mrmp/plans.hpp"

namespace mrmp {

struct StateSpaceTooLarge : std::runtime_error {
    explicit StateSpaceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct OracleOptions {
    size_t node_cap = 50'000'000;  // explored-state cap; StateSpaceTooLarge beyond
    // Optional per-robot position domain restriction. Sound for certifying an
    // upper bound whenever the restriction is known to contain the motion.
    std::optional<Box> restrict_a;
    std::optional<Box> restrict_b;
};

struct OracleResult {
    double cost = 0.0;
    Plan plan;
    double resolution = 0.0;
    double slack = 0.0;  // a-priori error bound: 4*h*(1+cost) plus snapping cost
};

// Brute-force near-optimal planner over a 4-D product grid of pitch h:
// states are pairs of free grid placements with L-infinity separation >= 2;
// one robot moves to an 8-neighbor per transition, with the mid-step
// separation checked exactly. Returns nullopt when no grid plan exists.
std::optional<OracleResult> oracle_plan(const PolygonalRegion& w, const Configuration& s,
                                        const Configuration& t, double h,
                                        const OracleOptions& opts = {});

// Same interface against a precomputed free space.
std::optional<OracleResult> oracle_plan_in_free(const PolygonalRegion& f,
                                                const Configuration& s, const Configuration& t,
                                                double h, const OracleOptions& opts = {});

// Grid reachability of a single robot between two placements (8-connected).
bool single_robot_reachable(const PolygonalRegion& f, const Point& a, const Point& b, double h);

}  // namespace mrmp
