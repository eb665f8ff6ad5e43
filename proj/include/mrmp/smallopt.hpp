#pragma once

#include <optional>

#include "mrmp/plans.hpp"

namespace mrmp {

struct InternalConsistencyError : std::logic_error {
    explicit InternalConsistencyError(const std::string& what) : std::logic_error(what) {}
};

// Outcome of the close-configuration subroutine: either a concrete plan whose
// L2 cost gamma is at most 2 and certifies an 8-approximation of the optimum,
// or the report that the optimum exceeds 1/4.
struct SmallOptOutcome {
    std::optional<double> gamma;
    Plan plan;  // meaningful when gamma is set

    bool big_opt() const { return !gamma.has_value(); }
};

// Shortest xy-monotone path between two points of a small region (a component
// of the free space clipped to a box of radius at most 1). Returns nullopt if
// the points are separated within the component.
std::optional<Polyline> xy_monotone_path(const PolygonalRegion& component, const Point& a,
                                         const Point& b);

SmallOptOutcome small_opt(const PolygonalRegion& w, const Configuration& s,
                          const Configuration& t);
SmallOptOutcome small_opt_in_free(const PolygonalRegion& f, const Configuration& s,
                                  const Configuration& t);

}  // namespace mrmp
