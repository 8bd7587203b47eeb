#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "fitstar/state.hpp"

namespace fitstar {

/// Axis-aligned bounding box of the configuration space.
struct Bounds {
    State lower;
    State upper;

    std::size_t dimension() const { return lower.size(); }
    bool contains(const State& x) const;
    /// Lebesgue measure of the box.
    double measure() const;
};

/// Axis-aligned hyperrectangle obstacle.
struct AxisAlignedBox {
    State min_corner;
    State max_corner;

    /// True iff x lies strictly inside the interior (boundary excluded).
    bool contains_interior(const State& x) const;
    /// Euclidean distance from the box (as a closed set) to a point.
    double distance_to(const State& x) const;
};

/// Bounded world with hyperrectangle obstacles. Free space is the closure of
/// the complement, so obstacle boundaries count as free.
struct World {
    Bounds bounds;
    std::vector<AxisAlignedBox> obstacles;

    std::size_t dimension() const { return bounds.dimension(); }
};

/// Throw ContractViolation if the value breaks its type invariants.
void validate(const Bounds& b);
void validate(const AxisAlignedBox& box, std::size_t dimension);
void validate(const World& w);

/// True iff x is inside the bounds and not strictly inside any obstacle.
bool state_valid(const State& x, const World& world);

struct MotionCheck {
    bool valid = false;
    std::uint64_t checks = 0;  ///< state evaluations actually performed
};

/// Interpolated edge validity test: ceil(distance/resolution)+1 evenly spaced
/// states including both endpoints, evaluated from a toward b with early exit.
MotionCheck motion_valid(const State& a, const State& b, const World& world, double resolution);

/// Number of state checks a full evaluation of the edge would perform.
std::uint64_t motion_check_count(double length, double resolution);

/// Smallest obstacle extent over all obstacles and dimensions; +inf if none.
double min_obstacle_extent(const World& w);

nlohmann::json to_json(const World& w);
World world_from_json(const nlohmann::json& j);

}  // namespace fitstar
