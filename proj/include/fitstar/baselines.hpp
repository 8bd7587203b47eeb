#pragma once

#include "fitstar/search.hpp"

namespace fitstar {

/// Configuration shared by the RRT-based reference planners.
struct RrtConfig {
    double goal_bias = 0.05;        ///< Informed RRT* only; RRT-Connect is bidirectional
    double max_edge_length = 0.0;   ///< 0 = 0.3 * sqrt(n)
    double steer_resolution = 0.0;  ///< 0 = the world's dense resolution default
    double eta = 1.1;               ///< rewiring radius constant (Informed RRT*)
    std::uint64_t seed = 0;

    void validate() const;
    double resolved_max_edge_length(std::size_t n) const;
};

/// Feasibility baseline: two trees grown with extend/connect alternation.
/// Returns the first feasible path found; the trace has at most one event.
PlannerResult rrt_connect_solve(const Problem& problem, const RrtConfig& config,
                                const Budget& budget);

/// Anytime optimality baseline: RRT* rewiring within
/// min(rgg radius, max edge length); once a solution exists, samples are
/// drawn from the informed set.
PlannerResult informed_rrt_star_solve(const Problem& problem, const RrtConfig& config,
                                      const Budget& budget);

}  // namespace fitstar
