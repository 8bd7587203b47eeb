#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "fitstar/phs.hpp"
#include "fitstar/state.hpp"

namespace fitstar {

/// Connection-radius parameters of the implicit random geometric graph.
struct RggParams {
    double eta = 1.1;            ///< tuning parameter, must exceed 1
    double rewire_factor = 1.001;  ///< context constant, recorded but not applied
};

/// Shrinking RGG connection radius:
///   r(q) = eta * (2 (1 + 1/n) (measure / zeta_n) (ln q / q))^(1/n)
/// where zeta_n is the unit n-ball measure. Natural logarithm. Before any
/// solution exists the caller passes the measure of the whole bounded space.
double rgg_radius(std::size_t q, double informed_measure, int n, double eta);

/// Sampled states with lazy liveness flags. Index 0 is the start, indices
/// 1..goal_count are the goals; terminals are never pruned. Indices are
/// stable for the lifetime of the set.
class SampleSet {
public:
    SampleSet(State start, std::vector<State> goals);

    std::size_t add(State x);

    std::size_t size() const { return states_.size(); }
    std::size_t dimension() const { return dimension_; }
    bool alive(std::size_t i) const { return alive_[i] != 0; }
    const State& state(std::size_t i) const { return states_[i]; }

    std::size_t start_index() const { return 0; }
    std::size_t goal_count() const { return goal_count_; }
    bool is_goal(std::size_t i) const { return i >= 1 && i <= goal_count_; }
    bool is_terminal(std::size_t i) const { return i <= goal_count_; }

    /// d(start, x) + min over goals of d(x, goal).
    double focal_sum(std::size_t i) const;
    /// Admissible cost-to-come lower bound, d(start, x).
    double cost_to_come_lb(std::size_t i) const;
    /// Admissible cost-to-go lower bound, min over goals of d(x, goal).
    double cost_to_go_lb(std::size_t i) const;

    std::size_t alive_count() const { return alive_count_; }
    /// Number of alive states with focal sum <= c_curr (all alive if infinite).
    std::size_t informed_count(double c_curr) const;

    /// Mark dead every alive non-terminal state with focal sum > c_curr.
    /// Returns the number pruned.
    std::size_t prune_outside(double c_curr);

    /// Alive states within distance r (closed ball), excluding the query
    /// itself, in ascending index order. Brute force up to 2000 alive states;
    /// beyond that a uniform-grid index, except in high dimensions where the
    /// cell probes would cost more than the scan.
    std::vector<std::size_t> neighbors(std::size_t idx, double r) const;

private:
    struct GridKey {
        std::vector<long long> cell;
    };

    void invalidate_grid() const { grid_valid_ = false; }
    void build_grid(double r) const;
    std::vector<std::size_t> neighbors_brute(std::size_t idx, double r) const;
    std::vector<std::size_t> neighbors_grid(std::size_t idx, double r) const;

    std::vector<State> states_;
    std::vector<std::uint8_t> alive_;
    std::size_t goal_count_ = 0;
    std::size_t dimension_ = 0;
    std::size_t alive_count_ = 0;

    // lazily rebuilt spatial index, keyed on integer cell coordinates
    mutable bool grid_valid_ = false;
    mutable double grid_cell_ = 0.0;
    mutable std::unordered_map<std::uint64_t, std::vector<std::size_t>> grid_;
};

/// Prune against an informed set whose foci match the set's start and first
/// goal. Returns the number pruned.
std::size_t prune(SampleSet& set, const ProlateHyperspheroid& phs);

}  // namespace fitstar
