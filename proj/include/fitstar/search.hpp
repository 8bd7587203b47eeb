#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fitstar/batch.hpp"
#include "fitstar/geometry.hpp"
#include "fitstar/rgg.hpp"

namespace fitstar {

struct Problem {
    World world;
    State start;
    std::vector<State> goals;
};

/// Throws ConfigError if start or any goal is missing, mismatched, or in
/// collision.
void validate(const Problem& p);

struct PlannerConfig {
    DecayStrategy strategy = DecayStrategy::kSigmoidLog;
    int batch = 100;                 ///< configured samples per batch (m_initial)
    double eta = 1.1;                ///< RGG constant, > 1
    double dense_resolution = 0.0;   ///< 0 = 0.25 x smallest obstacle extent, floor 1e-3
    double sparse_resolution = 0.0;  ///< 0 = 10 x dense resolution
    double inflation_factor = 1.0;
    double truncation_factor = 1.0;
    long iteration_budget = 100;     ///< batches, for the iteration-count decay
    bool radius_counts_all_samples = false;  ///< q = all alive instead of informed-only
    double fixed_radius = 0.0;       ///< > 0 bypasses the shrinking-radius rule
    int max_batches = 0;             ///< 0 = unlimited
    bool record_samples = false;     ///< snapshot the final sample set into the result
    std::uint64_t seed = 0;

    void validate() const;  ///< throws ConfigError
    double resolved_dense_resolution(const World& w) const;
    double resolved_sparse_resolution(const World& w) const;
};

/// Termination budget; whichever limit is hit first stops the run. One
/// iteration is a single queue pop or batch action, so iteration limits give
/// bit-reproducible runs where wall-clock limits cannot.
struct Budget {
    double max_time_s = kInf;
    std::uint64_t max_iterations = std::numeric_limits<std::uint64_t>::max();

    bool zero() const { return max_time_s <= 0.0 || max_iterations == 0; }
};

struct Counters {
    std::uint64_t samples = 0;        ///< valid states added to the graph
    std::uint64_t sparse_checks = 0;  ///< interpolated state checks, reverse search
    std::uint64_t dense_checks = 0;   ///< interpolated state checks, forward search
    std::uint64_t batches = 0;
};

struct PlannerResult {
    bool success = false;
    double initial_time_s = kInf;
    double initial_cost = kInf;
    double final_cost = kInf;
    std::vector<std::pair<double, double>> trace;  ///< (elapsed seconds, cost)
    Counters counters;
    std::vector<State> path;              ///< start..goal, empty on failure
    std::vector<State> samples_snapshot;  ///< populated when record_samples is set
    double last_radius = 0.0;
};

nlohmann::json to_json(const PlannerResult& r);

/// Edge-queue element. Reverse keys use the first two slots
/// (cost heuristic, accumulated effort); forward keys use all three
/// (cost heuristic, cost to target through the edge, cost to come of the
/// source). Compared lexicographically, ties broken by (source, target).
struct EdgeQueueEntry {
    std::size_t source = 0;
    std::size_t target = 0;
    std::array<double, 3> key{0.0, 0.0, 0.0};

    friend bool operator<(const EdgeQueueEntry& a, const EdgeQueueEntry& b) {
        if (a.key != b.key) return a.key < b.key;
        if (a.source != b.source) return a.source < b.source;
        return a.target < b.target;
    }
};

enum class SearchRole { kForward, kReverse };

/// Asymmetric bidirectional anytime planner over an implicit RGG: a reverse
/// search computes admissible cost and effort heuristics with sparse
/// collision checks, a forward search builds the feasible tree with dense
/// checks, and the sample set grows by adaptively sized batches.
class Planner {
public:
    Planner(Problem problem, PlannerConfig config);
    ~Planner();
    Planner(const Planner&) = delete;
    Planner& operator=(const Planner&) = delete;

    PlannerResult solve(const Budget& budget);

    // Introspection for tests and tooling. Valid after solve().
    const SampleSet& samples() const;
    /// Reverse-tree cost to come (admissible cost-to-go heuristic); +inf if unreached.
    double heuristic_cost_to_go(std::size_t idx) const;
    /// Forward-tree cost to come; +inf if not in the tree.
    double forward_cost(std::size_t idx) const;
    double current_cost() const;
    const BatchController& controller() const;

    /// Outgoing queue entries for one state under the current search state;
    /// known-invalid and already-queued edges are excluded, entries sorted by key.
    std::vector<EdgeQueueEntry> expand(std::size_t idx, SearchRole role) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Run one planning query end to end.
PlannerResult solve(const Problem& problem, const PlannerConfig& config, const Budget& budget);

/// Effort estimate of one edge: the interpolated check count at the given
/// resolution.
std::uint64_t edge_effort(double length, double resolution);

}  // namespace fitstar
