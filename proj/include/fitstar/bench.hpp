#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fitstar/baselines.hpp"
#include "fitstar/search.hpp"

namespace fitstar {

struct WallGapParams {
    double wall_center = 0.5;   ///< wall position along dimension 0
    double thickness = 0.2;     ///< wall extent along dimension 0
    double gap_width = 0.04;    ///< opening extent along dimension 1
    double gap_offset = 0.1;    ///< gap center above the start-goal line
    double wall_top = 0.8;      ///< wall extent along dimension 1 (top margin stays open)
};

struct RandomRectParams {
    int count = -1;             ///< -1 = 10 * n
    double max_width = 0.2;
    double clearance = 0.05;    ///< keep-out radius around start and goals
    long resample_budget = 100000;
};

/// Unit-hypercube wall-with-gap problem. The wall spans every dimension past
/// the second; along dimension 1 it reaches wall_top, leaving the top margin
/// and the gap as the two passage classes.
Problem make_wall_gap(int n, const WallGapParams& params = {});

/// Unit-hypercube problem with randomly placed axis-aligned boxes. Obstacles
/// too close to the start or a goal are resampled; the generator is a pure
/// function of (n, count, max_width, seed).
Problem make_random_rectangles(int n, int count, double max_width, std::uint64_t seed,
                               const RandomRectParams& params = {});

/// One benchmark environment plus its run budget.
struct ScenarioSpec {
    std::string id;
    int dimension = 2;
    Problem problem;
    double budget_s = 1.0;
    std::uint64_t max_iterations = 0;  ///< 0 = time-limited only
};

ScenarioSpec make_scenario(const std::string& kind, int n, std::uint64_t seed, double budget_s);

nlohmann::json to_json(const ScenarioSpec& s);
ScenarioSpec scenario_from_json(const nlohmann::json& j);

/// One benchmark competitor: a planner id ("fit-sl", "fit-l", "fit-p",
/// "fit-b", "fit-i", "fixed", "rrt-connect", "informed-rrtstar") plus its
/// options.
struct PlannerSpec {
    std::string id;
    PlannerConfig core;   ///< used by the fit-* / fixed ids
    RrtConfig rrt;        ///< used by the rrt ids

    bool is_core() const;
    void validate() const;  ///< throws ConfigError on unknown id
};

PlannerSpec make_planner_spec(const std::string& id);

struct TrialRecord {
    std::string planner;
    std::string scenario;
    int dimension = 2;
    std::uint64_t seed = 0;
    bool success = false;
    double initial_time_s = kInf;
    double initial_cost = kInf;
    double final_cost = kInf;
    std::vector<std::pair<double, double>> trace;
    Counters counters;
    std::vector<State> path;
    std::string error;  ///< nonempty when the trial aborted and was recorded as failed
};

/// Run every (scenario, planner, trial) cell. Seeds derive from
/// (master_seed, planner id, scenario id, trial index) so any cell can be
/// reproduced alone. Cells may fan out across jobs worker threads; the
/// result order is by cell index regardless. Aborting trials become failed
/// records, never abort the matrix.
std::vector<TrialRecord> run_trials(const std::vector<ScenarioSpec>& scenarios,
                                    const std::vector<PlannerSpec>& planners,
                                    int trials_per_cell, std::uint64_t master_seed,
                                    int jobs = 1);

/// Run a single cell (used by run_trials and by reproduction tooling).
TrialRecord run_trial(const ScenarioSpec& scenario, const PlannerSpec& planner,
                      std::uint64_t trial_index, std::uint64_t master_seed);

/// Infinity-aware order statistics per (planner, scenario) group.
struct SummaryRow {
    std::string planner;
    std::string scenario;
    std::size_t runs = 0;
    double success_rate = 0.0;
    double t_init_min = kInf, t_init_med = kInf, t_init_max = kInf;
    double c_init_min = kInf, c_init_med = kInf, c_init_max = kInf;
    double c_final_med = kInf;
    double c_final_ci_lo = kInf, c_final_ci_hi = kInf;  ///< nonparametric 99% CI of the median
    double t_init_ci_lo = kInf, t_init_ci_hi = kInf;
};

/// Lower-median convention (order statistic, so infinities propagate); the
/// 99% CI uses binomial order-statistic ranks with z = 2.576.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

/// Lower median of a sample under the infinity-aware total order.
double lower_median(std::vector<double> values);

std::string trials_csv(const std::vector<TrialRecord>& records);
std::string summary_csv(const std::vector<SummaryRow>& rows);
std::string trace_csv(const TrialRecord& record);

}  // namespace fitstar
