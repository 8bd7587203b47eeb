#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "fitstar/common.hpp"

namespace fitstar {

/// Batch-size decay strategies. SigmoidLog is the default; the others are
/// ablation variants plus the fixed-batch baseline mode.
enum class DecayStrategy {
    kSigmoidLog,      // "fit-sl"
    kLinear,          // "fit-l"
    kParabola,        // "fit-p"
    kBrachistochrone, // "fit-b"
    kIterationCount,  // "fit-i"
    kFixed,           // "fixed"
};

/// Parse a config string ("fit-sl" | "fit-l" | "fit-p" | "fit-b" | "fit-i" |
/// "fixed"); throws ConfigError on anything else.
DecayStrategy parse_strategy(std::string_view name);
std::string strategy_name(DecayStrategy s);

/// Hypervolume contraction ratio v_current / v_initial in (0, 1].
double raw_ratio(double v_current, double v_initial);

/// Sigmoid smoothing of the raw ratio: 1 / (1 + e^(-10 (xi - 0.5))).
double sigmoid_smooth(double xi);

/// Logarithmic decay factor: ln(1 + lambda * o_smooth) / ln(1 + lambda).
double decay_factor(double o_smooth, double lambda);

/// Dimension-linked tuning parameter: (m_max + m_min) / n.
double tuning_parameter(int m_max, int m_min, int n);

/// Batch size for a decay factor psi in [0, 1]: round-half-up of
/// m_min + psi * (m_max - m_min), clamped to [m_min, m_max].
int batch_size(double psi, int m_min, int m_max);

struct DecayInputs {
    double xi = 1.0;            ///< contraction ratio in [0, 1]
    long iteration = 0;         ///< batches elapsed (iteration-count variant)
    long iteration_budget = 100;
};

/// Decay profile psi(xi) for one strategy, normalized so every strategy maps
/// the extremes to exactly 0 and 1 and is monotone between them. The
/// sigmoid-log profile rescales the sigmoid onto [0, 1] before the log step;
/// the in-planner controller keeps the unscaled chain, whose saturation floor
/// is what limits the smallest reachable batch. Throws ConfigError for kFixed.
double decay_value(DecayStrategy strategy, const DecayInputs& in, double lambda);

/// Adaptive batch-size state machine. One controller per planner run.
///
/// The batch size only changes when the solution cost does: updates with an
/// unchanged or infinite cost are no-ops, the hypervolume at the first
/// solution is latched exactly once, and every later update chains
/// contraction ratio -> decay profile -> batch size.
class BatchController {
public:
    BatchController(DecayStrategy strategy, int m_initial, int dimension,
                    long iteration_budget = 100);

    int current_batch() const { return current_batch_; }
    int m_min() const { return m_min_; }
    int m_max() const { return m_max_; }
    double lambda() const { return lambda_; }
    DecayStrategy strategy() const { return strategy_; }
    double last_cost() const { return c_last_; }
    bool has_initial_volume() const { return v_initial_set_; }
    double initial_volume() const { return v_initial_; }
    double current_volume() const { return v_current_; }
    long iteration() const { return iteration_; }

    /// Count one sampling batch (drives the iteration-count variant).
    void advance_iteration() { ++iteration_; }

    /// Called at the batch-size update sites of the search. hypervolume_of
    /// maps a solution cost to the informed-set hypervolume. Returns the new
    /// batch size, or nullopt when nothing changed.
    std::optional<int> on_cost_update(double c_current,
                                      const std::function<double(double)>& hypervolume_of);

private:
    DecayStrategy strategy_;
    int m_min_ = 1;
    int m_max_ = 1;
    int current_batch_ = 1;
    double lambda_ = 1.0;
    double c_last_ = kInf;
    bool v_initial_set_ = false;
    double v_initial_ = 0.0;
    double v_current_ = 0.0;
    long iteration_ = 0;
    long iteration_budget_ = 100;
};

}  // namespace fitstar
