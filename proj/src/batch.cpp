#include "fitstar/batch.hpp"

#include <algorithm>
#include <cmath>

namespace fitstar {

DecayStrategy parse_strategy(std::string_view name) {
    if (name == "fit-sl") return DecayStrategy::kSigmoidLog;
    if (name == "fit-l") return DecayStrategy::kLinear;
    if (name == "fit-p") return DecayStrategy::kParabola;
    if (name == "fit-b") return DecayStrategy::kBrachistochrone;
    if (name == "fit-i") return DecayStrategy::kIterationCount;
    if (name == "fixed") return DecayStrategy::kFixed;
    throw ConfigError("unknown batch strategy: " + std::string(name));
}

std::string strategy_name(DecayStrategy s) {
    switch (s) {
        case DecayStrategy::kSigmoidLog: return "fit-sl";
        case DecayStrategy::kLinear: return "fit-l";
        case DecayStrategy::kParabola: return "fit-p";
        case DecayStrategy::kBrachistochrone: return "fit-b";
        case DecayStrategy::kIterationCount: return "fit-i";
        case DecayStrategy::kFixed: return "fixed";
    }
    throw ContractViolation("unhandled strategy");
}

double raw_ratio(double v_current, double v_initial) {
    if (!(v_initial > 0.0)) {
        throw ContractViolation("raw_ratio: initial hypervolume must be positive");
    }
    if (!(v_current > 0.0)) {
        throw ContractViolation("raw_ratio: current hypervolume must be positive");
    }
    if (v_current > v_initial) {
        throw ContractViolation("raw_ratio: hypervolume grew, which anytime search forbids");
    }
    return v_current / v_initial;
}

double sigmoid_smooth(double xi) { return 1.0 / (1.0 + std::exp(-10.0 * (xi - 0.5))); }

double decay_factor(double o_smooth, double lambda) {
    if (!(lambda > 0.0)) throw ContractViolation("decay_factor: lambda must be positive");
    return std::log1p(lambda * o_smooth) / std::log1p(lambda);
}

double tuning_parameter(int m_max, int m_min, int n) {
    if (n < 1) throw ContractViolation("tuning_parameter: dimension must be positive");
    return static_cast<double>(m_max + m_min) / static_cast<double>(n);
}

int batch_size(double psi, int m_min, int m_max) {
    const double raw =
        static_cast<double>(m_min) + psi * static_cast<double>(m_max - m_min);
    const int rounded = static_cast<int>(std::floor(raw + 0.5));
    return std::clamp(rounded, m_min, m_max);
}

namespace {

// Decay along the fastest-descent cycloid, parameterized x = (t - sin t) / pi,
// psi = (1 - cos t) / 2 for t in [0, pi]; t is recovered from x by bisection.
double brachistochrone_profile(double xi) {
    if (xi <= 0.0) return 0.0;
    if (xi >= 1.0) return 1.0;
    double lo = 0.0;
    double hi = M_PI;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((mid - std::sin(mid)) / M_PI < xi) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15) break;
    }
    const double t = 0.5 * (lo + hi);
    return 0.5 * (1.0 - std::cos(t));
}

}  // namespace

double decay_value(DecayStrategy strategy, const DecayInputs& in, double lambda) {
    const double xi = std::clamp(in.xi, 0.0, 1.0);
    switch (strategy) {
        case DecayStrategy::kSigmoidLog: {
            const double s0 = sigmoid_smooth(0.0);
            const double s1 = sigmoid_smooth(1.0);
            const double normalized = (sigmoid_smooth(xi) - s0) / (s1 - s0);
            return decay_factor(normalized, lambda);
        }
        case DecayStrategy::kLinear:
            return xi;
        case DecayStrategy::kParabola:
            return xi * xi;
        case DecayStrategy::kBrachistochrone:
            return brachistochrone_profile(xi);
        case DecayStrategy::kIterationCount: {
            if (in.iteration_budget < 1) {
                throw ContractViolation("iteration budget must be positive");
            }
            const double frac =
                static_cast<double>(in.iteration) / static_cast<double>(in.iteration_budget);
            return std::clamp(1.0 - frac, 0.0, 1.0);
        }
        case DecayStrategy::kFixed:
            throw ConfigError("the fixed strategy has no decay profile");
    }
    throw ContractViolation("unhandled strategy");
}

BatchController::BatchController(DecayStrategy strategy, int m_initial, int dimension,
                                 long iteration_budget)
    : strategy_(strategy), iteration_budget_(iteration_budget) {
    if (m_initial < 1) throw ConfigError("initial batch size must be at least 1");
    if (dimension < 2) throw ConfigError("dimension must be at least 2");
    if (iteration_budget < 1) throw ConfigError("iteration budget must be at least 1");
    m_min_ = 1;
    m_max_ = 2 * m_initial - 1;
    // Until a solution exists there is nothing to adapt to, so the adaptive
    // strategies sample densely; the fixed strategy stays at its configured
    // size forever.
    current_batch_ = (strategy == DecayStrategy::kFixed) ? m_initial : m_max_;
    lambda_ = tuning_parameter(m_max_, m_min_, dimension);
}

std::optional<int> BatchController::on_cost_update(
    double c_current, const std::function<double(double)>& hypervolume_of) {
    if (strategy_ == DecayStrategy::kFixed) return std::nullopt;
    if (!std::isfinite(c_current)) return std::nullopt;
    if (c_current == c_last_) return std::nullopt;
    if (c_current > c_last_) {
        throw ContractViolation("on_cost_update: solution cost increased, "
                                "which anytime search forbids");
    }
    c_last_ = c_current;

    const double v = hypervolume_of(c_current);
    if (!v_initial_set_) {
        v_initial_set_ = true;
        v_initial_ = v;
        v_current_ = v;
    } else {
        v_current_ = std::min(v, v_initial_);
    }
    // A zero initial hypervolume means the very first solution was already
    // optimal; there is no contraction to react to.
    if (!(v_initial_ > 0.0)) return std::nullopt;

    // A fully collapsed informed set is treated as the xi -> 0 limit;
    // raw_ratio itself rejects an exact zero.
    const double xi = (v_current_ > 0.0) ? raw_ratio(v_current_, v_initial_) : 0.0;
    double psi = 0.0;
    switch (strategy_) {
        case DecayStrategy::kSigmoidLog:
            // The controller keeps the unscaled sigmoid: its saturation at
            // xi = 0 leaves a floor above m_min, which bounds how small the
            // batches get while refining a near-optimal solution.
            psi = decay_factor(sigmoid_smooth(xi), lambda_);
            break;
        case DecayStrategy::kLinear:
        case DecayStrategy::kParabola:
        case DecayStrategy::kBrachistochrone:
        case DecayStrategy::kIterationCount:
            psi = decay_value(strategy_, DecayInputs{xi, iteration_, iteration_budget_}, lambda_);
            break;
        case DecayStrategy::kFixed:
            return std::nullopt;
    }

    const int next = batch_size(psi, m_min_, m_max_);
    if (next == current_batch_) return std::nullopt;
    current_batch_ = next;
    return next;
}

}  // namespace fitstar
