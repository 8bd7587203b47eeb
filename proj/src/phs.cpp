#include "fitstar/phs.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

#include "fitstar/common.hpp"

namespace fitstar {
namespace {

// Orthonormal frame whose first column is `direction` (assumed unit length).
// The remaining columns come from modified Gram-Schmidt over the standard
// basis, skipping the basis vector most parallel to `direction`.
std::vector<double> frame_from_direction(const State& direction) {
    const std::size_t n = direction.size();
    std::vector<std::vector<double>> axes;
    axes.reserve(n);
    axes.push_back(std::vector<double>(direction.begin(), direction.end()));

    std::size_t skip = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(direction[i]) > best) {
            best = std::abs(direction[i]);
            skip = i;
        }
    }

    for (std::size_t i = 0; i < n && axes.size() < n; ++i) {
        if (i == skip) continue;
        std::vector<double> v(n, 0.0);
        v[i] = 1.0;
        for (const auto& a : axes) {
            double dot = 0.0;
            for (std::size_t k = 0; k < n; ++k) dot += v[k] * a[k];
            for (std::size_t k = 0; k < n; ++k) v[k] -= dot * a[k];
        }
        double norm = 0.0;
        for (double c : v) norm += c * c;
        norm = std::sqrt(norm);
        if (norm < 1e-12) {
            throw ContractViolation("failed to build orthonormal frame");
        }
        for (double& c : v) c /= norm;
        axes.push_back(std::move(v));
    }

    std::vector<double> rot(n * n, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t row = 0; row < n; ++row) {
            rot[row * n + col] = axes[col][row];
        }
    }
    return rot;
}

}  // namespace

double unit_ball_measure(int n) {
    if (n < 1) throw ContractViolation("unit_ball_measure: dimension must be positive");
    const double half = static_cast<double>(n) / 2.0;
    return std::pow(M_PI, half) / std::tgamma(half + 1.0);
}

ProlateHyperspheroid::ProlateHyperspheroid(State focus_start, State focus_goal, double cost)
    : focus_start_(std::move(focus_start)), focus_goal_(std::move(focus_goal)) {
    require_state(focus_start_, "hyperspheroid start focus");
    require_state(focus_goal_, "hyperspheroid goal focus");
    if (focus_start_.size() != focus_goal_.size()) {
        throw ContractViolation("hyperspheroid foci have mismatched dimensions");
    }
    l_min_ = distance(focus_start_, focus_goal_);
    if (l_min_ <= 0.0) {
        throw DegenerateFociError("hyperspheroid foci coincide");
    }
    if (!(cost >= l_min_)) {
        throw InfeasibleCostError("hyperspheroid cost below the distance between its foci");
    }
    l_curr_ = cost;

    State direction(dimension());
    for (std::size_t i = 0; i < dimension(); ++i) {
        direction[i] = (focus_goal_[i] - focus_start_[i]) / l_min_;
    }
    rot_ = frame_from_direction(direction);
}

State ProlateHyperspheroid::center() const {
    State c(dimension());
    for (std::size_t i = 0; i < dimension(); ++i) {
        c[i] = 0.5 * (focus_start_[i] + focus_goal_[i]);
    }
    return c;
}

double ProlateHyperspheroid::semi_minor() const {
    return std::sqrt(l_curr_ * l_curr_ - l_min_ * l_min_) / 2.0;
}

double ProlateHyperspheroid::measure() const {
    const int n = static_cast<int>(dimension());
    return semi_major() * std::pow(semi_minor(), n - 1) * unit_ball_measure(n);
}

bool ProlateHyperspheroid::contains(const State& x, double tol) const {
    return distance(x, focus_start_) + distance(x, focus_goal_) <= l_curr_ + tol;
}

State ProlateHyperspheroid::to_world_frame(const State& local) const {
    const std::size_t n = dimension();
    State world = center();
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t col = 0; col < n; ++col) {
            world[row] += rot_[row * n + col] * local[col];
        }
    }
    return world;
}

ProlateHyperspheroid phs_from_solution(const State& start, const State& goal, double cost) {
    return ProlateHyperspheroid(start, goal, cost);
}

double phs_measure(const ProlateHyperspheroid& phs) { return phs.measure(); }

}  // namespace fitstar
