#pragma once

#include <vector>

#include "fitstar/state.hpp"

namespace fitstar {

/// Lebesgue measure of the unit n-ball: pi^(n/2) / Gamma(n/2 + 1).
double unit_ball_measure(int n);

/// The informed set for a path-length objective: an n-dimensional prolate
/// hyperspheroid with foci at start and goal, transverse diameter l_curr and
/// conjugate diameter sqrt(l_curr^2 - l_min^2).
class ProlateHyperspheroid {
public:
    ProlateHyperspheroid(State focus_start, State focus_goal, double cost);

    std::size_t dimension() const { return focus_start_.size(); }
    const State& focus_start() const { return focus_start_; }
    const State& focus_goal() const { return focus_goal_; }
    double l_min() const { return l_min_; }
    double l_curr() const { return l_curr_; }
    State center() const;

    /// Transverse semi-axis, l_curr / 2.
    double semi_major() const { return l_curr_ / 2.0; }
    /// Conjugate semi-axis, sqrt(l_curr^2 - l_min^2) / 2.
    double semi_minor() const;

    /// Lebesgue hypervolume of the hyperspheroid.
    double measure() const;

    /// Focal-sum membership test: d(x, start) + d(x, goal) <= l_curr + tol.
    bool contains(const State& x, double tol = 1e-9) const;

    /// Rotation matrix entry; column 0 is the unit vector from start to goal,
    /// the remaining columns are an orthonormal completion.
    double rotation(std::size_t row, std::size_t col) const { return rot_[row * dimension() + col]; }

    /// Map a point from the hyperspheroid frame to the world frame (rotate
    /// about the center, then translate).
    State to_world_frame(const State& local) const;

private:
    State focus_start_;
    State focus_goal_;
    double l_min_ = 0.0;
    double l_curr_ = 0.0;
    std::vector<double> rot_;  // row-major n x n, columns are frame axes
};

/// Build the informed set from a solution of the given cost.
ProlateHyperspheroid phs_from_solution(const State& start, const State& goal, double cost);

/// Hypervolume of the informed set (see ProlateHyperspheroid::measure).
double phs_measure(const ProlateHyperspheroid& phs);

}  // namespace fitstar
