#include "fitstar/rgg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "fitstar/common.hpp"

namespace fitstar {

double rgg_radius(std::size_t q, double informed_measure, int n, double eta) {
    if (eta <= 1.0) throw ContractViolation("rgg_radius: eta must exceed 1");
    if (n < 2) throw ContractViolation("rgg_radius: dimension must be at least 2");
    if (!(informed_measure > 0.0) || !std::isfinite(informed_measure)) {
        throw ContractViolation("rgg_radius: measure must be positive and finite");
    }
    if (q < 2) {
        // ln 1 = 0 would collapse the radius to zero, so a one-state graph
        // has no meaningful connection radius at all.
        throw ContractViolation("rgg_radius: needs at least two states");
    }
    const double nd = static_cast<double>(n);
    const double qd = static_cast<double>(q);
    const double term = 2.0 * (1.0 + 1.0 / nd) * (informed_measure / unit_ball_measure(n)) *
                        (std::log(qd) / qd);
    return eta * std::pow(term, 1.0 / nd);
}

SampleSet::SampleSet(State start, std::vector<State> goals) {
    require_state(start, "start");
    if (goals.empty()) throw ContractViolation("at least one goal is required");
    dimension_ = start.size();
    states_.push_back(std::move(start));
    for (auto& g : goals) {
        require_state(g, "goal");
        if (g.size() != dimension_) throw ContractViolation("goal dimension mismatch");
        states_.push_back(std::move(g));
    }
    goal_count_ = states_.size() - 1;
    alive_.assign(states_.size(), 1);
    alive_count_ = states_.size();
}

std::size_t SampleSet::add(State x) {
    require_state(x, "sample");
    if (x.size() != dimension_) throw ContractViolation("sample dimension mismatch");
    states_.push_back(std::move(x));
    alive_.push_back(1);
    ++alive_count_;
    invalidate_grid();
    return states_.size() - 1;
}

double SampleSet::focal_sum(std::size_t i) const {
    return cost_to_come_lb(i) + cost_to_go_lb(i);
}

double SampleSet::cost_to_come_lb(std::size_t i) const {
    return distance(states_[0], states_[i]);
}

double SampleSet::cost_to_go_lb(std::size_t i) const {
    double best = kInf;
    for (std::size_t g = 1; g <= goal_count_; ++g) {
        best = std::min(best, distance(states_[i], states_[g]));
    }
    return best;
}

std::size_t SampleSet::informed_count(double c_curr) const {
    if (!std::isfinite(c_curr)) return alive_count_;
    std::size_t count = 0;
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (alive_[i] && focal_sum(i) <= c_curr) ++count;
    }
    return count;
}

std::size_t SampleSet::prune_outside(double c_curr) {
    if (!std::isfinite(c_curr)) return 0;
    std::size_t pruned = 0;
    for (std::size_t i = goal_count_ + 1; i < states_.size(); ++i) {
        if (alive_[i] && focal_sum(i) > c_curr) {
            alive_[i] = 0;
            --alive_count_;
            ++pruned;
        }
    }
    if (pruned > 0) invalidate_grid();
    return pruned;
}

std::vector<std::size_t> SampleSet::neighbors(std::size_t idx, double r) const {
    if (idx >= states_.size()) throw ContractViolation("neighbor query on unknown index");
    if (!(r > 0.0)) return {};
    if (!std::isfinite(r)) {
        std::vector<std::size_t> all;
        for (std::size_t i = 0; i < states_.size(); ++i) {
            if (i != idx && alive_[i]) all.push_back(i);
        }
        return all;
    }
    // A cell grid only pays off for many points in few dimensions; 3^n cell
    // probes overtake a linear scan quickly as n grows.
    if (alive_count_ <= 2000 || dimension_ > 6) return neighbors_brute(idx, r);
    if (!grid_valid_ || grid_cell_ != r) build_grid(r);
    return neighbors_grid(idx, r);
}

std::vector<std::size_t> SampleSet::neighbors_brute(std::size_t idx, double r) const {
    std::vector<std::size_t> out;
    const State& x = states_[idx];
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (i == idx || !alive_[i]) continue;
        if (distance(x, states_[i]) <= r) out.push_back(i);
    }
    return out;
}

namespace {

std::uint64_t cell_hash(const State& x, double cell, std::size_t n) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<std::int64_t>(std::floor(x[i] / cell));
        h = mix64(h ^ static_cast<std::uint64_t>(c) ^ (static_cast<std::uint64_t>(i) << 56));
    }
    return h;
}

std::uint64_t cell_hash_offset(const State& x, double cell, const std::vector<int>& offset) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < offset.size(); ++i) {
        const auto c = static_cast<std::int64_t>(std::floor(x[i] / cell)) + offset[i];
        h = mix64(h ^ static_cast<std::uint64_t>(c) ^ (static_cast<std::uint64_t>(i) << 56));
    }
    return h;
}

}  // namespace

void SampleSet::build_grid(double r) const {
    grid_.clear();
    grid_cell_ = r;
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (!alive_[i]) continue;
        grid_[cell_hash(states_[i], r, dimension_)].push_back(i);
    }
    grid_valid_ = true;
}

std::vector<std::size_t> SampleSet::neighbors_grid(std::size_t idx, double r) const {
    std::vector<std::size_t> out;
    const State& x = states_[idx];
    std::vector<int> offset(dimension_, -1);
    while (true) {
        const auto it = grid_.find(cell_hash_offset(x, grid_cell_, offset));
        if (it != grid_.end()) {
            for (std::size_t i : it->second) {
                if (i != idx && distance(x, states_[i]) <= r) out.push_back(i);
            }
        }
        std::size_t d = 0;
        while (d < dimension_ && offset[d] == 1) {
            offset[d] = -1;
            ++d;
        }
        if (d == dimension_) break;
        ++offset[d];
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t prune(SampleSet& set, const ProlateHyperspheroid& phs) {
    return set.prune_outside(phs.l_curr());
}

}  // namespace fitstar
