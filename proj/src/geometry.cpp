#include "fitstar/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace fitstar {

bool Bounds::contains(const State& x) const {
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (x[i] < lower[i] || x[i] > upper[i]) return false;
    }
    return true;
}

double Bounds::measure() const {
    double m = 1.0;
    for (std::size_t i = 0; i < lower.size(); ++i) {
        m *= upper[i] - lower[i];
    }
    return m;
}

bool AxisAlignedBox::contains_interior(const State& x) const {
    for (std::size_t i = 0; i < min_corner.size(); ++i) {
        if (x[i] <= min_corner[i] || x[i] >= max_corner[i]) return false;
    }
    return true;
}

double AxisAlignedBox::distance_to(const State& x) const {
    double sq = 0.0;
    for (std::size_t i = 0; i < min_corner.size(); ++i) {
        const double d = std::max({min_corner[i] - x[i], 0.0, x[i] - max_corner[i]});
        sq += d * d;
    }
    return std::sqrt(sq);
}

void validate(const Bounds& b) {
    if (b.lower.size() != b.upper.size() || b.lower.size() < 2) {
        throw ContractViolation("bounds need matching lower/upper of dimension >= 2");
    }
    if (!all_finite(b.lower) || !all_finite(b.upper)) {
        throw ContractViolation("bounds have non-finite coordinates");
    }
    for (std::size_t i = 0; i < b.lower.size(); ++i) {
        if (!(b.lower[i] < b.upper[i])) {
            throw ContractViolation("bounds must satisfy lower < upper in every dimension");
        }
    }
}

void validate(const AxisAlignedBox& box, std::size_t dimension) {
    if (box.min_corner.size() != dimension || box.max_corner.size() != dimension) {
        throw ContractViolation("obstacle dimension mismatch");
    }
    for (std::size_t i = 0; i < dimension; ++i) {
        if (!(box.min_corner[i] < box.max_corner[i])) {
            throw ContractViolation("obstacle must have nonzero extent in every dimension");
        }
    }
}

void validate(const World& w) {
    validate(w.bounds);
    for (const auto& box : w.obstacles) {
        validate(box, w.dimension());
        // the obstacle must actually overlap the bounded space
        for (std::size_t i = 0; i < w.dimension(); ++i) {
            if (box.max_corner[i] <= w.bounds.lower[i] || box.min_corner[i] >= w.bounds.upper[i]) {
                throw ContractViolation("obstacle lies entirely outside the bounds");
            }
        }
    }
}

bool state_valid(const State& x, const World& world) {
    if (!world.bounds.contains(x)) return false;
    for (const auto& box : world.obstacles) {
        if (box.contains_interior(x)) return false;
    }
    return true;
}

std::uint64_t motion_check_count(double length, double resolution) {
    return static_cast<std::uint64_t>(std::ceil(length / resolution)) + 1;
}

MotionCheck motion_valid(const State& a, const State& b, const World& world, double resolution) {
    if (resolution <= 0.0) {
        throw ContractViolation("motion_valid: resolution must be positive");
    }
    const double len = distance(a, b);
    const std::uint64_t n = motion_check_count(len, resolution);
    MotionCheck result;
    for (std::uint64_t k = 0; k < n; ++k) {
        const double t = (n == 1) ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
        ++result.checks;
        if (!state_valid(interpolate(a, b, t), world)) {
            result.valid = false;
            return result;
        }
    }
    result.valid = true;
    return result;
}

double min_obstacle_extent(const World& w) {
    double m = kInf;
    for (const auto& box : w.obstacles) {
        for (std::size_t i = 0; i < box.min_corner.size(); ++i) {
            m = std::min(m, box.max_corner[i] - box.min_corner[i]);
        }
    }
    return m;
}

nlohmann::json to_json(const World& w) {
    nlohmann::json obstacles = nlohmann::json::array();
    for (const auto& box : w.obstacles) {
        obstacles.push_back({{"min", box.min_corner}, {"max", box.max_corner}});
    }
    return {
        {"dimension", w.dimension()},
        {"bounds", {{"lower", w.bounds.lower}, {"upper", w.bounds.upper}}},
        {"obstacles", obstacles},
    };
}

World world_from_json(const nlohmann::json& j) {
    World w;
    w.bounds.lower = j.at("bounds").at("lower").get<State>();
    w.bounds.upper = j.at("bounds").at("upper").get<State>();
    for (const auto& jb : j.at("obstacles")) {
        w.obstacles.push_back({jb.at("min").get<State>(), jb.at("max").get<State>()});
    }
    const auto n = j.at("dimension").get<std::size_t>();
    if (n != w.dimension()) {
        throw ContractViolation("world file dimension field disagrees with bounds");
    }
    validate(w);
    return w;
}

}  // namespace fitstar
