#include "fitstar/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

#include "fitstar/sampling.hpp"

namespace fitstar {

void RrtConfig::validate() const {
    if (goal_bias < 0.0 || goal_bias >= 1.0) throw ConfigError("goal bias must be in [0, 1)");
    if (max_edge_length < 0.0) throw ConfigError("max edge length must be non-negative");
    if (steer_resolution < 0.0) throw ConfigError("steer resolution must be non-negative");
    if (!(eta > 1.0)) throw ConfigError("eta must exceed 1");
}

double RrtConfig::resolved_max_edge_length(std::size_t n) const {
    if (max_edge_length > 0.0) return max_edge_length;
    return 0.3 * std::sqrt(static_cast<double>(n));
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double resolve_steer_resolution(const RrtConfig& config, const World& world) {
    if (config.steer_resolution > 0.0) return config.steer_resolution;
    return PlannerConfig{}.resolved_dense_resolution(world);
}

State steer(const State& from, const State& to, double max_len) {
    const double d = distance(from, to);
    if (d <= max_len) return to;
    return interpolate(from, to, max_len / d);
}

std::size_t nearest(const std::vector<State>& nodes, const State& x) {
    std::size_t best = 0;
    double best_d = kInf;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double d = distance(nodes[i], x);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

double path_cost(const std::vector<State>& path) {
    double c = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) c += distance(path[i - 1], path[i]);
    return c;
}

struct Tree {
    std::vector<State> nodes;
    std::vector<std::size_t> parent;

    std::size_t add(State x, std::size_t p) {
        nodes.push_back(std::move(x));
        parent.push_back(p);
        return nodes.size() - 1;
    }

    std::vector<State> path_to_root(std::size_t idx) const {
        std::vector<State> out;
        for (std::size_t v = idx; v != kNone; v = parent[v]) out.push_back(nodes[v]);
        return out;
    }
};

enum class ExtendOutcome { kTrapped, kAdvanced, kReached };

}  // namespace

PlannerResult rrt_connect_solve(const Problem& problem, const RrtConfig& config,
                                const Budget& budget) {
    config.validate();
    fitstar::validate(problem);
    const auto t0 = Clock::now();
    const std::size_t n = problem.world.dimension();
    const double max_len = config.resolved_max_edge_length(n);
    const double resolution = resolve_steer_resolution(config, problem.world);
    Rng rng(config.seed);

    PlannerResult result;
    Tree start_tree;
    start_tree.add(problem.start, kNone);
    Tree goal_tree;
    for (const auto& g : problem.goals) goal_tree.add(g, kNone);

    Tree* a = &start_tree;
    Tree* b = &goal_tree;
    bool a_is_start = true;

    const auto extend = [&](Tree& tree, const State& target,
                            std::size_t& new_idx) -> ExtendOutcome {
        const std::size_t near = nearest(tree.nodes, target);
        const double d = distance(tree.nodes[near], target);
        if (d <= 0.0) {
            new_idx = near;
            return ExtendOutcome::kReached;
        }
        const State x_new = steer(tree.nodes[near], target, max_len);
        const auto mc = motion_valid(tree.nodes[near], x_new, problem.world, resolution);
        result.counters.dense_checks += mc.checks;
        if (!mc.valid) return ExtendOutcome::kTrapped;
        new_idx = tree.add(x_new, near);
        ++result.counters.samples;
        return d <= max_len ? ExtendOutcome::kReached : ExtendOutcome::kAdvanced;
    };

    if (!budget.zero()) {
        for (std::uint64_t it = 0;
             it < budget.max_iterations && seconds_since(t0) < budget.max_time_s; ++it) {
            const State x_rand = sample_uniform(problem.world.bounds, rng);
            std::size_t a_idx = kNone;
            if (extend(*a, x_rand, a_idx) != ExtendOutcome::kTrapped) {
                const State& bridge = a->nodes[a_idx];
                std::size_t b_idx = kNone;
                ExtendOutcome outcome = ExtendOutcome::kAdvanced;
                while (outcome == ExtendOutcome::kAdvanced) {
                    outcome = extend(*b, bridge, b_idx);
                }
                if (outcome == ExtendOutcome::kReached) {
                    auto to_start = (a_is_start ? *a : *b).path_to_root(a_is_start ? a_idx : b_idx);
                    std::reverse(to_start.begin(), to_start.end());
                    auto to_goal = (a_is_start ? *b : *a).path_to_root(a_is_start ? b_idx : a_idx);
                    // the bridge state appears at the end of both halves
                    to_goal.erase(to_goal.begin());
                    result.path = std::move(to_start);
                    result.path.insert(result.path.end(), to_goal.begin(), to_goal.end());
                    result.success = true;
                    const double cost = path_cost(result.path);
                    const double now = seconds_since(t0);
                    result.initial_time_s = now;
                    result.initial_cost = cost;
                    result.final_cost = cost;
                    result.trace.emplace_back(now, cost);
                    break;
                }
            }
            std::swap(a, b);
            a_is_start = !a_is_start;
        }
    }
    return result;
}

PlannerResult informed_rrt_star_solve(const Problem& problem, const RrtConfig& config,
                                      const Budget& budget) {
    config.validate();
    fitstar::validate(problem);
    const auto t0 = Clock::now();
    const int n = static_cast<int>(problem.world.dimension());
    const double max_len = config.resolved_max_edge_length(problem.world.dimension());
    const double resolution = resolve_steer_resolution(config, problem.world);
    const double space_measure = problem.world.bounds.measure();
    Rng rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    PlannerResult result;
    std::vector<State> nodes{problem.start};
    std::vector<std::size_t> parent{kNone};
    std::vector<double> g{0.0};
    std::vector<std::vector<std::size_t>> children{{}};
    std::vector<std::size_t> goal_node(problem.goals.size(), kNone);
    double c_current = kInf;

    const auto edge_valid = [&](const State& x, const State& y) {
        const auto mc = motion_valid(x, y, problem.world, resolution);
        result.counters.dense_checks += mc.checks;
        return mc.valid;
    };

    const auto update_solution = [&]() {
        double best = kInf;
        for (std::size_t i = 0; i < goal_node.size(); ++i) {
            if (goal_node[i] != kNone) best = std::min(best, g[goal_node[i]]);
        }
        if (best < c_current) {
            c_current = best;
            const double now = seconds_since(t0);
            if (result.trace.empty()) {
                result.initial_time_s = now;
                result.initial_cost = best;
            }
            result.trace.emplace_back(now, best);
        }
    };

    const auto sample_free = [&]() -> State {
        if (unit(rng) < config.goal_bias) {
            std::size_t pick = 0;
            if (problem.goals.size() > 1) {
                pick = static_cast<std::size_t>(unit(rng) *
                                                static_cast<double>(problem.goals.size()));
                pick = std::min(pick, problem.goals.size() - 1);
            }
            return problem.goals[pick];
        }
        if (!std::isfinite(c_current)) return sample_uniform(problem.world.bounds, rng);
        std::vector<ProlateHyperspheroid> informed;
        std::vector<double> cumulative;
        double total = 0.0;
        for (const auto& goal : problem.goals) {
            const double l_min = distance(problem.start, goal);
            if (c_current > l_min) {
                informed.emplace_back(problem.start, goal, c_current);
                total += informed.back().measure();
                cumulative.push_back(total);
            }
        }
        if (informed.empty() || !(total > 0.0)) {
            throw SamplingStarvedError("informed set has no volume left");
        }
        std::size_t pick = 0;
        if (informed.size() > 1) {
            const double u = unit(rng) * total;
            while (pick + 1 < informed.size() && cumulative[pick] <= u) ++pick;
        }
        return sample_informed(informed[pick], problem.world.bounds, rng);
    };

    if (!budget.zero()) {
        for (std::uint64_t it = 0;
             it < budget.max_iterations && seconds_since(t0) < budget.max_time_s; ++it) {
            State x_rand;
            try {
                x_rand = sample_free();
            } catch (const SamplingStarvedError&) {
                break;  // nothing left to refine
            }
            const std::size_t near = nearest(nodes, x_rand);
            if (distance(nodes[near], x_rand) <= 0.0) continue;
            const State x_new = steer(nodes[near], x_rand, max_len);

            const double radius =
                std::min(rgg_radius(nodes.size() + 1, space_measure, n, config.eta), max_len);
            result.last_radius = radius;
            std::vector<std::size_t> nearby;
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                if (distance(nodes[i], x_new) <= radius) nearby.push_back(i);
            }
            if (std::find(nearby.begin(), nearby.end(), near) == nearby.end()) {
                nearby.push_back(near);
            }

            // connect through the cheapest collision-free neighbor
            std::vector<std::pair<double, std::size_t>> candidates;
            for (std::size_t i : nearby) candidates.emplace_back(g[i] + distance(nodes[i], x_new), i);
            std::sort(candidates.begin(), candidates.end());
            std::size_t best_parent = kNone;
            double best_cost = kInf;
            for (const auto& [cost, i] : candidates) {
                if (std::isfinite(c_current) && cost >= c_current) break;
                if (edge_valid(nodes[i], x_new)) {
                    best_parent = i;
                    best_cost = cost;
                    break;
                }
            }
            if (best_parent == kNone) continue;

            const std::size_t idx = nodes.size();
            nodes.push_back(x_new);
            parent.push_back(best_parent);
            g.push_back(best_cost);
            children.emplace_back();
            children[best_parent].push_back(idx);
            ++result.counters.samples;

            for (std::size_t gi = 0; gi < problem.goals.size(); ++gi) {
                if (goal_node[gi] == kNone && distance(x_new, problem.goals[gi]) < 1e-12) {
                    goal_node[gi] = idx;
                }
            }

            // rewire the neighborhood through the new node
            for (std::size_t u : nearby) {
                if (u == best_parent) continue;
                const double cand = g[idx] + distance(nodes[idx], nodes[u]);
                if (cand >= g[u]) continue;
                if (!edge_valid(nodes[idx], nodes[u])) continue;
                auto& siblings = children[parent[u]];
                siblings.erase(std::find(siblings.begin(), siblings.end(), u));
                parent[u] = idx;
                children[idx].push_back(u);
                g[u] = cand;
                std::vector<std::size_t> stack(children[u].begin(), children[u].end());
                while (!stack.empty()) {
                    const std::size_t v = stack.back();
                    stack.pop_back();
                    g[v] = g[parent[v]] + distance(nodes[parent[v]], nodes[v]);
                    stack.insert(stack.end(), children[v].begin(), children[v].end());
                }
            }
            update_solution();
        }
    }

    result.success = std::isfinite(c_current);
    result.final_cost = c_current;
    if (result.success) {
        std::size_t best = kNone;
        for (std::size_t gi = 0; gi < goal_node.size(); ++gi) {
            if (goal_node[gi] == kNone) continue;
            if (best == kNone || g[goal_node[gi]] < g[best]) best = goal_node[gi];
        }
        for (std::size_t v = best; v != kNone; v = parent[v]) result.path.push_back(nodes[v]);
        std::reverse(result.path.begin(), result.path.end());
    }
    return result;
}

}  // namespace fitstar
