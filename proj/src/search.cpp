#include "fitstar/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "fitstar/sampling.hpp"

namespace fitstar {

void validate(const Problem& p) {
    validate(p.world);
    const std::size_t n = p.world.dimension();
    if (p.start.size() != n) throw ConfigError("start dimension does not match the world");
    if (p.goals.empty()) throw ConfigError("at least one goal is required");
    if (!all_finite(p.start)) throw ConfigError("start has non-finite coordinates");
    if (!state_valid(p.start, p.world)) throw ConfigError("start is in collision or out of bounds");
    for (const auto& g : p.goals) {
        if (g.size() != n) throw ConfigError("goal dimension does not match the world");
        if (!all_finite(g)) throw ConfigError("goal has non-finite coordinates");
        if (!state_valid(g, p.world)) throw ConfigError("goal is in collision or out of bounds");
    }
}

void PlannerConfig::validate() const {
    if (batch < 1) throw ConfigError("batch size must be at least 1");
    if (!(eta > 1.0)) throw ConfigError("eta must exceed 1");
    if (dense_resolution < 0.0 || sparse_resolution < 0.0) {
        throw ConfigError("resolutions must be non-negative");
    }
    if (inflation_factor < 1.0) throw ConfigError("inflation factor must be at least 1");
    if (truncation_factor < 1.0) throw ConfigError("truncation factor must be at least 1");
    if (iteration_budget < 1) throw ConfigError("iteration budget must be at least 1");
    if (fixed_radius < 0.0) throw ConfigError("fixed radius must be non-negative");
    if (max_batches < 0) throw ConfigError("max batches must be non-negative");
}

double PlannerConfig::resolved_dense_resolution(const World& w) const {
    if (dense_resolution > 0.0) return dense_resolution;
    if (w.obstacles.empty()) return 0.01;
    return std::max(0.25 * min_obstacle_extent(w), 1e-3);
}

double PlannerConfig::resolved_sparse_resolution(const World& w) const {
    if (sparse_resolution > 0.0) return sparse_resolution;
    return 10.0 * resolved_dense_resolution(w);
}

std::uint64_t edge_effort(double length, double resolution) {
    return motion_check_count(length, resolution);
}

namespace {

nlohmann::json num_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

}  // namespace

nlohmann::json to_json(const PlannerResult& r) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& [t, c] : r.trace) trace.push_back({t, c});
    nlohmann::json path = nlohmann::json::array();
    for (const auto& s : r.path) path.push_back(s);
    nlohmann::json j{
        {"success", r.success},
        {"initial_time_s", num_or_null(r.initial_time_s)},
        {"initial_cost", num_or_null(r.initial_cost)},
        {"final_cost", num_or_null(r.final_cost)},
        {"trace", trace},
        {"counters",
         {{"samples", r.counters.samples},
          {"sparse_checks", r.counters.sparse_checks},
          {"dense_checks", r.counters.dense_checks},
          {"batches", r.counters.batches}}},
        {"path", path},
        {"last_radius", r.last_radius},
    };
    if (!r.samples_snapshot.empty()) {
        nlohmann::json samples = nlohmann::json::array();
        for (const auto& s : r.samples_snapshot) samples.push_back(s);
        j["samples"] = samples;
    }
    return j;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::uint64_t edge_id(std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

std::uint64_t directed_id(std::size_t a, std::size_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

/// Ordered edge queue with insert-or-decrease semantics and a per-target
/// source lookup so entries can be re-keyed when their target's heuristic
/// improves.
class EdgeQueue {
public:
    bool empty() const { return set_.empty(); }
    double min_key0() const { return set_.empty() ? kInf : set_.begin()->key[0]; }
    bool contains(std::size_t s, std::size_t t) const {
        return key_of_.count(directed_id(s, t)) != 0;
    }

    /// Insert, or lower the key of an existing entry; a worse key is ignored.
    void push(const EdgeQueueEntry& e) {
        const auto id = directed_id(e.source, e.target);
        auto it = key_of_.find(id);
        if (it != key_of_.end()) {
            if (!(e.key < it->second)) return;
            set_.erase(EdgeQueueEntry{e.source, e.target, it->second});
            it->second = e.key;
            set_.insert(e);
            return;
        }
        key_of_.emplace(id, e.key);
        by_target_[e.target].insert(e.source);
        set_.insert(e);
    }

    EdgeQueueEntry pop() {
        EdgeQueueEntry e = *set_.begin();
        erase(e.source, e.target);
        return e;
    }

    void erase(std::size_t s, std::size_t t) {
        auto it = key_of_.find(directed_id(s, t));
        if (it == key_of_.end()) return;
        set_.erase(EdgeQueueEntry{s, t, it->second});
        key_of_.erase(it);
        auto bt = by_target_.find(t);
        bt->second.erase(s);
        if (bt->second.empty()) by_target_.erase(bt);
    }

    std::vector<std::size_t> sources_into(std::size_t t) const {
        auto it = by_target_.find(t);
        if (it == by_target_.end()) return {};
        return {it->second.begin(), it->second.end()};
    }

    void clear() {
        set_.clear();
        key_of_.clear();
        by_target_.clear();
    }

private:
    std::set<EdgeQueueEntry> set_;
    std::unordered_map<std::uint64_t, std::array<double, 3>> key_of_;
    std::unordered_map<std::size_t, std::set<std::size_t>> by_target_;
};

}  // namespace

struct Planner::Impl {
    Problem problem_;
    PlannerConfig config_;
    SampleSet samples_;
    Rng rng_;
    int dim_;
    double dense_res_;
    double sparse_res_;
    BatchController controller_;

    // forward tree (dense-validated) and reverse tree (sparse-validated)
    std::vector<double> g_f_, g_r_, effort_r_;
    std::vector<std::size_t> parent_f_, parent_r_;
    std::vector<std::vector<std::size_t>> children_f_, children_r_;

    EdgeQueue fwd_, rev_;
    std::unordered_set<std::uint64_t> blocked_, dense_valid_, sparse_valid_;

    double r_ = 0.0;
    double c_current_ = kInf;
    Counters counters_;
    std::vector<std::pair<double, double>> trace_;
    double initial_time_ = kInf;
    double initial_cost_ = kInf;
    bool exhausted_ = false;  // sampling starved or informed set has no volume
    std::chrono::steady_clock::time_point t0_;

    Impl(Problem problem, PlannerConfig config)
        : problem_(std::move(problem)),
          config_(config),
          samples_(problem_.start, problem_.goals),
          rng_(config_.seed),
          dim_(static_cast<int>(problem_.world.dimension())),
          dense_res_(config_.resolved_dense_resolution(problem_.world)),
          sparse_res_(config_.resolved_sparse_resolution(problem_.world)),
          controller_(config_.strategy, config_.batch, dim_, config_.iteration_budget) {
        ensure_arrays();
        g_f_[samples_.start_index()] = 0.0;
    }

    void ensure_arrays() {
        const std::size_t n = samples_.size();
        g_f_.resize(n, kInf);
        g_r_.resize(n, kInf);
        effort_r_.resize(n, kInf);
        parent_f_.resize(n, kNone);
        parent_r_.resize(n, kNone);
        children_f_.resize(n);
        children_r_.resize(n);
    }

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

    double edge_cost(std::size_t s, std::size_t t) const {
        return distance(samples_.state(s), samples_.state(t));
    }

    bool is_blocked(std::size_t s, std::size_t t) const {
        return blocked_.count(edge_id(s, t)) != 0;
    }

    EdgeQueueEntry forward_entry(std::size_t s, std::size_t t) const {
        const double c = edge_cost(s, t);
        return {s, t,
                {g_f_[s] + c + config_.inflation_factor * g_r_[t], g_f_[s] + c, g_f_[s]}};
    }

    EdgeQueueEntry reverse_entry(std::size_t s, std::size_t t) const {
        const double c = edge_cost(s, t);
        const double effort =
            effort_r_[s] + static_cast<double>(edge_effort(c, sparse_res_));
        return {s, t, {g_r_[s] + c + samples_.cost_to_come_lb(t), effort, 0.0}};
    }

    void expand_forward(std::size_t s) {
        if (!std::isfinite(g_f_[s])) return;
        for (std::size_t u : samples_.neighbors(s, r_)) {
            if (is_blocked(s, u)) continue;
            const double c = edge_cost(s, u);
            if (g_f_[s] + c >= g_f_[u]) continue;
            if (std::isfinite(c_current_) &&
                g_f_[s] + c + samples_.cost_to_go_lb(u) > c_current_) {
                continue;
            }
            fwd_.push(forward_entry(s, u));
        }
    }

    void expand_reverse(std::size_t s) {
        if (!std::isfinite(g_r_[s])) return;
        for (std::size_t u : samples_.neighbors(s, r_)) {
            if (is_blocked(s, u)) continue;
            const double c = edge_cost(s, u);
            if (g_r_[s] + c >= g_r_[u]) continue;
            if (std::isfinite(c_current_) &&
                g_r_[s] + c + samples_.cost_to_come_lb(u) > c_current_) {
                continue;
            }
            rev_.push(reverse_entry(s, u));
        }
    }

    /// Informed-set hypervolume at solution cost c, summed over goals.
    double informed_measure(double c) const {
        double total = 0.0;
        for (std::size_t g = 1; g <= samples_.goal_count(); ++g) {
            const double l_min = distance(problem_.start, samples_.state(g));
            if (c > l_min) {
                total += ProlateHyperspheroid(problem_.start, samples_.state(g), c).measure();
            }
        }
        return total;
    }

    void controller_update() {
        controller_.on_cost_update(c_current_, [this](double c) { return informed_measure(c); });
    }

    bool edge_sparse_valid(std::size_t s, std::size_t t) {
        const auto id = edge_id(s, t);
        if (dense_valid_.count(id) || sparse_valid_.count(id)) return true;
        const auto mc =
            motion_valid(samples_.state(s), samples_.state(t), problem_.world, sparse_res_);
        counters_.sparse_checks += mc.checks;
        if (mc.valid) sparse_valid_.insert(id);
        return mc.valid;
    }

    bool edge_dense_valid(std::size_t s, std::size_t t) {
        const auto id = edge_id(s, t);
        if (dense_valid_.count(id)) return true;
        const auto mc =
            motion_valid(samples_.state(s), samples_.state(t), problem_.world, dense_res_);
        counters_.dense_checks += mc.checks;
        if (mc.valid) dense_valid_.insert(id);
        return mc.valid;
    }

    static void set_parent(std::vector<std::size_t>& parent,
                           std::vector<std::vector<std::size_t>>& children, std::size_t child,
                           std::size_t new_parent) {
        const std::size_t old = parent[child];
        if (old != kNone) {
            auto& list = children[old];
            list.erase(std::find(list.begin(), list.end(), child));
        }
        parent[child] = new_parent;
        if (new_parent != kNone) children[new_parent].push_back(child);
    }

    bool need_new_batch() const {
        const double limit = std::isfinite(c_current_)
                                 ? config_.truncation_factor * c_current_
                                 : kInf;
        const bool rev_done = rev_.empty() || rev_.min_key0() >= limit;
        const bool fwd_done = fwd_.empty() || fwd_.min_key0() >= limit;
        return rev_done && fwd_done;
    }

    bool reverse_turn() const {
        if (rev_.empty()) return false;
        if (fwd_.empty()) return true;
        return rev_.min_key0() <= fwd_.min_key0();
    }

    // ---- batch boundary -------------------------------------------------

    bool sample_states(int m) {
        const auto& bounds = problem_.world.bounds;
        std::vector<ProlateHyperspheroid> informed;
        std::vector<double> cumulative;
        if (std::isfinite(c_current_)) {
            double total = 0.0;
            for (std::size_t g = 1; g <= samples_.goal_count(); ++g) {
                const double l_min = distance(problem_.start, samples_.state(g));
                if (c_current_ > l_min) {
                    informed.emplace_back(problem_.start, samples_.state(g), c_current_);
                    total += informed.back().measure();
                    cumulative.push_back(total);
                }
            }
            if (informed.empty() || !(total > 0.0)) return false;  // nothing left to refine
        }

        std::uniform_real_distribution<double> unit(0.0, 1.0);
        long long attempts = 10000LL * m + 10000LL;
        int added = 0;
        while (added < m) {
            if (--attempts < 0) return false;
            State x;
            if (informed.empty()) {
                x = sample_uniform(bounds, rng_);
            } else {
                std::size_t pick = 0;
                if (informed.size() > 1) {
                    const double u = unit(rng_) * cumulative.back();
                    while (pick + 1 < informed.size() && cumulative[pick] <= u) ++pick;
                }
                try {
                    x = sample_informed(informed[pick], bounds, rng_);
                } catch (const SamplingStarvedError&) {
                    return false;
                }
            }
            if (!state_valid(x, problem_.world)) continue;
            samples_.add(x);
            ++counters_.samples;
            ++added;
        }
        return true;
    }

    void start_batch() {
        if (std::isfinite(c_current_)) {
            samples_.prune_outside(c_current_);
            controller_update();
        }
        if (!sample_states(controller_.current_batch())) {
            exhausted_ = true;
            return;
        }
        ++counters_.batches;
        controller_.advance_iteration();
        ensure_arrays();

        if (config_.fixed_radius > 0.0) {
            r_ = config_.fixed_radius;
        } else {
            const double bounds_measure = problem_.world.bounds.measure();
            double lambda = bounds_measure;
            if (std::isfinite(c_current_)) {
                const double focal = informed_measure(c_current_);
                if (!(focal > 0.0)) {
                    // The solution already sits at the straight-line lower
                    // bound; no sample can improve it.
                    exhausted_ = true;
                    return;
                }
                lambda = std::min(focal, bounds_measure);
            }
            const std::size_t q = config_.radius_counts_all_samples
                                      ? samples_.alive_count()
                                      : samples_.informed_count(c_current_);
            r_ = rgg_radius(q, lambda, dim_, config_.eta);
        }
        rebuild_queues();
    }

    void rebuild_queues() {
        fwd_.clear();
        rev_.clear();
        std::fill(g_r_.begin(), g_r_.end(), kInf);
        std::fill(effort_r_.begin(), effort_r_.end(), kInf);
        std::fill(parent_r_.begin(), parent_r_.end(), kNone);
        for (auto& c : children_r_) c.clear();
        for (std::size_t g = 1; g <= samples_.goal_count(); ++g) {
            g_r_[g] = 0.0;
            effort_r_[g] = 0.0;
        }
        for (std::size_t g = 1; g <= samples_.goal_count(); ++g) expand_reverse(g);
        for (std::size_t i = 0; i < samples_.size(); ++i) {
            if (samples_.alive(i) && std::isfinite(g_f_[i])) expand_forward(i);
        }
    }

    // ---- reverse search --------------------------------------------------

    void reverse_iteration() {
        const EdgeQueueEntry e = rev_.pop();
        const std::size_t s = e.source;
        const std::size_t t = e.target;
        if (!std::isfinite(g_r_[s])) return;  // source was orphaned after the push
        const EdgeQueueEntry fresh = reverse_entry(s, t);
        const double c = edge_cost(s, t);
        if (fresh.key != e.key) {
            if (g_r_[s] + c < g_r_[t]) rev_.push(fresh);
            return;
        }
        if (g_r_[s] + c >= g_r_[t]) return;
        if (std::isfinite(c_current_) && fresh.key[0] > c_current_) return;
        if (is_blocked(s, t)) return;
        if (!edge_sparse_valid(s, t)) {
            blocked_.insert(edge_id(s, t));
            return;
        }
        g_r_[t] = g_r_[s] + c;
        effort_r_[t] = effort_r_[s] + static_cast<double>(edge_effort(c, sparse_res_));
        set_parent(parent_r_, children_r_, t, s);
        expand_reverse(t);
        // The cost-to-go heuristic of t just improved; re-key the forward
        // entries that lead into t so they surface in the right order.
        for (std::size_t src : fwd_.sources_into(t)) fwd_.push(forward_entry(src, t));
        controller_update();
    }

    // ---- forward search --------------------------------------------------

    void forward_iteration() {
        const EdgeQueueEntry e = fwd_.pop();
        const std::size_t s = e.source;
        const std::size_t t = e.target;
        if (!std::isfinite(g_f_[s])) return;
        const EdgeQueueEntry fresh = forward_entry(s, t);
        const double c = edge_cost(s, t);
        if (fresh.key != e.key) {
            if (g_f_[s] + c < g_f_[t]) fwd_.push(fresh);
            return;
        }
        if (g_f_[s] + c >= g_f_[t]) return;
        if (std::isfinite(c_current_) &&
            g_f_[s] + c + samples_.cost_to_go_lb(t) > c_current_) {
            return;
        }
        if (is_blocked(s, t)) return;
        if (!edge_dense_valid(s, t)) {
            blocked_.insert(edge_id(s, t));
            repair_reverse(s, t);
            return;
        }
        attach_forward(t, s, g_f_[s] + c);
        update_solution();
    }

    void attach_forward(std::size_t t, std::size_t parent, double g) {
        set_parent(parent_f_, children_f_, t, parent);
        g_f_[t] = g;
        expand_forward(t);
        // propagate the improvement through the whole subtree
        std::vector<std::size_t> stack(children_f_[t].begin(), children_f_[t].end());
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            g_f_[v] = g_f_[parent_f_[v]] + edge_cost(parent_f_[v], v);
            expand_forward(v);
            stack.insert(stack.end(), children_f_[v].begin(), children_f_[v].end());
        }
    }

    void update_solution() {
        double best = kInf;
        for (std::size_t g = 1; g <= samples_.goal_count(); ++g) best = std::min(best, g_f_[g]);
        if (best < c_current_) {
            c_current_ = best;
            const double now = elapsed();
            if (trace_.empty()) {
                initial_time_ = now;
                initial_cost_ = best;
            }
            trace_.emplace_back(now, best);
            controller_update();
        }
    }

    /// A dense check found a real collision on an edge the reverse tree
    /// relies on: orphan the subtree hanging off it and requeue the orphans'
    /// in-edges from the surviving tree.
    void repair_reverse(std::size_t s, std::size_t t) {
        std::size_t child = kNone;
        if (parent_r_[s] == t) {
            child = s;
        } else if (parent_r_[t] == s) {
            child = t;
        }
        if (child == kNone) return;
        set_parent(parent_r_, children_r_, child, kNone);

        std::vector<std::size_t> orphans;
        std::vector<std::size_t> stack{child};
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            orphans.push_back(v);
            stack.insert(stack.end(), children_r_[v].begin(), children_r_[v].end());
        }
        for (std::size_t v : orphans) {
            g_r_[v] = kInf;
            effort_r_[v] = kInf;
            parent_r_[v] = kNone;
            children_r_[v].clear();
        }
        for (std::size_t v : orphans) {
            if (!samples_.alive(v)) continue;
            for (std::size_t u : samples_.neighbors(v, r_)) {
                if (!std::isfinite(g_r_[u]) || is_blocked(u, v)) continue;
                rev_.push(reverse_entry(u, v));
            }
        }
    }

    // ---- driver ------------------------------------------------------------

    PlannerResult solve(const Budget& budget) {
        t0_ = std::chrono::steady_clock::now();
        if (!budget.zero()) {
            std::uint64_t iterations = 0;
            while (iterations < budget.max_iterations && elapsed() < budget.max_time_s &&
                   !exhausted_) {
                if (need_new_batch()) {
                    if (config_.max_batches > 0 &&
                        counters_.batches >= static_cast<std::uint64_t>(config_.max_batches)) {
                        break;
                    }
                    start_batch();
                } else if (reverse_turn()) {
                    reverse_iteration();
                } else {
                    forward_iteration();
                }
                ++iterations;
            }
        }
        return make_result();
    }

    PlannerResult make_result() const {
        PlannerResult r;
        r.success = std::isfinite(c_current_);
        r.initial_time_s = initial_time_;
        r.initial_cost = initial_cost_;
        r.final_cost = c_current_;
        r.trace = trace_;
        r.counters = counters_;
        r.last_radius = r_;
        if (r.success) {
            std::size_t best = kNone;
            for (std::size_t g = 1; g <= samples_.goal_count(); ++g) {
                if (best == kNone || g_f_[g] < g_f_[best]) best = g;
            }
            std::vector<std::size_t> rev_path;
            for (std::size_t v = best; v != kNone; v = parent_f_[v]) {
                rev_path.push_back(v);
                if (rev_path.size() > samples_.size()) {
                    throw ContractViolation("forward tree contains a cycle");
                }
            }
            for (auto it = rev_path.rbegin(); it != rev_path.rend(); ++it) {
                r.path.push_back(samples_.state(*it));
            }
        }
        if (config_.record_samples) {
            for (std::size_t i = 0; i < samples_.size(); ++i) {
                if (samples_.alive(i)) r.samples_snapshot.push_back(samples_.state(i));
            }
        }
        return r;
    }

    std::vector<EdgeQueueEntry> expand_preview(std::size_t idx, SearchRole role) const {
        std::vector<EdgeQueueEntry> out;
        const bool forward = role == SearchRole::kForward;
        const auto& g = forward ? g_f_ : g_r_;
        if (idx >= samples_.size() || !std::isfinite(g[idx])) return out;
        const auto& queue = forward ? fwd_ : rev_;
        for (std::size_t u : samples_.neighbors(idx, r_)) {
            if (is_blocked(idx, u)) continue;
            if (queue.contains(idx, u)) continue;
            const double c = edge_cost(idx, u);
            if (g[idx] + c >= g[u]) continue;
            out.push_back(forward ? forward_entry(idx, u) : reverse_entry(idx, u));
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

Planner::Planner(Problem problem, PlannerConfig config) {
    config.validate();
    fitstar::validate(problem);
    impl_ = std::make_unique<Impl>(std::move(problem), config);
}

Planner::~Planner() = default;

PlannerResult Planner::solve(const Budget& budget) { return impl_->solve(budget); }

const SampleSet& Planner::samples() const { return impl_->samples_; }

double Planner::heuristic_cost_to_go(std::size_t idx) const {
    if (idx >= impl_->g_r_.size()) throw ContractViolation("unknown state index");
    return impl_->g_r_[idx];
}

double Planner::forward_cost(std::size_t idx) const {
    if (idx >= impl_->g_f_.size()) throw ContractViolation("unknown state index");
    return impl_->g_f_[idx];
}

double Planner::current_cost() const { return impl_->c_current_; }

const BatchController& Planner::controller() const { return impl_->controller_; }

std::vector<EdgeQueueEntry> Planner::expand(std::size_t idx, SearchRole role) const {
    return impl_->expand_preview(idx, role);
}

PlannerResult solve(const Problem& problem, const PlannerConfig& config, const Budget& budget) {
    Planner planner(problem, config);
    return planner.solve(budget);
}

}  // namespace fitstar
