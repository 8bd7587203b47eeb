#include "fitstar/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>
#include <utility>

namespace fitstar {

Problem make_wall_gap(int n, const WallGapParams& p) {
    if (n < 2) throw ScenarioError("wall-gap needs at least 2 dimensions");
    const double half = 0.5 * p.thickness;
    const double gap_lo = 0.5 + p.gap_offset - 0.5 * p.gap_width;
    const double gap_hi = 0.5 + p.gap_offset + 0.5 * p.gap_width;
    if (!(p.thickness > 0.0) || !(p.gap_width > 0.0) ||
        !(0.0 < p.wall_center - half) || !(p.wall_center + half < 1.0) ||
        !(0.0 < gap_lo) || !(gap_hi < p.wall_top) || !(p.wall_top < 1.0)) {
        throw ScenarioError("wall-gap parameters do not fit the unit cube");
    }

    Problem problem;
    problem.world.bounds.lower.assign(n, 0.0);
    problem.world.bounds.upper.assign(n, 1.0);

    AxisAlignedBox below;  // from the floor up to the gap
    below.min_corner.assign(n, 0.0);
    below.max_corner.assign(n, 1.0);
    below.min_corner[0] = p.wall_center - half;
    below.max_corner[0] = p.wall_center + half;
    below.max_corner[1] = gap_lo;
    AxisAlignedBox above = below;  // from the gap up to the open top margin
    above.min_corner[1] = gap_hi;
    above.max_corner[1] = p.wall_top;
    problem.world.obstacles = {below, above};

    State start(n, 0.5);
    State goal(n, 0.5);
    start[0] = 0.2;
    goal[0] = 0.8;
    problem.start = std::move(start);
    problem.goals = {std::move(goal)};
    validate(problem);
    return problem;
}

Problem make_random_rectangles(int n, int count, double max_width, std::uint64_t seed,
                               const RandomRectParams& params) {
    if (n < 2) throw ScenarioError("random-rect needs at least 2 dimensions");
    if (!(max_width > 0.0) || max_width >= 0.5) {
        throw ScenarioError("max obstacle width must lie in (0, 0.5)");
    }
    if (count < 0) count = 10 * n;

    Problem problem;
    problem.world.bounds.lower.assign(n, 0.0);
    problem.world.bounds.upper.assign(n, 1.0);
    problem.start.assign(n, 0.1);
    problem.goals = {State(n, 0.9)};

    Rng rng(mix64(seed));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    long attempts = params.resample_budget;
    while (static_cast<int>(problem.world.obstacles.size()) < count) {
        if (--attempts < 0) {
            throw ScenarioError("obstacle placement exhausted its resample budget");
        }
        AxisAlignedBox box;
        box.min_corner.resize(n);
        box.max_corner.resize(n);
        for (int i = 0; i < n; ++i) {
            const double center = unit(rng);
            const double width = max_width * (1.0 - unit(rng));  // in (0, max_width]
            box.min_corner[i] = center - 0.5 * width;
            box.max_corner[i] = center + 0.5 * width;
        }
        bool clear = box.distance_to(problem.start) >= params.clearance;
        for (const auto& g : problem.goals) {
            clear = clear && box.distance_to(g) >= params.clearance;
        }
        if (clear) problem.world.obstacles.push_back(std::move(box));
    }
    validate(problem);
    return problem;
}

ScenarioSpec make_scenario(const std::string& kind, int n, std::uint64_t seed, double budget_s) {
    if (budget_s <= 0.0) throw ScenarioError("scenario budget must be positive");
    ScenarioSpec s;
    s.dimension = n;
    s.budget_s = budget_s;
    std::ostringstream id;
    if (kind == "wall-gap") {
        s.problem = make_wall_gap(n);
        id << "wall-gap-" << n << "d";
    } else if (kind == "random-rect") {
        s.problem = make_random_rectangles(n, -1, 0.2, seed);
        id << "random-rect-" << n << "d-s" << seed;
    } else {
        throw ScenarioError("unknown scenario kind: " + kind);
    }
    s.id = id.str();
    return s;
}

nlohmann::json to_json(const ScenarioSpec& s) {
    nlohmann::json goals = nlohmann::json::array();
    for (const auto& g : s.problem.goals) goals.push_back(g);
    return {
        {"id", s.id},
        {"dimension", s.dimension},
        {"budget_s", s.budget_s},
        {"max_iterations", s.max_iterations},
        {"world", to_json(s.problem.world)},
        {"start", s.problem.start},
        {"goals", goals},
    };
}

ScenarioSpec scenario_from_json(const nlohmann::json& j) {
    ScenarioSpec s;
    s.id = j.at("id").get<std::string>();
    s.dimension = j.at("dimension").get<int>();
    s.budget_s = j.at("budget_s").get<double>();
    s.max_iterations = j.value("max_iterations", std::uint64_t{0});
    s.problem.world = world_from_json(j.at("world"));
    s.problem.start = j.at("start").get<State>();
    for (const auto& g : j.at("goals")) s.problem.goals.push_back(g.get<State>());
    if (s.dimension != static_cast<int>(s.problem.world.dimension())) {
        throw ScenarioError("scenario dimension disagrees with its world");
    }
    validate(s.problem);
    return s;
}

bool PlannerSpec::is_core() const { return id != "rrt-connect" && id != "informed-rrtstar"; }

void PlannerSpec::validate() const {
    if (is_core()) {
        if (parse_strategy(id) != core.strategy) {
            throw ConfigError("planner id and configured strategy disagree");
        }
        core.validate();
    } else {
        rrt.validate();
    }
}

PlannerSpec make_planner_spec(const std::string& id) {
    PlannerSpec spec;
    spec.id = id;
    if (spec.is_core()) spec.core.strategy = parse_strategy(id);
    return spec;
}

TrialRecord run_trial(const ScenarioSpec& scenario, const PlannerSpec& planner,
                      std::uint64_t trial_index, std::uint64_t master_seed) {
    TrialRecord rec;
    rec.planner = planner.id;
    rec.scenario = scenario.id;
    rec.dimension = scenario.dimension;
    rec.seed = derive_seed(master_seed, planner.id, scenario.id, trial_index);

    Budget budget;
    budget.max_time_s = scenario.budget_s;
    if (scenario.max_iterations > 0) budget.max_iterations = scenario.max_iterations;

    try {
        PlannerResult result;
        if (planner.is_core()) {
            PlannerConfig config = planner.core;
            config.strategy = parse_strategy(planner.id);
            config.seed = rec.seed;
            result = solve(scenario.problem, config, budget);
        } else {
            RrtConfig config = planner.rrt;
            config.seed = rec.seed;
            result = planner.id == "rrt-connect"
                         ? rrt_connect_solve(scenario.problem, config, budget)
                         : informed_rrt_star_solve(scenario.problem, config, budget);
        }
        rec.success = result.success;
        rec.initial_time_s = result.initial_time_s;
        rec.initial_cost = result.initial_cost;
        rec.final_cost = result.final_cost;
        rec.trace = std::move(result.trace);
        rec.counters = result.counters;
        rec.path = std::move(result.path);
    } catch (const std::exception& e) {
        rec.success = false;
        rec.error = e.what();
    }
    return rec;
}

std::vector<TrialRecord> run_trials(const std::vector<ScenarioSpec>& scenarios,
                                    const std::vector<PlannerSpec>& planners,
                                    int trials_per_cell, std::uint64_t master_seed, int jobs) {
    if (trials_per_cell < 1) throw ConfigError("trials per cell must be at least 1");
    if (scenarios.empty()) throw ConfigError("no scenarios to run");
    if (planners.empty()) throw ConfigError("no planners to run");
    for (const auto& p : planners) p.validate();

    struct Cell {
        const ScenarioSpec* scenario;
        const PlannerSpec* planner;
        std::uint64_t trial;
    };
    std::vector<Cell> cells;
    for (const auto& s : scenarios) {
        for (const auto& p : planners) {
            for (int t = 0; t < trials_per_cell; ++t) {
                cells.push_back({&s, &p, static_cast<std::uint64_t>(t)});
            }
        }
    }

    std::vector<TrialRecord> records(cells.size());
    jobs = std::max(1, jobs);
    if (jobs == 1 || cells.size() <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            records[i] = run_trial(*cells[i].scenario, *cells[i].planner, cells[i].trial,
                                   master_seed);
        }
        return records;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            records[i] = run_trial(*cells[i].scenario, *cells[i].planner, cells[i].trial,
                                   master_seed);
        }
    };
    std::vector<std::thread> pool;
    const int workers = std::min<int>(jobs, static_cast<int>(cells.size()));
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return records;
}

double lower_median(std::vector<double> values) {
    if (values.empty()) return kInf;
    std::sort(values.begin(), values.end());
    return values[(values.size() - 1) / 2];
}

namespace {

struct GroupStats {
    std::vector<double> t_init, c_init, c_final;
    std::size_t successes = 0;
};

void order_statistic_ci(std::vector<double> sorted, double& lo, double& hi) {
    const auto k = static_cast<double>(sorted.size());
    if (sorted.empty()) return;
    std::sort(sorted.begin(), sorted.end());
    constexpr double z = 2.576;  // two-sided 99%
    auto lo_rank = static_cast<long>(std::floor((k - z * std::sqrt(k)) / 2.0));
    auto hi_rank = static_cast<long>(std::ceil((k + z * std::sqrt(k)) / 2.0)) + 1;
    lo_rank = std::clamp<long>(lo_rank, 1, static_cast<long>(k));
    hi_rank = std::clamp<long>(hi_rank, 1, static_cast<long>(k));
    lo = sorted[lo_rank - 1];
    hi = sorted[hi_rank - 1];
}

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream out;
    out << std::setprecision(12) << v;
    return out.str();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
    if (records.empty()) {
        throw ContractViolation("summarize: no trial records to aggregate");
    }
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, GroupStats> groups;
    for (const auto& r : records) {
        const auto key = std::make_pair(r.planner, r.scenario);
        if (groups.find(key) == groups.end()) order.push_back(key);
        auto& g = groups[key];
        g.t_init.push_back(r.initial_time_s);
        g.c_init.push_back(r.initial_cost);
        g.c_final.push_back(r.final_cost);
        if (r.success) ++g.successes;
    }

    std::vector<SummaryRow> rows;
    rows.reserve(order.size());
    for (const auto& key : order) {
        const auto& g = groups[key];
        SummaryRow row;
        row.planner = key.first;
        row.scenario = key.second;
        row.runs = g.t_init.size();
        row.success_rate = static_cast<double>(g.successes) / static_cast<double>(row.runs);

        auto sorted_t = g.t_init;
        std::sort(sorted_t.begin(), sorted_t.end());
        row.t_init_min = sorted_t.front();
        row.t_init_max = sorted_t.back();
        row.t_init_med = lower_median(g.t_init);
        order_statistic_ci(g.t_init, row.t_init_ci_lo, row.t_init_ci_hi);

        auto sorted_c = g.c_init;
        std::sort(sorted_c.begin(), sorted_c.end());
        row.c_init_min = sorted_c.front();
        row.c_init_max = sorted_c.back();
        row.c_init_med = lower_median(g.c_init);

        row.c_final_med = lower_median(g.c_final);
        order_statistic_ci(g.c_final, row.c_final_ci_lo, row.c_final_ci_hi);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string trials_csv(const std::vector<TrialRecord>& records) {
    std::ostringstream out;
    out << "planner,scenario,dimension,seed,success,initial_time_s,initial_cost,final_cost,"
           "n_samples,n_sparse_checks,n_dense_checks,n_batches\n";
    for (const auto& r : records) {
        out << csv_escape(r.planner) << ',' << csv_escape(r.scenario) << ',' << r.dimension
            << ',' << r.seed << ',' << (r.success ? 1 : 0) << ',' << fmt(r.initial_time_s)
            << ',' << fmt(r.initial_cost) << ',' << fmt(r.final_cost) << ','
            << r.counters.samples << ',' << r.counters.sparse_checks << ','
            << r.counters.dense_checks << ',' << r.counters.batches << '\n';
    }
    return out.str();
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    out << "planner,scenario,runs,success_rate,t_init_min,t_init_med,t_init_max,"
           "t_init_ci_lo,t_init_ci_hi,c_init_min,c_init_med,c_init_max,"
           "c_final_med,c_final_ci_lo,c_final_ci_hi\n";
    for (const auto& r : rows) {
        out << csv_escape(r.planner) << ',' << csv_escape(r.scenario) << ',' << r.runs << ','
            << fmt(r.success_rate) << ',' << fmt(r.t_init_min) << ',' << fmt(r.t_init_med)
            << ',' << fmt(r.t_init_max) << ',' << fmt(r.t_init_ci_lo) << ','
            << fmt(r.t_init_ci_hi) << ',' << fmt(r.c_init_min) << ',' << fmt(r.c_init_med)
            << ',' << fmt(r.c_init_max) << ',' << fmt(r.c_final_med) << ','
            << fmt(r.c_final_ci_lo) << ',' << fmt(r.c_final_ci_hi) << '\n';
    }
    return out.str();
}

std::string trace_csv(const TrialRecord& record) {
    std::ostringstream out;
    out << "t_s,cost\n";
    for (const auto& [t, c] : record.trace) out << fmt(t) << ',' << fmt(c) << '\n';
    return out.str();
}

}  // namespace fitstar
