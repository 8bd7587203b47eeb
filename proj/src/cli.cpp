#include "fitstar/cli.hpp"

#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "fitstar/bench.hpp"

namespace fitstar {
namespace {

ScenarioSpec load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    nlohmann::json j;
    in >> j;
    return scenario_from_json(j);
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write to: " + path);
    out << text;
}

std::string wall_clock_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string hash_hex(const std::string& text) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << fnv1a(text);
    return out.str();
}

struct PlanOptions {
    std::string scenario_kind = "wall-gap";
    std::string env_path;
    int dim = 2;
    std::string planner = "fit-sl";
    std::uint64_t seed = 0;
    std::uint64_t scenario_seed = 0;
    double budget_s = 1.0;
    std::uint64_t iterations = 0;
    int batch = 100;
    double eta = 1.1;
    double dense_res = 0.0;
    double sparse_res = 0.0;
    int max_batches = 0;
    double goal_bias = 0.05;
    double max_edge = 0.0;
    bool record_samples = false;
    std::string out_dir = "out";
    bool budget_given = false;
};

int run_plan(const PlanOptions& o) {
    ScenarioSpec scenario;
    double budget_s = o.budget_s;
    if (!o.env_path.empty()) {
        scenario = load_scenario_file(o.env_path);
        if (!o.budget_given) budget_s = scenario.budget_s;
    } else {
        // The stored scenario budget must stay positive; the effective budget
        // may be zero, which runs nothing and reports no solution.
        scenario = make_scenario(o.scenario_kind, o.dim, o.scenario_seed,
                                 budget_s > 0.0 ? budget_s : 1.0);
    }
    if (o.iterations > 0) scenario.max_iterations = o.iterations;

    PlannerSpec spec = make_planner_spec(o.planner);
    if (spec.is_core()) {
        spec.core.batch = o.batch;
        spec.core.eta = o.eta;
        spec.core.dense_resolution = o.dense_res;
        spec.core.sparse_resolution = o.sparse_res;
        spec.core.max_batches = o.max_batches;
        spec.core.record_samples = o.record_samples;
        spec.core.seed = o.seed;
        spec.core.validate();
    } else {
        spec.rrt.goal_bias = o.goal_bias;
        spec.rrt.max_edge_length = o.max_edge;
        spec.rrt.eta = o.eta;
        spec.rrt.steer_resolution = o.dense_res;
        spec.rrt.seed = o.seed;
        spec.rrt.validate();
    }

    Budget budget;
    budget.max_time_s = budget_s;
    if (scenario.max_iterations > 0) budget.max_iterations = scenario.max_iterations;

    PlannerResult result;
    if (spec.is_core()) {
        result = solve(scenario.problem, spec.core, budget);
    } else if (spec.id == "rrt-connect") {
        result = rrt_connect_solve(scenario.problem, spec.rrt, budget);
    } else {
        result = informed_rrt_star_solve(scenario.problem, spec.rrt, budget);
    }

    std::cout << spec.id << ' ' << scenario.id << " success=" << (result.success ? 1 : 0)
              << " t_init=" << result.initial_time_s << " c_init=" << result.initial_cost
              << " c_final=" << result.final_cost << " batches=" << result.counters.batches
              << " samples=" << result.counters.samples << '\n';

    std::filesystem::create_directories(o.out_dir);
    const auto dir = std::filesystem::path(o.out_dir);
    nlohmann::json j{
        {"planner", spec.id},
        {"scenario", scenario.id},
        {"dimension", scenario.dimension},
        {"seed", o.seed},
        {"budget_s", budget_s},
        {"result", to_json(result)},
    };
    write_text((dir / "result.json").string(), j.dump(2) + "\n");
    TrialRecord rec;
    rec.trace = result.trace;
    write_text((dir / "trace.csv").string(), trace_csv(rec));
    return result.success ? 0 : 2;
}

struct BenchOptions {
    std::string config_path;
    std::vector<std::string> kinds{"wall-gap"};
    std::vector<int> dims{2};
    std::vector<std::string> planners{"fit-sl", "fixed", "rrt-connect", "informed-rrtstar"};
    int seeds = 10;
    double budget_s = 1.0;
    std::uint64_t iterations = 0;
    std::uint64_t master_seed = 7;
    std::uint64_t scenario_seed = 1;
    int batch = 100;
    double eta = 1.1;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::string out_dir = "out";
    bool verbose = false;
};

nlohmann::json bench_config_json(const BenchOptions& o) {
    return {
        {"scenarios", o.kinds},
        {"dims", o.dims},
        {"planners", o.planners},
        {"seeds", o.seeds},
        {"budget_s", o.budget_s},
        {"iterations", o.iterations},
        {"master_seed", o.master_seed},
        {"scenario_seed", o.scenario_seed},
        {"batch", o.batch},
        {"eta", o.eta},
    };
}

/// Fill options from a config document (or a manifest wrapping one) for every
/// flag the user did not pass explicitly.
void apply_bench_config(const nlohmann::json& doc, BenchOptions& o,
                        const std::function<bool(const std::string&)>& flag_given) {
    const nlohmann::json& j = doc.contains("config") ? doc.at("config") : doc;
    const auto take = [&](const char* key, const char* flag, auto& field) {
        if (j.contains(key) && !flag_given(flag)) field = j.at(key).template get<std::decay_t<decltype(field)>>();
    };
    take("scenarios", "--scenario", o.kinds);
    take("dims", "--dim", o.dims);
    take("planners", "--planner", o.planners);
    take("seeds", "--seeds", o.seeds);
    take("budget_s", "--budget", o.budget_s);
    take("iterations", "--iterations", o.iterations);
    take("master_seed", "--master-seed", o.master_seed);
    take("scenario_seed", "--scenario-seed", o.scenario_seed);
    take("batch", "--batch", o.batch);
    take("eta", "--eta", o.eta);
}

int run_bench(const BenchOptions& o) {
    // Resolve planners first so a malformed name fails before any trial runs.
    std::vector<PlannerSpec> planners;
    for (const auto& id : o.planners) {
        auto spec = make_planner_spec(id);
        if (spec.is_core()) {
            spec.core.batch = o.batch;
            spec.core.eta = o.eta;
        } else {
            spec.rrt.eta = o.eta;
        }
        spec.validate();
        planners.push_back(std::move(spec));
    }
    std::vector<ScenarioSpec> scenarios;
    for (const auto& kind : o.kinds) {
        for (int dim : o.dims) {
            auto s = make_scenario(kind, dim, o.scenario_seed, o.budget_s);
            s.max_iterations = o.iterations;
            scenarios.push_back(std::move(s));
        }
    }

    const nlohmann::json config = bench_config_json(o);
    if (o.verbose) {
        std::cerr << "resolved config: " << config.dump() << '\n'
                  << "cells: " << scenarios.size() * planners.size() << " x " << o.seeds
                  << " trials, " << o.jobs << " worker(s)\n";
    }

    const auto records = run_trials(scenarios, planners, o.seeds, o.master_seed, o.jobs);
    const auto rows = summarize(records);
    std::cout << summary_csv(rows);

    std::filesystem::create_directories(o.out_dir);
    const auto dir = std::filesystem::path(o.out_dir);
    write_text((dir / "trials.csv").string(), trials_csv(records));
    write_text((dir / "summary.csv").string(), summary_csv(rows));
    nlohmann::json scenario_list = nlohmann::json::array();
    for (const auto& s : scenarios) scenario_list.push_back(to_json(s));
    write_text((dir / "scenarios.json").string(), scenario_list.dump(2) + "\n");
    const nlohmann::json manifest{
        {"config", config},
        {"config_hash", hash_hex(config.dump())},
        {"master_seed", o.master_seed},
        {"jobs", o.jobs},
        {"generated_at", wall_clock_utc()},
        {"versions",
         {{"fitstar", kVersion},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"cli11", CLI11_VERSION}}},
    };
    write_text((dir / "manifest.json").string(), manifest.dump(2) + "\n");
    return 0;
}

struct GenEnvOptions {
    std::string kind = "wall-gap";
    int dim = 2;
    std::uint64_t scenario_seed = 0;
    double budget_s = 1.0;
    std::string out_path;
};

int run_gen_env(const GenEnvOptions& o) {
    const auto scenario = make_scenario(o.kind, o.dim, o.scenario_seed, o.budget_s);
    const std::string text = to_json(scenario).dump(2) + "\n";
    if (o.out_path.empty()) {
        std::cout << text;
    } else {
        write_text(o.out_path, text);
    }
    return 0;
}

struct DecayTableOptions {
    std::vector<std::string> strategies{"fit-sl", "fit-l", "fit-p", "fit-b", "fit-i"};
    int batch = 100;
    int dim = 2;
    int steps = 101;
    long iteration_budget = 100;
    std::string out_path;
};

int run_decay_table(const DecayTableOptions& o) {
    if (o.steps < 2) throw ConfigError("the table needs at least 2 steps");
    if (o.strategies.empty()) throw ConfigError("no strategies to tabulate");
    const int m_min = 1;
    const int m_max = 2 * o.batch - 1;
    const double lambda = tuning_parameter(m_max, m_min, o.dim);

    std::ostringstream out;
    out << "strategy,xi,psi,batch\n";
    out << std::setprecision(12);
    for (const auto& name : o.strategies) {
        const DecayStrategy strategy = parse_strategy(name);
        for (int i = 0; i < o.steps; ++i) {
            const double xi = static_cast<double>(i) / static_cast<double>(o.steps - 1);
            DecayInputs in;
            in.xi = xi;
            in.iteration_budget = o.iteration_budget;
            // The iteration-driven profile is tabulated on the same grid by
            // mapping xi = 1 to iteration 0 and xi = 0 to the exhausted budget.
            in.iteration = std::lround((1.0 - xi) * static_cast<double>(o.iteration_budget));
            const double psi = decay_value(strategy, in, lambda);
            out << name << ',' << xi << ',' << psi << ',' << batch_size(psi, m_min, m_max)
                << '\n';
        }
    }
    if (o.out_path.empty()) {
        std::cout << out.str();
    } else {
        write_text(o.out_path, out.str());
    }
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"anytime sampling-based path planning toolkit"};
    app.require_subcommand(1);

    PlanOptions plan;
    auto* plan_cmd = app.add_subcommand("plan", "run one planner on one environment");
    plan_cmd->add_option("--scenario", plan.scenario_kind, "wall-gap | random-rect");
    plan_cmd->add_option("--env", plan.env_path, "scenario JSON file (overrides --scenario)");
    plan_cmd->add_option("--dim", plan.dim, "state-space dimension")->check(CLI::Range(2, 64));
    plan_cmd->add_option("--planner", plan.planner,
                         "fit-sl|fit-l|fit-p|fit-b|fit-i|fixed|rrt-connect|informed-rrtstar");
    plan_cmd->add_option("--seed", plan.seed, "planner RNG seed");
    plan_cmd->add_option("--scenario-seed", plan.scenario_seed, "environment generator seed");
    auto* budget_opt = plan_cmd->add_option("--budget", plan.budget_s, "wall-clock budget, seconds")
                           ->check(CLI::NonNegativeNumber);
    plan_cmd->add_option("--iterations", plan.iterations, "iteration budget (0 = time only)");
    plan_cmd->add_option("--batch", plan.batch, "configured samples per batch");
    plan_cmd->add_option("--eta", plan.eta, "connection radius constant");
    plan_cmd->add_option("--dense-res", plan.dense_res, "dense check resolution (0 = auto)");
    plan_cmd->add_option("--sparse-res", plan.sparse_res, "sparse check resolution (0 = auto)");
    plan_cmd->add_option("--max-batches", plan.max_batches, "stop after this many batches");
    plan_cmd->add_option("--goal-bias", plan.goal_bias, "goal sampling bias (RRT planners)");
    plan_cmd->add_option("--max-edge", plan.max_edge, "steering range (RRT planners, 0 = auto)");
    plan_cmd->add_flag("--record-samples", plan.record_samples, "include samples in result JSON");
    plan_cmd->add_option("--out", plan.out_dir, "output directory for result.json + trace.csv");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "run a planner x scenario trial matrix");
    bench_cmd->add_option("--config", bench.config_path,
                          "JSON config or a previous run's manifest.json");
    bench_cmd->add_option("--scenario", bench.kinds, "scenario kinds")->delimiter(',');
    bench_cmd->add_option("--dim", bench.dims, "state-space dimensions")->delimiter(',');
    bench_cmd->add_option("--planner", bench.planners, "planner ids")->delimiter(',');
    bench_cmd->add_option("--seeds", bench.seeds, "trials per cell")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--budget", bench.budget_s, "per-trial budget, seconds");
    bench_cmd->add_option("--iterations", bench.iterations, "per-trial iteration budget");
    bench_cmd->add_option("--master-seed", bench.master_seed, "seed all trials derive from");
    bench_cmd->add_option("--scenario-seed", bench.scenario_seed, "environment generator seed");
    bench_cmd->add_option("--batch", bench.batch, "configured samples per batch");
    bench_cmd->add_option("--eta", bench.eta, "connection radius constant");
    bench_cmd->add_option("--jobs", bench.jobs, "worker threads");
    bench_cmd->add_option("--out", bench.out_dir,
                          "output directory for trials/summary/manifest files");
    bench_cmd->add_flag("-v,--verbose", bench.verbose, "print the resolved config and matrix size");

    GenEnvOptions gen;
    auto* gen_cmd = app.add_subcommand("gen-env", "write a scenario as JSON");
    gen_cmd->add_option("--scenario", gen.kind, "wall-gap | random-rect");
    gen_cmd->add_option("--dim", gen.dim, "state-space dimension")->check(CLI::Range(2, 64));
    gen_cmd->add_option("--scenario-seed", gen.scenario_seed, "environment generator seed");
    gen_cmd->add_option("--budget", gen.budget_s, "budget stored in the scenario, seconds")
        ->check(CLI::PositiveNumber);
    gen_cmd->add_option("--out", gen.out_path, "output file (default stdout)");

    DecayTableOptions decay;
    auto* decay_cmd = app.add_subcommand("decay-table", "print batch-size decay profiles");
    decay_cmd->add_option("--strategy", decay.strategies, "fit-sl|fit-l|fit-p|fit-b|fit-i")
        ->delimiter(',');
    decay_cmd->add_option("--batch", decay.batch, "configured samples per batch")
        ->check(CLI::PositiveNumber);
    decay_cmd->add_option("--dim", decay.dim, "state-space dimension")->check(CLI::Range(2, 64));
    decay_cmd->add_option("--steps", decay.steps, "number of table rows per strategy");
    decay_cmd->add_option("--iteration-budget", decay.iteration_budget,
                          "batches until full decay (iteration-driven profile)");
    decay_cmd->add_option("--out", decay.out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (plan_cmd->parsed()) {
            plan.budget_given = budget_opt->count() > 0;
            return run_plan(plan);
        }
        if (bench_cmd->parsed()) {
            if (!bench.config_path.empty()) {
                apply_bench_config(load_json_file(bench.config_path), bench,
                                   [&](const std::string& flag) {
                                       return bench_cmd->get_option(flag)->count() > 0;
                                   });
            }
            return run_bench(bench);
        }
        if (gen_cmd->parsed()) return run_gen_env(gen);
        if (decay_cmd->parsed()) return run_decay_table(decay);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace fitstar
