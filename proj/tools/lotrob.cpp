#include "lotrob/bench.hpp"
#include "lotrob/deterministic.hpp"
#include "lotrob/evaluation.hpp"
#include "lotrob/fuzzy.hpp"
#include "lotrob/io.hpp"
#include "lotrob/model.hpp"
#include "lotrob/robust.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

namespace {

using namespace lotrob;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError(path + ": cannot open for writing");
    return out;
}

void print_vector(std::ostream& os, const char* label, const std::vector<double>& v) {
    os << label << " [";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << "]\n";
}

int cmd_eval(const std::string& instance_path, const std::string& plan_path,
             const std::optional<double>& threshold, const std::string& mip_out) {
    const Instance inst = load_instance(instance_path);
    const ProductionPlan plan = load_plan(plan_path);
    if (plan.size() != static_cast<std::size_t>(inst.periods))
        throw ValidationError("plan length does not match the instance horizon");
    auto [ni, np] = normalize_with_plan(as_interval_model(inst), plan);
    if (!plan_feasible(np, ni))
        throw ValidationError("plan violates the capacity limits");
    const EvaluationResult res = evaluate_plan(np, ni);
    std::cout << std::setprecision(10);
    std::cout << "cost_interval [" << res.cost_interval.lower << ", " << res.cost_interval.upper
              << "]\n";
    print_vector(std::cout, "optimistic_scenario", res.optimistic_scenario.values);
    print_vector(std::cout, "worst_scenario", res.worst_scenario.values);
    if (threshold) {
        std::cout << "possible_within_threshold "
                  << (res.cost_interval.lower <= *threshold ? "true" : "false") << "\n";
        std::cout << "certain_within_threshold "
                  << (res.cost_interval.upper <= *threshold ? "true" : "false") << "\n";
    }
    if (!mip_out.empty()) {
        auto out = open_out(mip_out);
        emit_worst_case_mip(np, ni, out);
        std::cout << "worst_case_model " << mip_out << "\n";
    }
    return 0;
}

int cmd_solve(const std::string& instance_path, double epsilon, const std::string& trace_path,
              const std::string& plan_out) {
    const Instance inst = load_instance(instance_path);
    RobustOptions opts;
    opts.epsilon = epsilon;
    const RobustSolution sol = solve_robust(inst, opts);
    std::cout << std::setprecision(10);
    print_vector(std::cout, "plan", sol.plan.values);
    print_vector(std::cout, "worst_scenario", sol.worst_scenario.values);
    std::cout << "worst_case_cost " << sol.upper_bound << "\n";
    std::cout << "lower_bound " << sol.lower_bound << "\n";
    std::cout << "iterations " << sol.iterations << "\n";
    std::cout << "converged " << (sol.converged ? "true" : "false") << "\n";
    if (!trace_path.empty()) {
        auto out = open_out(trace_path);
        out << "iteration,lower_bound,upper_bound\n" << std::setprecision(10);
        for (const RobustIterationRow& row : sol.trace)
            out << row.iteration << ',' << row.lower_bound << ',' << row.upper_bound << '\n';
    }
    if (!plan_out.empty()) {
        auto out = open_out(plan_out);
        write_plan_json(sol.plan, out);
    }
    return sol.converged ? 0 : 1;
}

int cmd_fuzzy(const std::string& instance_path, const std::string& goal_path,
              const std::optional<double>& threshold, double xi, double epsilon,
              const std::string& plan_path, const std::string& plan_out) {
    const Instance inst = load_instance(instance_path);
    if (goal_path.empty() == !threshold)
        throw ValidationError("pass exactly one of --goal and --threshold");
    std::cout << std::setprecision(10);
    if (!plan_path.empty()) {
        const ProductionPlan plan = load_plan(plan_path);
        if (threshold) {
            const DegreeResult nec = necessity_cost_leq(plan, inst, *threshold, xi);
            const DegreeResult pos = possibility_cost_leq(plan, inst, *threshold, xi);
            std::cout << "necessity " << nec.degree << "\n";
            std::cout << "possibility " << pos.degree << "\n";
        } else {
            const FuzzyGoal goal = load_goal(goal_path);
            const DegreeResult res = necessity_in_goal(plan, inst, goal, xi);
            std::cout << "necessity_in_goal " << res.degree << "\n";
            std::cout << "lambda_star " << res.lambda_star << "\n";
        }
        return 0;
    }
    FuzzySearchOptions opts;
    opts.xi = xi;
    opts.robust.epsilon = epsilon;
    const DegreeResult res = threshold
        ? maximize_necessity_threshold(inst, *threshold, opts)
        : maximize_necessity_goal(inst, load_goal(goal_path), opts);
    std::cout << "degree " << res.degree << "\n";
    std::cout << "lambda_star " << res.lambda_star << "\n";
    std::cout << "probes " << res.probes << "\n";
    if (res.plan) {
        print_vector(std::cout, "plan", res.plan->values);
        if (!plan_out.empty()) {
            auto out = open_out(plan_out);
            write_plan_json(*res.plan, out);
        }
    }
    if (res.scenario) print_vector(std::cout, "worst_scenario", res.scenario->values);
    return 0;
}

int cmd_bench(const std::string& config_path, const std::string& csv_out) {
    const BenchConfig cfg = load_bench_config(config_path);
    const BenchReport report = cfg.gen.fuzzy ? run_fuzzy_bench(cfg.gen, cfg.xi, cfg.epsilon)
                                             : run_interval_bench(cfg.gen, cfg.epsilon);
    if (csv_out.empty()) {
        write_csv(report, std::cout);
    } else {
        auto out = open_out(csv_out);
        write_csv(report, out);
        std::cout << "rows " << report.rows.size() << "\n";
    }
    return 0;
}

int cmd_gen(int periods, int count, std::uint64_t seed, bool fuzzy, bool uncapacitated,
            const std::string& out_dir) {
    GeneratorConfig cfg;
    cfg.periods = periods;
    cfg.instances = count;
    cfg.seed = seed;
    cfg.fuzzy = fuzzy;
    cfg.capacitated = !uncapacitated;
    const std::vector<Instance> instances = generate_instances(cfg);
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (out_dir.empty()) {
            write_instance_json(instances[i], std::cout);
        } else {
            auto out = open_out(out_dir + "/instance_" + std::to_string(i) + ".json");
            write_instance_json(instances[i], out);
        }
    }
    if (!out_dir.empty()) std::cout << "instances " << instances.size() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust lot sizing with interval and fuzzy demands"};
    app.require_subcommand(1);

    std::string instance_path, plan_path, goal_path, mip_out, trace_path, plan_out;
    std::string config_path, csv_out, out_dir;
    std::optional<double> threshold;
    double epsilon = 1e-4, xi = 0.01;
    int periods = 100, count = 10;
    std::uint64_t seed = 1;
    bool fuzzy = false, uncapacitated = false;

    auto* eval = app.add_subcommand("eval", "Evaluate a plan's cost interval");
    eval->add_option("instance", instance_path, "Instance JSON file")->required();
    eval->add_option("plan", plan_path, "Plan JSON file")->required();
    eval->add_option("--threshold", threshold, "Cost threshold to test");
    eval->add_option("--mip-out", mip_out, "Write the worst-case model to this path");

    auto* solve = app.add_subcommand("solve", "Compute a min-max robust plan");
    solve->add_option("instance", instance_path, "Instance JSON file")->required();
    solve->add_option("--epsilon", epsilon, "Relative optimality gap (default 1e-4)");
    solve->add_option("--trace", trace_path, "Write the bound trace CSV to this path");
    solve->add_option("--out", plan_out, "Write the plan JSON to this path");

    auto* fz = app.add_subcommand("fuzzy", "Degrees of meeting a cost goal");
    fz->add_option("instance", instance_path, "Instance JSON file")->required();
    fz->add_option("--goal", goal_path, "Goal JSON file");
    fz->add_option("--threshold", threshold, "Crisp cost threshold");
    fz->add_option("--xi", xi, "Binary-search precision (default 0.01)");
    fz->add_option("--epsilon", epsilon, "Per-cut solver gap (default 1e-4)");
    fz->add_option("--plan", plan_path, "Evaluate this plan instead of maximizing");
    fz->add_option("--out", plan_out, "Write the witness plan JSON to this path");

    auto* bench = app.add_subcommand("bench", "Run a benchmark suite");
    bench->add_option("config", config_path, "Key-value config file")->required();
    bench->add_option("--out", csv_out, "Write the report CSV to this path");

    auto* gen = app.add_subcommand("gen", "Generate random instances");
    gen->add_option("--periods", periods, "Horizon length (default 100)");
    gen->add_option("--count", count, "Number of instances (default 10)");
    gen->add_option("--seed", seed, "Master seed (default 1)");
    gen->add_flag("--fuzzy", fuzzy, "Triangular fuzzy demands");
    gen->add_flag("--uncapacitated", uncapacitated, "Omit capacity limits");
    gen->add_option("--out-dir", out_dir, "Write instance files here instead of stdout");

    try {
        app.parse(argc, argv);
        if (eval->parsed()) return cmd_eval(instance_path, plan_path, threshold, mip_out);
        if (solve->parsed()) return cmd_solve(instance_path, epsilon, trace_path, plan_out);
        if (fz->parsed())
            return cmd_fuzzy(instance_path, goal_path, threshold, xi, epsilon, plan_path,
                             plan_out);
        if (bench->parsed()) return cmd_bench(config_path, csv_out);
        if (gen->parsed()) return cmd_gen(periods, count, seed, fuzzy, uncapacitated, out_dir);
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ModelMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 1;
    }
}
