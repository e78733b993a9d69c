#include "lotrob/bench.hpp"

#include "lotrob/deterministic.hpp"
#include "lotrob/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <ostream>
#include <thread>

namespace lotrob {

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch()).count();
}

std::pair<double, double> draw_interval(SplitMix64& rng) {
    const double lo = rng.uniform_int(0, 99);
    const double hi = rng.uniform_int(100, 199);
    return {lo, hi};
}

Instance generate_one(const GeneratorConfig& config, int index) {
    SplitMix64 rng = SplitMix64::stream(config.seed, static_cast<std::uint64_t>(index));
    const int T = config.periods;
    Instance inst;
    inst.periods = T;
    inst.inv_cost.resize(static_cast<std::size_t>(T));
    inst.back_cost.resize(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) {
        inst.inv_cost[static_cast<std::size_t>(t)] = rng.uniform_int(1, 10);
        inst.back_cost[static_cast<std::size_t>(t)] = rng.uniform_int(20, 50);
    }
    if (config.capacitated) {
        Capacity cap;
        cap.lower.resize(static_cast<std::size_t>(T));
        cap.upper.resize(static_cast<std::size_t>(T));
        for (int t = 0; t < T; ++t) {
            auto [lo, hi] = draw_interval(rng);
            cap.lower[static_cast<std::size_t>(t)] = lo;
            cap.upper[static_cast<std::size_t>(t)] = hi;
        }
        inst.capacity = std::move(cap);
    }
    if (config.fuzzy) {
        std::vector<TrapezoidalFuzzyInterval> fz;
        fz.reserve(static_cast<std::size_t>(T));
        for (int t = 0; t < T; ++t)
            fz.push_back(TrapezoidalFuzzyInterval::triangular(0, rng.uniform_int(0, 199), 199));
        inst.demands = DemandModel::fuzzy_demands(std::move(fz));
    } else {
        std::vector<double> lo(static_cast<std::size_t>(T)), hi(static_cast<std::size_t>(T));
        for (int t = 0; t < T; ++t) {
            auto [a, b] = draw_interval(rng);
            lo[static_cast<std::size_t>(t)] = a;
            hi[static_cast<std::size_t>(t)] = b;
        }
        inst.demands = DemandModel::interval_demands(std::move(lo), std::move(hi));
    }
    inst.validate();
    return inst;
}

void run_parallel(int jobs, int workers, const std::function<void(int)>& body) {
    if (workers <= 1 || jobs <= 1) {
        for (int i = 0; i < jobs; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int n = std::min(workers, jobs);
    pool.reserve(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) body(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

std::vector<Instance> generate_instances(const GeneratorConfig& config) {
    if (config.periods < 1) throw ValidationError("periods must be >= 1");
    if (config.instances < 0) throw ValidationError("instance count must be >= 0");
    std::vector<Instance> out;
    out.reserve(static_cast<std::size_t>(config.instances));
    for (int i = 0; i < config.instances; ++i) out.push_back(generate_one(config, i));
    return out;
}

std::vector<BenchAggregate> aggregate_rows(const std::vector<BenchRow>& rows) {
    std::vector<BenchAggregate> out;
    for (const BenchRow& row : rows) {
        auto it = std::find_if(out.begin(), out.end(), [&](const BenchAggregate& agg) {
            return agg.periods == row.periods && agg.algorithm == row.algorithm &&
                   agg.beta == row.beta;
        });
        if (it == out.end()) {
            out.push_back({row.periods, row.algorithm, row.beta, 1, row.seconds, row.seconds,
                           row.seconds});
        } else {
            it->min_seconds = std::min(it->min_seconds, row.seconds);
            it->max_seconds = std::max(it->max_seconds, row.seconds);
            it->avg_seconds = (it->avg_seconds * it->rows + row.seconds) / (it->rows + 1);
            ++it->rows;
        }
    }
    return out;
}

BenchReport run_interval_bench(const GeneratorConfig& config, double epsilon) {
    if (config.fuzzy) throw ValidationError("interval bench needs fuzzy=false");
    const std::vector<Instance> instances = generate_instances(config);
    std::vector<BenchRow> rows(instances.size());
    run_parallel(static_cast<int>(instances.size()), config.workers, [&](int i) {
        RobustOptions opts;
        opts.epsilon = epsilon;
        const double start = now_seconds();
        const RobustSolution sol = solve_robust(instances[static_cast<std::size_t>(i)], opts);
        BenchRow& row = rows[static_cast<std::size_t>(i)];
        row.seconds = now_seconds() - start;
        row.periods = config.periods;
        row.instance = i;
        row.seed = config.seed + static_cast<std::uint64_t>(i) * UINT64_C(0x9E3779B97F4A7C15);
        row.algorithm = "scenario-cuts";
        row.iterations = sol.iterations;
        row.value = sol.upper_bound;
    });
    BenchReport report;
    report.rows = std::move(rows);
    report.aggregates = aggregate_rows(report.rows);
    return report;
}

BenchReport run_fuzzy_bench(const GeneratorConfig& config, double xi, double epsilon) {
    if (!config.fuzzy) throw ValidationError("fuzzy bench needs fuzzy=true");
    if (config.goal_betas.empty()) throw ValidationError("fuzzy bench needs goal betas");
    const std::vector<Instance> instances = generate_instances(config);
    const std::size_t per = config.goal_betas.size();
    std::vector<BenchRow> rows(instances.size() * per);
    run_parallel(static_cast<int>(instances.size()), config.workers, [&](int i) {
        const Instance& inst = instances[static_cast<std::size_t>(i)];
        // Goal anchor: the min-max optimum of an ideal (uncapacitated)
        // supplier facing the demand supports.
        Instance support = scenario_cut_set(inst, 0.0);
        support.capacity.reset();
        RobustOptions ropts;
        ropts.epsilon = epsilon;
        const double c = solve_robust(support, ropts).upper_bound;
        for (std::size_t bi = 0; bi < per; ++bi) {
            const double beta = config.goal_betas[bi];
            FuzzySearchOptions opts;
            opts.xi = xi;
            opts.robust.epsilon = epsilon;
            const FuzzyGoal goal{c, c + beta * c};
            const double start = now_seconds();
            const DegreeResult res = maximize_necessity_goal(inst, goal, opts);
            BenchRow& row = rows[static_cast<std::size_t>(i) * per + bi];
            row.seconds = now_seconds() - start;
            row.periods = config.periods;
            row.instance = i;
            row.seed = config.seed + static_cast<std::uint64_t>(i) * UINT64_C(0x9E3779B97F4A7C15);
            row.algorithm = "necessity-goal";
            row.beta = beta;
            row.iterations = res.probes;
            row.value = res.degree;
        }
    });
    BenchReport report;
    report.rows = std::move(rows);
    report.aggregates = aggregate_rows(report.rows);
    return report;
}

std::vector<PolicyRow> compare_policies(const Instance& inst, const std::optional<FuzzyGoal>& goal,
                                        double xi, const RobustOptions& opts) {
    inst.validate();
    std::vector<PolicyRow> out;

    if (inst.demands.type == DemandType::Fuzzy) {
        if (!goal) throw ValidationError("fuzzy policy comparison needs a goal");
        FuzzySearchOptions fopts;
        fopts.xi = xi;
        fopts.robust = opts;
        const DegreeResult robust = maximize_necessity_goal(inst, goal.value(), fopts);

        std::vector<double> yager;
        yager.reserve(inst.demands.fuzzy.size());
        for (const auto& fz : inst.demands.fuzzy) yager.push_back(defuzzify_yager(fz));
        const ProductionPlan yager_plan = solve_deterministic(inst, Scenario{yager}).plan;

        const double level = robust.lambda_star;
        const auto eval = [&](const std::string& name, const ProductionPlan& plan,
                              double degree) {
            auto [ni, np] = normalize_with_plan(scenario_cut_set(inst, level), plan);
            out.push_back({name, plan, worst_case_scenario(np, ni).second, degree});
        };
        eval("robust", robust.plan ? *robust.plan : yager_plan, robust.degree);
        const double yd = necessity_in_goal(yager_plan, inst, goal.value(), xi).degree;
        eval("yager", yager_plan, yd);
        // The joint-possibility optimum coincides with the modal-scenario
        // optimum here: the modal scenario gives both goal and demand
        // constraints satisfaction degree 1.
        eval("bellman-zadeh", yager_plan, yd);
        return out;
    }

    const Instance interval = as_interval_model(inst);
    auto [s_lo, s_hi] = scenario_bounds(interval);
    const auto eval = [&](const std::string& name, const ProductionPlan& plan) {
        auto [ni, np] = normalize_with_plan(interval, plan);
        out.push_back({name, plan, worst_case_scenario(np, ni).second, -1});
    };
    eval("robust", solve_robust(interval, opts).plan);
    eval("midpoint", solve_deterministic(interval, midpoint_scenario(interval)).plan);
    eval("upper-extreme", solve_deterministic(interval, s_hi).plan);
    eval("lower-extreme", solve_deterministic(interval, s_lo).plan);
    return out;
}

void write_csv(const BenchReport& report, std::ostream& sink) {
    sink << "kind,periods,instance,seed,algorithm,beta,iterations,seconds,value,"
            "rows,min_seconds,avg_seconds,max_seconds\n";
    const auto old_precision = sink.precision(10);
    for (const BenchRow& row : report.rows) {
        sink << "row," << row.periods << ',' << row.instance << ',' << row.seed << ','
             << row.algorithm << ',' << row.beta << ',' << row.iterations << ',' << row.seconds
             << ',' << row.value << ",,,,\n";
    }
    for (const BenchAggregate& agg : report.aggregates) {
        sink << "aggregate," << agg.periods << ",,," << agg.algorithm << ',' << agg.beta
             << ",,,," << agg.rows << ',' << agg.min_seconds << ',' << agg.avg_seconds << ','
             << agg.max_seconds << '\n';
    }
    sink.precision(old_precision);
    if (!sink) throw std::ios_base::failure("failed writing bench report");
}

}  // namespace lotrob
