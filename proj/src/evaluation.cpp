#include "lotrob/evaluation.hpp"

#include "lotrob/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace lotrob {

namespace {

int decimals_needed(double v, int cap) {
    double scaled = v;
    for (int k = 0; k <= cap; ++k) {
        if (std::fabs(scaled - std::llround(scaled)) < 1e-6 * std::max(1.0, std::fabs(scaled)))
            return k;
        scaled *= 10.0;
    }
    return cap;
}

void require_interval(const Instance& inst) {
    if (inst.demands.type != DemandType::Interval)
        throw ModelMismatchError("operation requires an interval demand model");
}

std::int64_t scaled_key(double v, std::int64_t scale) {
    return std::llround(v * static_cast<double>(scale));
}

}  // namespace

std::int64_t demand_scale(const Instance& inst) {
    require_interval(inst);
    int k = 0;
    for (double v : inst.demands.lo) k = std::max(k, decimals_needed(v, 6));
    for (double v : inst.demands.hi) k = std::max(k, decimals_needed(v, 6));
    std::int64_t scale = 1;
    for (int i = 0; i < k; ++i) scale *= 10;
    return scale;
}

DemandLevelDag build_demand_level_dag(const Instance& inst) {
    require_interval(inst);
    DemandLevelDag dag;
    dag.scale = demand_scale(inst);
    double total_hi = 0;
    for (double v : inst.demands.hi) total_hi += v;
    if (total_hi * static_cast<double>(dag.scale) > 4.5e18)
        throw CapacityExceededError("cumulative demand keys would overflow 64-bit integers");

    dag.layers.resize(static_cast<std::size_t>(inst.periods) + 1);
    dag.layers[0] = {0};
    for (int t = 0; t < inst.periods; ++t) {
        const std::int64_t lo = scaled_key(inst.demands.lo[static_cast<std::size_t>(t)], dag.scale);
        const std::int64_t hi = scaled_key(inst.demands.hi[static_cast<std::size_t>(t)], dag.scale);
        const auto& prev = dag.layers[static_cast<std::size_t>(t)];
        auto& next = dag.layers[static_cast<std::size_t>(t) + 1];
        next.reserve(prev.size() * 2);
        for (std::int64_t key : prev) {
            next.push_back(key + lo);
            if (hi != lo) next.push_back(key + hi);
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
    }
    return dag;
}

namespace {

DemandLevelDag build_dense_dag(const Instance& inst) {
    DemandLevelDag dag;
    dag.scale = demand_scale(inst);
    const auto cum_lo = cumulative(inst.demands.lo);
    const auto cum_hi = cumulative(inst.demands.hi);
    double nodes = 1;
    for (int t = 0; t < inst.periods; ++t)
        nodes += (cum_hi[static_cast<std::size_t>(t)] - cum_lo[static_cast<std::size_t>(t)]) *
                     static_cast<double>(dag.scale) + 1.0;
    if (nodes > 2e7)
        throw CapacityExceededError("dense demand-level range is too large; use the reduced sets");
    dag.layers.resize(static_cast<std::size_t>(inst.periods) + 1);
    dag.layers[0] = {0};
    for (int t = 0; t < inst.periods; ++t) {
        const std::int64_t lo = scaled_key(cum_lo[static_cast<std::size_t>(t)], dag.scale);
        const std::int64_t hi = scaled_key(cum_hi[static_cast<std::size_t>(t)], dag.scale);
        auto& layer = dag.layers[static_cast<std::size_t>(t) + 1];
        layer.reserve(static_cast<std::size_t>(hi - lo + 1));
        for (std::int64_t key = lo; key <= hi; ++key) layer.push_back(key);
    }
    return dag;
}

}  // namespace

std::pair<Scenario, double> optimistic_scenario(const ProductionPlan& plan, const Instance& inst) {
    inst.validate();
    require_interval(inst);
    const int T = inst.periods;
    if (plan.size() != static_cast<std::size_t>(T))
        throw ValidationError("plan must have length T");
    const auto cum_x = cumulative(plan.values);

    LinearProgram lp;
    std::vector<int> sv(static_cast<std::size_t>(T)), iv(static_cast<std::size_t>(T)), bv(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t)
        sv[static_cast<std::size_t>(t)] = lp.add_variable(0.0, inst.demands.lo[static_cast<std::size_t>(t)],
                                                          inst.demands.hi[static_cast<std::size_t>(t)]);
    for (int t = 0; t < T; ++t) {
        iv[static_cast<std::size_t>(t)] = lp.add_variable(inst.inv_cost[static_cast<std::size_t>(t)], 0.0, kLpInfinity);
        bv[static_cast<std::size_t>(t)] = lp.add_variable(inst.back_cost[static_cast<std::size_t>(t)], 0.0, kLpInfinity);
    }
    LpBasis crash;
    crash.at_upper.assign(static_cast<std::size_t>(lp.num_vars()), 0);
    const auto cum_lo = cumulative(inst.demands.lo);
    for (int t = 0; t < T; ++t) {
        // B_t - I_t - sum_{j<=t} s_j = -X_t
        std::vector<std::pair<int, double>> terms;
        terms.reserve(static_cast<std::size_t>(t) + 3);
        terms.emplace_back(bv[static_cast<std::size_t>(t)], 1.0);
        terms.emplace_back(iv[static_cast<std::size_t>(t)], -1.0);
        for (int j = 0; j <= t; ++j) terms.emplace_back(sv[static_cast<std::size_t>(j)], -1.0);
        lp.add_equality(std::move(terms), -cum_x[static_cast<std::size_t>(t)]);
        const double residual = cum_lo[static_cast<std::size_t>(t)] - cum_x[static_cast<std::size_t>(t)];
        crash.basic.push_back(residual >= 0 ? bv[static_cast<std::size_t>(t)] : iv[static_cast<std::size_t>(t)]);
    }
    const LpSolution sol = solve_lp(lp, &crash);
    if (sol.status != LpStatus::Optimal)
        throw SolverError("optimistic-scenario program did not solve to optimality");
    std::vector<double> s(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t)
        s[static_cast<std::size_t>(t)] = sol.values[static_cast<std::size_t>(sv[static_cast<std::size_t>(t)])];
    return {Scenario{std::move(s)}, sol.objective};
}

std::pair<Scenario, double> worst_case_scenario(const ProductionPlan& plan, const Instance& inst,
                                                const WorstCaseOptions& opts) {
    inst.validate();
    require_interval(inst);
    const int T = inst.periods;
    if (plan.size() != static_cast<std::size_t>(T))
        throw ValidationError("plan must have length T");
    const auto cum_x = cumulative(plan.values);

    const DemandLevelDag dag = opts.dense_range ? build_dense_dag(inst) : build_demand_level_dag(inst);
    const double scale = static_cast<double>(dag.scale);

    std::vector<std::int64_t> lo_key(static_cast<std::size_t>(T)), hi_key(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) {
        lo_key[static_cast<std::size_t>(t)] = scaled_key(inst.demands.lo[static_cast<std::size_t>(t)], dag.scale);
        hi_key[static_cast<std::size_t>(t)] = scaled_key(inst.demands.hi[static_cast<std::size_t>(t)], dag.scale);
    }

    // Backward recursion: value of a node is the maximal cost over the
    // remaining periods given its cumulative demand level.
    std::vector<std::vector<double>> value(static_cast<std::size_t>(T) + 1);
    std::vector<std::vector<std::uint8_t>> choice(static_cast<std::size_t>(T));
    value[static_cast<std::size_t>(T)].assign(dag.layers[static_cast<std::size_t>(T)].size(), 0.0);
    for (int t = T; t >= 1; --t) {
        const auto& layer_prev = dag.layers[static_cast<std::size_t>(t) - 1];
        const auto& layer_next = dag.layers[static_cast<std::size_t>(t)];
        const auto& val_next = value[static_cast<std::size_t>(t)];
        auto& val_prev = value[static_cast<std::size_t>(t) - 1];
        auto& pick = choice[static_cast<std::size_t>(t) - 1];
        val_prev.resize(layer_prev.size());
        pick.resize(layer_prev.size());
        const std::int64_t lo = lo_key[static_cast<std::size_t>(t) - 1];
        const std::int64_t hi = hi_key[static_cast<std::size_t>(t) - 1];
        const double x = cum_x[static_cast<std::size_t>(t) - 1];
        for (std::size_t idx = 0; idx < layer_prev.size(); ++idx) {
            const std::int64_t base = layer_prev[idx];
            const auto find = [&](std::int64_t key) {
                const auto it = std::lower_bound(layer_next.begin(), layer_next.end(), key);
                return static_cast<std::size_t>(it - layer_next.begin());
            };
            const std::size_t ilo = find(base + lo);
            const double cost_lo = stage_cost(t - 1, x, static_cast<double>(base + lo) / scale, inst) +
                                   val_next[ilo];
            if (hi == lo) {
                val_prev[idx] = cost_lo;
                pick[idx] = 1;
                continue;
            }
            const std::size_t ihi = find(base + hi);
            const double cost_hi = stage_cost(t - 1, x, static_cast<double>(base + hi) / scale, inst) +
                                   val_next[ihi];
            if (cost_hi >= cost_lo) {
                val_prev[idx] = cost_hi;
                pick[idx] = 1;
            } else {
                val_prev[idx] = cost_lo;
                pick[idx] = 0;
            }
        }
    }

    // Forward pass reconstructs the maximizing extreme scenario.
    std::vector<double> s(static_cast<std::size_t>(T));
    std::int64_t key = 0;
    for (int t = 0; t < T; ++t) {
        const auto& layer = dag.layers[static_cast<std::size_t>(t)];
        const auto it = std::lower_bound(layer.begin(), layer.end(), key);
        const std::size_t idx = static_cast<std::size_t>(it - layer.begin());
        if (choice[static_cast<std::size_t>(t)][idx]) {
            s[static_cast<std::size_t>(t)] = inst.demands.hi[static_cast<std::size_t>(t)];
            key += hi_key[static_cast<std::size_t>(t)];
        } else {
            s[static_cast<std::size_t>(t)] = inst.demands.lo[static_cast<std::size_t>(t)];
            key += lo_key[static_cast<std::size_t>(t)];
        }
    }
    return {Scenario{std::move(s)}, value[0][0]};
}

EvaluationResult evaluate_plan(const ProductionPlan& plan, const Instance& inst) {
    auto [opt, f_lower] = optimistic_scenario(plan, inst);
    auto [worst, f_upper] = worst_case_scenario(plan, inst);
    EvaluationResult res;
    res.cost_interval = CostInterval{f_lower, f_upper};
    res.optimistic_scenario = std::move(opt);
    res.worst_scenario = std::move(worst);
    return res;
}

bool threshold_possibility(const ProductionPlan& plan, const Instance& inst, double g) {
    return optimistic_scenario(plan, inst).second <= g;
}

bool threshold_necessity(const ProductionPlan& plan, const Instance& inst, double g) {
    return worst_case_scenario(plan, inst).second <= g;
}

void emit_worst_case_mip(const ProductionPlan& plan, const Instance& inst, std::ostream& sink) {
    inst.validate();
    require_interval(inst);
    const int T = inst.periods;
    if (plan.size() != static_cast<std::size_t>(T))
        throw ValidationError("plan must have length T");
    const auto cum_x = cumulative(plan.values);
    const auto cum_lo = cumulative(inst.demands.lo);
    const auto cum_hi = cumulative(inst.demands.hi);

    const auto old_precision = sink.precision(12);
    sink << "WORSTCASE v1\n";
    // maximization emitted in minimization form: coefficients negated
    sink << "min";
    for (int t = 1; t <= T; ++t)
        sink << " " << -inst.inv_cost[static_cast<std::size_t>(t - 1)] << " I" << t << " "
             << -inst.back_cost[static_cast<std::size_t>(t - 1)] << " B" << t;
    sink << "\nst\n";
    for (int t = 1; t <= T; ++t) {
        sink << "B" << t << " - I" << t;
        for (int j = 1; j <= t; ++j) sink << " - s" << j;
        sink << " = " << -cum_x[static_cast<std::size_t>(t - 1)] << "\n";
        const double slack_i = cum_x[static_cast<std::size_t>(t - 1)] - cum_lo[static_cast<std::size_t>(t - 1)];
        const double slack_b = cum_hi[static_cast<std::size_t>(t - 1)] - cum_x[static_cast<std::size_t>(t - 1)];
        sink << "I" << t << " + " << slack_i << " d" << t << " <= " << slack_i << "\n";
        sink << "B" << t << " - " << slack_b << " d" << t << " <= 0\n";
        sink << inst.demands.lo[static_cast<std::size_t>(t - 1)] << " <= s" << t << " <= "
             << inst.demands.hi[static_cast<std::size_t>(t - 1)] << "\n";
    }
    sink << "bounds\n";
    for (int t = 1; t <= T; ++t) sink << "I" << t << " >= 0\nB" << t << " >= 0\n";
    sink << "binary\n";
    for (int t = 1; t <= T; ++t) sink << "d" << t << (t == T ? "\n" : " ");
    sink << "end\n";
    sink.precision(old_precision);
    if (!sink) throw std::ios_base::failure("failed writing worst-case model");
}

}  // namespace lotrob
