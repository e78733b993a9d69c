#pragma once

#include "lotrob/bench.hpp"
#include "lotrob/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace lotrob::testing {

inline std::string data_path(const std::string& name) {
    return std::string(LOTROB_TEST_DATA_DIR) + "/" + name;
}

/// Exhaustive worst case over all 2^T extreme scenarios of an interval
/// instance; the independent oracle for the recursive evaluator.
inline std::pair<Scenario, double> brute_force_worst(const ProductionPlan& plan,
                                                     const Instance& inst) {
    const int T = inst.periods;
    Scenario best;
    double best_cost = -1;
    std::vector<double> s(static_cast<std::size_t>(T));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << T); ++mask) {
        for (int t = 0; t < T; ++t)
            s[static_cast<std::size_t>(t)] = (mask >> t) & 1
                ? inst.demands.hi[static_cast<std::size_t>(t)]
                : inst.demands.lo[static_cast<std::size_t>(t)];
        const double cost = total_cost(ProductionPlan{plan.values}, Scenario{s}, inst);
        if (cost > best_cost) {
            best_cost = cost;
            best = Scenario{s};
        }
    }
    return {best, best_cost};
}

/// Random integer-valued interval instance; the capacity box is optional.
inline Instance random_interval_instance(SplitMix64& rng, int T, bool capacitated,
                                         int demand_max = 20) {
    Instance inst;
    inst.periods = T;
    for (int t = 0; t < T; ++t) {
        inst.inv_cost.push_back(rng.uniform_int(1, 10));
        inst.back_cost.push_back(rng.uniform_int(1, 50));
    }
    std::vector<double> lo(static_cast<std::size_t>(T)), hi(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) {
        const int a = rng.uniform_int(0, demand_max);
        const int b = rng.uniform_int(0, demand_max);
        lo[static_cast<std::size_t>(t)] = std::min(a, b);
        hi[static_cast<std::size_t>(t)] = std::max(a, b);
    }
    inst.demands = DemandModel::interval_demands(std::move(lo), std::move(hi));
    if (capacitated) {
        Capacity cap;
        for (int t = 0; t < T; ++t) {
            const int l = rng.uniform_int(0, demand_max / 2);
            cap.lower.push_back(l);
            cap.upper.push_back(l + rng.uniform_int(0, demand_max));
        }
        inst.capacity = std::move(cap);
    }
    inst.validate();
    return inst;
}

/// Random feasible plan inside the capacity box (or [0, demand_max]).
inline ProductionPlan random_plan(SplitMix64& rng, const Instance& inst, int demand_max = 20) {
    std::vector<double> x;
    x.reserve(static_cast<std::size_t>(inst.periods));
    for (int t = 0; t < inst.periods; ++t) {
        if (inst.capacity) {
            const double l = inst.capacity->lower[static_cast<std::size_t>(t)];
            const double u = inst.capacity->upper[static_cast<std::size_t>(t)];
            x.push_back(l + std::floor(rng.uniform01() * (u - l + 1)));
        } else {
            x.push_back(rng.uniform_int(0, demand_max));
        }
    }
    return ProductionPlan{std::move(x)};
}

}  // namespace lotrob::testing
