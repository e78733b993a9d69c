#pragma once

#include "lotrob/model.hpp"

#include <cstdint>
#include <iosfwd>

namespace lotrob {

/// Cost interval of a plan together with the witnessing scenarios.
struct EvaluationResult {
    CostInterval cost_interval;
    Scenario optimistic_scenario;
    Scenario worst_scenario;
};

/// Layered DAG of reachable cumulative demand levels. Layer t holds the
/// sorted, exact integer keys (demand * scale) reachable by choosing each
/// earlier demand at its lower or upper bound; every non-terminal node has
/// two outgoing arcs, to key + lo_{t+1} and key + hi_{t+1}.
struct DemandLevelDag {
    std::int64_t scale = 1;
    std::vector<std::vector<std::int64_t>> layers;  // layers[0] == {0}
};

struct WorstCaseOptions {
    /// Cross-checking variant: recurse over the dense level range
    /// {D_t(S-)..D_t(S+)} in steps of 1/scale instead of the reduced sets.
    bool dense_range = false;
};

/// Smallest power of ten (up to 10^6) that makes every interval demand
/// bound integral; values needing more precision are rounded at 10^6.
std::int64_t demand_scale(const Instance& inst);

DemandLevelDag build_demand_level_dag(const Instance& inst);

/// Scenario minimizing the plan's total cost over the interval box, and the
/// optimal lower cost bound f- (solved as a linear program).
std::pair<Scenario, double> optimistic_scenario(const ProductionPlan& plan, const Instance& inst);

/// Scenario maximizing the plan's total cost, and the optimal upper bound
/// f+. Backward recursion over the demand-level DAG; the result is always
/// an extreme scenario. Ties between branches prefer the upper bound.
std::pair<Scenario, double> worst_case_scenario(const ProductionPlan& plan, const Instance& inst,
                                                const WorstCaseOptions& opts = {});

EvaluationResult evaluate_plan(const ProductionPlan& plan, const Instance& inst);

/// True iff some scenario keeps the plan's cost within g (f- <= g).
bool threshold_possibility(const ProductionPlan& plan, const Instance& inst, double g);

/// True iff every scenario keeps the plan's cost within g (f+ <= g).
bool threshold_necessity(const ProductionPlan& plan, const Instance& inst, double g);

/// Writes the worst-case MIP in the WORSTCASE v1 line format (min/st/
/// bounds/binary sections, 1-based period indices) for external solvers.
void emit_worst_case_mip(const ProductionPlan& plan, const Instance& inst, std::ostream& sink);

}  // namespace lotrob
