#pragma once

#include "lotrob/model.hpp"

namespace lotrob {

struct RobustOptions {
    double epsilon = 1e-4;        // relative optimality gap
    int max_iterations = 500;
    /// Starting plan for the cut loop; defaults to the deterministic
    /// optimum under the midpoint scenario.
    std::optional<ProductionPlan> initial_plan;
};

struct RobustIterationRow {
    int iteration = 0;
    double lower_bound = 0;
    double upper_bound = 0;
};

struct RobustSolution {
    ProductionPlan plan;
    Scenario worst_scenario;          // maximizer for the returned plan
    double upper_bound = 0;           // best worst-case cost found
    double lower_bound = 0;           // master relaxation bound
    int iterations = 0;
    std::vector<Scenario> cut_scenarios;
    bool converged = false;
    std::vector<RobustIterationRow> trace;
};

/// Closed-form min-max plan for uncapacitated instances whose inventory
/// costs are uniform over time and likewise the backorder costs. The
/// optimal cumulative production splits each cumulative demand interval at
/// the ratio c^B : c^I, and the extreme scenarios S- and S+ both attain the
/// optimal worst-case cost. Throws ModelMismatchError when capacity limits
/// are present or the costs vary over time.
RobustSolution solve_uncapacitated(const Instance& inst);

/// Iterative scenario-cut method for capacitated instances: alternates a
/// worst-case evaluation of the incumbent plan with a master relaxation
/// over the scenarios collected so far, until the relative gap drops below
/// epsilon. The lower bound is nondecreasing across iterations.
RobustSolution solve_capacitated(const Instance& inst, const RobustOptions& opts = {});

/// Front door: normalizes initial conditions, widens crisp demands to
/// zero-width intervals, and routes to the closed form when it applies,
/// otherwise to the cut method (uncapacitated instances get the production
/// box [0, M] with M large enough to cover the maximal demand).
RobustSolution solve_robust(const Instance& inst, const RobustOptions& opts = {});

}  // namespace lotrob
