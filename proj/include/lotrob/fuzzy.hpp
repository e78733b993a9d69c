#pragma once

#include "lotrob/model.hpp"
#include "lotrob/robust.hpp"

namespace lotrob {

/// Fuzzy cost goal: membership 1 on [0, c], falling linearly to 0 at d.
struct FuzzyGoal {
    double c = 0;
    double d = 0;

    void validate() const;
    /// Upper bound of the beta-cut of the goal's tail: d - beta * (d - c).
    double upper(double beta) const { return d - beta * (d - c); }
    TrapezoidalFuzzyInterval as_fuzzy_interval() const { return {0, 0, c, d}; }
};

/// Outcome of a possibility/necessity query or maximization. The reported
/// degree is certified within `precision` by the monotonicity of the cost
/// bounds in the cut level.
struct DegreeResult {
    double degree = 0;
    double lambda_star = 0;
    double precision = 0;
    int probes = 0;                       // cut levels evaluated
    std::optional<ProductionPlan> plan;   // witness of maximization variants
    std::optional<Scenario> scenario;     // witness scenario when available
};

struct FuzzySearchOptions {
    double xi = 0.01;             // binary-search precision on lambda
    RobustOptions robust;         // forwarded to per-cut min-max solves
};

/// Interval instance whose demands are the per-period lambda-cuts. Crisp
/// demands degenerate to zero-width intervals; interval demands pass
/// through unchanged (their cut does not depend on lambda).
Instance scenario_cut_set(const Instance& inst, double lambda);

/// Degree to which the plan's fuzzy cost can stay within g: the highest cut
/// level whose optimistic cost bound is still <= g.
DegreeResult possibility_cost_leq(const ProductionPlan& plan, const Instance& inst, double g,
                                  double xi = 0.01);

/// Degree to which the plan's fuzzy cost is certain to stay within g:
/// 1 minus the lowest cut level whose worst-case cost bound is <= g.
DegreeResult necessity_cost_leq(const ProductionPlan& plan, const Instance& inst, double g,
                                double xi = 0.01);

/// Degree to which the plan's fuzzy cost certainly lies in the fuzzy goal:
/// the feasibility test compares the worst-case bound at level lambda with
/// the goal tail at level 1 - lambda.
DegreeResult necessity_in_goal(const ProductionPlan& plan, const Instance& inst,
                               const FuzzyGoal& goal, double xi = 0.01);

/// Plan maximizing the certainty that costs stay within the crisp
/// threshold g; each probe solves the min-max problem on the cut.
DegreeResult maximize_necessity_threshold(const Instance& inst, double g,
                                          const FuzzySearchOptions& opts = {});

/// Plan maximizing the certainty that costs lie in the fuzzy goal.
DegreeResult maximize_necessity_goal(const Instance& inst, const FuzzyGoal& goal,
                                     const FuzzySearchOptions& opts = {});

/// Cost interval of the plan at each grid level; intervals are nested
/// across increasing lambda.
std::vector<std::pair<double, CostInterval>> fuzzy_cost_profile(
    const ProductionPlan& plan, const Instance& inst, const std::vector<double>& lambda_grid);

}  // namespace lotrob
