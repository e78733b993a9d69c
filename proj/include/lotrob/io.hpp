#pragma once

#include "lotrob/bench.hpp"
#include "lotrob/fuzzy.hpp"
#include "lotrob/model.hpp"

#include <iosfwd>
#include <string>

namespace lotrob {

/// Instance document: {"periods": T, "inventory_cost": [...],
/// "backorder_cost": [...], "capacity": {"lower": [...], "upper": [...]}
/// (optional), "demands": {"type": "crisp"|"interval"|"trapezoidal",
/// "values": [...]}, "initial_inventory": v, "initial_backorder": v}.
/// Interval values are [lo, hi] pairs, trapezoidal values [a, b, c, d]
/// quadruples (use b == c for triangular). Parse problems raise
/// ValidationError annotated with the byte offset.
Instance read_instance_json(std::istream& in, const std::string& origin = "<input>");
Instance load_instance(const std::string& path);
void write_instance_json(const Instance& inst, std::ostream& out);

/// Plan document: {"values": [x_1, ..., x_T]}.
ProductionPlan read_plan_json(std::istream& in, const std::string& origin = "<input>");
ProductionPlan load_plan(const std::string& path);
void write_plan_json(const ProductionPlan& plan, std::ostream& out);

/// Goal document: {"c": full-satisfaction bound, "d": rejection bound}.
FuzzyGoal read_goal_json(std::istream& in, const std::string& origin = "<input>");
FuzzyGoal load_goal(const std::string& path);

/// Bench configuration in "key = value" lines; '#' starts a comment.
/// Keys: periods, instances, seed, fuzzy, capacitated, workers, betas
/// (comma-separated), epsilon, xi.
struct BenchConfig {
    GeneratorConfig gen;
    double epsilon = 1e-4;
    double xi = 0.01;
};

BenchConfig read_bench_config(std::istream& in, const std::string& origin = "<input>");
BenchConfig load_bench_config(const std::string& path);

}  // namespace lotrob
