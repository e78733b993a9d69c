#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lotrob {

/// Thrown when an input violates a documented invariant (bad lengths,
/// negative demands, both initial inventory and backorder positive, ...).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an operation is called with the wrong demand model,
/// e.g. asking for interval scenario bounds on a crisp instance.
struct ModelMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when exact integer scaling of cumulative demand levels would
/// overflow 64-bit keys.
struct CapacityExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown by iterative solvers on non-convergence; carries a diagnostic.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Trapezoidal possibility distribution (a,b,c,d): membership is 0 outside
/// (a,d), rises linearly on [a,b], equals 1 on [b,c], falls linearly on
/// [c,d]. Triangular intervals are the b==c case.
struct TrapezoidalFuzzyInterval {
    double a = 0, b = 0, c = 0, d = 0;

    TrapezoidalFuzzyInterval() = default;
    TrapezoidalFuzzyInterval(double a_, double b_, double c_, double d_)
        : a(a_), b(b_), c(c_), d(d_) {}
    static TrapezoidalFuzzyInterval triangular(double lo, double mode, double hi) {
        return {lo, mode, mode, hi};
    }

    void validate() const;
    double membership(double z) const;
    /// Closed interval {z : membership(z) >= lambda}; the support for lambda=0.
    std::pair<double, double> lambda_cut(double lambda) const;
};

/// Mean of the lambda-cut midpoints, (a+b+c+d)/4. Comparison baseline for
/// defuzzify-then-optimize policies.
double defuzzify_yager(const TrapezoidalFuzzyInterval& fz);

enum class DemandType { Crisp, Interval, Fuzzy };

/// Per-period demand information: exact values, closed intervals, or
/// trapezoidal fuzzy intervals.
struct DemandModel {
    DemandType type = DemandType::Crisp;
    std::vector<double> crisp;                      // type == Crisp
    std::vector<double> lo, hi;                     // type == Interval
    std::vector<TrapezoidalFuzzyInterval> fuzzy;    // type == Fuzzy

    static DemandModel crisp_demands(std::vector<double> values);
    static DemandModel interval_demands(std::vector<double> lo, std::vector<double> hi);
    static DemandModel fuzzy_demands(std::vector<TrapezoidalFuzzyInterval> values);

    std::size_t size() const;
    void validate() const;
};

struct Capacity {
    std::vector<double> lower, upper;   // l_t <= x_t <= u_t
};

/// One demand value per period; a point of the scenario box.
struct Scenario {
    std::vector<double> values;
    Scenario() = default;
    explicit Scenario(std::vector<double> v) : values(std::move(v)) {}
    std::size_t size() const { return values.size(); }
    double operator[](std::size_t t) const { return values[t]; }
    bool operator==(const Scenario&) const = default;
};

/// Nonnegative production quantity per period.
struct ProductionPlan {
    std::vector<double> values;
    ProductionPlan() = default;
    explicit ProductionPlan(std::vector<double> v) : values(std::move(v)) {}
    std::size_t size() const { return values.size(); }
    double operator[](std::size_t t) const { return values[t]; }
    bool operator==(const ProductionPlan&) const = default;
};

/// Optimal bounds [f-, f+] of a plan's cost over a scenario set.
struct CostInterval {
    double lower = 0, upper = 0;
};

/// A lot-sizing instance: horizon, unit inventory/backorder costs, optional
/// production capacity limits, the demand model, and initial conditions.
/// Periods are 1-based in file formats and documentation, 0-based in code.
struct Instance {
    int periods = 0;
    std::vector<double> inv_cost;    // c^I_t, money per unit
    std::vector<double> back_cost;   // c^B_t, money per unit
    std::optional<Capacity> capacity;
    DemandModel demands;
    double initial_inventory = 0;    // I_0
    double initial_backorder = 0;    // B_0
    /// Set by normalize_initial_conditions when a fixed period 0 is
    /// appended; the production box for the remaining periods is [0, big_m].
    double big_m = 0;

    bool capacitated() const { return capacity.has_value(); }
    void validate() const;
};

/// Prefix sums: output_t = sum_{i<=t} v_i.
std::vector<double> cumulative(const std::vector<double>& v);

/// Stage cost max{c^I_t (X_t - D_t), c^B_t (D_t - X_t)} for period index t
/// (0-based into the cost vectors).
double stage_cost(int t, double cum_production, double cum_demand, const Instance& inst);

/// Total cost of a plan under one scenario: sum of stage costs over the
/// cumulative trajectories.
double total_cost(const ProductionPlan& plan, const Scenario& scenario, const Instance& inst);

/// True iff the plan respects the instance's capacity box (vacuously true
/// without capacity limits).
bool plan_feasible(const ProductionPlan& plan, const Instance& inst, double tol = 1e-9);

/// The all-lower and all-upper extreme scenarios (S-, S+) of an interval
/// instance. Crisp/fuzzy models raise ModelMismatchError; take a lambda-cut
/// first.
std::pair<Scenario, Scenario> scenario_bounds(const Instance& inst);

/// Midpoint scenario (d- + d+)/2 of an interval instance.
Scenario midpoint_scenario(const Instance& inst);

/// Copy with the crisp demand model widened to zero-width intervals;
/// interval instances pass through unchanged.
Instance as_interval_model(const Instance& inst);

/// Returns an equivalent instance with I_0 = B_0 = 0. Uncapacitated
/// interval-like models shift D_1 when the shift keeps demands nonnegative;
/// otherwise a period 0 with fixed production x_0 = I_0 (or demand B_0) and
/// zero period-0 costs is appended and the instance is marked with big_m.
Instance normalize_initial_conditions(const Instance& inst);

/// normalize_initial_conditions plus the matching plan transformation:
/// identity for demand shifts, prepend x_0 = I_0 (or 0) when a period was
/// appended.
std::pair<Instance, ProductionPlan> normalize_with_plan(const Instance& inst,
                                                        const ProductionPlan& plan);

}  // namespace lotrob
