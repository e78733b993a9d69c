#include "lotrob/robust.hpp"

#include "lotrob/deterministic.hpp"
#include "lotrob/evaluation.hpp"
#include "lotrob/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lotrob {

namespace {

bool uniform(const std::vector<double>& v) {
    for (double x : v)
        if (x != v.front()) return false;
    return true;
}

/// Master relaxation of the cut loop. Variables are the plan x (inside the
/// capacity box), the worst-cost estimate a, and per collected scenario the
/// inventory/backorder trajectories plus a slack turning "a >= cut cost"
/// into an equality row. Cuts are appended in place and each resolve warm
/// starts from the previous optimal basis.
class CutMaster {
public:
    explicit CutMaster(const Instance& inst) : inst_(inst), T_(inst.periods) {
        for (int t = 0; t < T_; ++t)
            lp_.add_variable(0.0, inst.capacity->lower[static_cast<std::size_t>(t)],
                             inst.capacity->upper[static_cast<std::size_t>(t)]);
        a_var_ = lp_.add_variable(1.0, 0.0, kLpInfinity);
    }

    void add_cut(const Scenario& s) { cuts_.push_back(s); }

    /// Solves the relaxation; returns the new plan and the bound a*.
    std::pair<ProductionPlan, double> solve() {
        append_pending();
        LpBasis warm;
        const LpBasis* hint = nullptr;
        if (have_solution_) {
            warm = last_.basis;
            warm.basic.insert(warm.basic.end(), pending_basics_.begin(), pending_basics_.end());
            warm.at_upper.resize(static_cast<std::size_t>(lp_.num_vars()), 0);
            hint = &warm;
        } else {
            warm.at_upper.assign(static_cast<std::size_t>(lp_.num_vars()), 0);
            warm.basic = pending_basics_;
            hint = &warm;
        }
        pending_basics_.clear();
        last_ = solve_lp(lp_, hint);
        if (last_.status != LpStatus::Optimal)
            throw SolverError("scenario-cut master relaxation did not solve to optimality");
        have_solution_ = true;
        std::vector<double> x(static_cast<std::size_t>(T_));
        for (int t = 0; t < T_; ++t) x[static_cast<std::size_t>(t)] = last_.values[static_cast<std::size_t>(t)];
        return {ProductionPlan{std::move(x)}, last_.objective};
    }

private:
    void append_pending() {
        for (; built_cuts_ < cuts_.size(); ++built_cuts_) {
            const Scenario& s = cuts_[built_cuts_];
            const auto cum_s = cumulative(s.values);
            std::vector<int> iv(static_cast<std::size_t>(T_)), bv(static_cast<std::size_t>(T_));
            for (int t = 0; t < T_; ++t) {
                iv[static_cast<std::size_t>(t)] = lp_.add_variable(0.0, 0.0, kLpInfinity);
                bv[static_cast<std::size_t>(t)] = lp_.add_variable(0.0, 0.0, kLpInfinity);
            }
            const int slack = lp_.add_variable(0.0, 0.0, kLpInfinity);
            for (int t = 0; t < T_; ++t) {
                std::vector<std::pair<int, double>> terms;
                terms.reserve(static_cast<std::size_t>(t) + 3);
                terms.emplace_back(bv[static_cast<std::size_t>(t)], 1.0);
                terms.emplace_back(iv[static_cast<std::size_t>(t)], -1.0);
                for (int j = 0; j <= t; ++j) terms.emplace_back(j, 1.0);
                lp_.add_equality(std::move(terms), cum_s[static_cast<std::size_t>(t)]);
                const double residual = cum_s[static_cast<std::size_t>(t)] - plan_cumulative(t);
                pending_basics_.push_back(residual >= 0 ? bv[static_cast<std::size_t>(t)]
                                                        : iv[static_cast<std::size_t>(t)]);
            }
            std::vector<std::pair<int, double>> cost_row;
            cost_row.reserve(static_cast<std::size_t>(2 * T_) + 2);
            cost_row.emplace_back(a_var_, 1.0);
            for (int t = 0; t < T_; ++t) {
                cost_row.emplace_back(iv[static_cast<std::size_t>(t)],
                                      -inst_.inv_cost[static_cast<std::size_t>(t)]);
                cost_row.emplace_back(bv[static_cast<std::size_t>(t)],
                                      -inst_.back_cost[static_cast<std::size_t>(t)]);
            }
            cost_row.emplace_back(slack, -1.0);
            lp_.add_equality(std::move(cost_row), 0.0);
            pending_basics_.push_back(slack);
        }
    }

    double plan_cumulative(int t) const {
        double acc = 0;
        for (int j = 0; j <= t; ++j)
            acc += have_solution_ ? last_.values[static_cast<std::size_t>(j)]
                                  : inst_.capacity->lower[static_cast<std::size_t>(j)];
        return acc;
    }

    const Instance& inst_;
    int T_;
    LinearProgram lp_;
    int a_var_ = -1;
    std::vector<Scenario> cuts_;
    std::size_t built_cuts_ = 0;
    std::vector<int> pending_basics_;
    LpSolution last_;
    bool have_solution_ = false;
};

Instance boxed_uncapacitated(const Instance& inst) {
    Instance out = inst;
    double m = inst.big_m;
    if (m <= 0) {
        for (double v : inst.demands.hi) m += v;
        m += inst.initial_inventory;
    }
    Capacity cap;
    cap.lower.assign(static_cast<std::size_t>(inst.periods), 0.0);
    cap.upper.assign(static_cast<std::size_t>(inst.periods), m);
    out.capacity = std::move(cap);
    return out;
}

}  // namespace

RobustSolution solve_uncapacitated(const Instance& inst_in) {
    const Instance inst = as_interval_model(inst_in);
    inst.validate();
    if (inst.capacitated())
        throw ModelMismatchError("closed form applies only without capacity limits");
    if (!uniform(inst.inv_cost) || !uniform(inst.back_cost))
        throw ModelMismatchError("closed form requires time-uniform unit costs");
    if (inst.initial_inventory != 0 || inst.initial_backorder != 0)
        throw ModelMismatchError("normalize initial conditions before solving");

    const double ci = inst.inv_cost.front();
    const double cb = inst.back_cost.front();
    auto [s_lo, s_hi] = scenario_bounds(inst);
    const auto cum_lo = cumulative(s_lo.values);
    const auto cum_hi = cumulative(s_hi.values);

    RobustSolution out;
    std::vector<double> x(static_cast<std::size_t>(inst.periods));
    double prev = 0;
    for (int t = 0; t < inst.periods; ++t) {
        const double cum = (cb * cum_hi[static_cast<std::size_t>(t)] +
                            ci * cum_lo[static_cast<std::size_t>(t)]) / (ci + cb);
        x[static_cast<std::size_t>(t)] = cum - prev;
        prev = cum;
    }
    out.plan = ProductionPlan{std::move(x)};
    out.upper_bound = total_cost(out.plan, s_hi, inst);
    out.lower_bound = out.upper_bound;
    out.worst_scenario = std::move(s_hi);
    out.converged = true;
    return out;
}

RobustSolution solve_capacitated(const Instance& inst_in, const RobustOptions& opts) {
    const Instance inst = as_interval_model(inst_in);
    inst.validate();
    if (!inst.capacitated())
        throw ModelMismatchError("cut method needs a capacity box; use solve_robust");
    if (inst.initial_inventory != 0 || inst.initial_backorder != 0)
        throw ModelMismatchError("normalize initial conditions before solving");
    if (opts.epsilon <= 0) throw ValidationError("epsilon must be positive");
    if (opts.max_iterations < 1) throw ValidationError("max_iterations must be positive");

    ProductionPlan current = opts.initial_plan
        ? *opts.initial_plan
        : solve_deterministic(inst, midpoint_scenario(inst)).plan;
    if (current.size() != static_cast<std::size_t>(inst.periods))
        throw ValidationError("initial plan must have length T");
    if (!plan_feasible(current, inst))
        throw ValidationError("initial plan violates the capacity box");

    CutMaster master(inst);
    RobustSolution out;
    out.upper_bound = std::numeric_limits<double>::infinity();
    out.lower_bound = 0;

    for (int k = 0; k < opts.max_iterations; ++k) {
        auto [worst, f_upper] = worst_case_scenario(current, inst);
        if (f_upper < out.upper_bound) {
            out.upper_bound = f_upper;
            out.plan = current;
            out.worst_scenario = worst;
        }
        out.iterations = k + 1;
        out.trace.push_back({k + 1, out.lower_bound, out.upper_bound});

        const double gap = (out.upper_bound - out.lower_bound) /
                           std::max(1.0, std::fabs(out.lower_bound));
        if (gap <= opts.epsilon) {
            out.converged = true;
            return out;
        }
        const bool duplicate = std::find(out.cut_scenarios.begin(), out.cut_scenarios.end(),
                                         worst) != out.cut_scenarios.end();
        if (duplicate) {
            std::ostringstream msg;
            msg << "cut loop stalled: worst-case scenario repeated at iteration " << (k + 1)
                << " with bounds [" << out.lower_bound << ", " << out.upper_bound << "]";
            throw SolverError(msg.str());
        }
        out.cut_scenarios.push_back(std::move(worst));
        master.add_cut(out.cut_scenarios.back());
        auto [next, bound] = master.solve();
        out.lower_bound = std::max(out.lower_bound, bound);
        current = std::move(next);
    }
    out.converged = false;
    return out;
}

RobustSolution solve_robust(const Instance& inst_in, const RobustOptions& opts) {
    const Instance interval = as_interval_model(inst_in);
    const Instance norm = normalize_initial_conditions(interval);
    const bool appended = norm.periods == interval.periods + 1;

    RobustOptions routed = opts;
    if (appended && routed.initial_plan &&
        routed.initial_plan->size() == static_cast<std::size_t>(interval.periods)) {
        // Prepend the fixed period-0 production so the hint matches the
        // normalized horizon.
        std::vector<double> x = routed.initial_plan->values;
        x.insert(x.begin(), norm.capacity->lower.front());
        routed.initial_plan = ProductionPlan{std::move(x)};
    }

    RobustSolution sol;
    if (!norm.capacitated() && uniform(norm.inv_cost) && uniform(norm.back_cost)) {
        sol = solve_uncapacitated(norm);
    } else if (norm.capacitated()) {
        sol = solve_capacitated(norm, routed);
    } else {
        sol = solve_capacitated(boxed_uncapacitated(norm), routed);
    }
    if (appended) {
        // Period 0 is a fixed bookkeeping period; strip it from outputs.
        const auto strip = [](std::vector<double>& v) { v.erase(v.begin()); };
        strip(sol.plan.values);
        strip(sol.worst_scenario.values);
        for (Scenario& s : sol.cut_scenarios) strip(s.values);
    }
    return sol;
}

}  // namespace lotrob
