#include "lotrob/fuzzy.hpp"

#include "lotrob/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace lotrob {

void FuzzyGoal::validate() const {
    if (!(0 <= c && c <= d)) throw ValidationError("fuzzy goal requires 0 <= c <= d");
}

Instance scenario_cut_set(const Instance& inst, double lambda) {
    inst.validate();
    if (lambda < 0 || lambda > 1) throw ValidationError("lambda must lie in [0,1]");
    switch (inst.demands.type) {
        case DemandType::Interval:
            return inst;
        case DemandType::Crisp:
            return as_interval_model(inst);
        case DemandType::Fuzzy:
            break;
    }
    Instance out = inst;
    std::vector<double> lo, hi;
    lo.reserve(inst.demands.fuzzy.size());
    hi.reserve(inst.demands.fuzzy.size());
    for (const auto& fz : inst.demands.fuzzy) {
        auto [a, b] = fz.lambda_cut(lambda);
        lo.push_back(a);
        hi.push_back(b);
    }
    out.demands = DemandModel::interval_demands(std::move(lo), std::move(hi));
    return out;
}

namespace {

/// Probe levels are rounded to a fixed decimal grid finer than xi so that
/// the cut bounds stay exactly representable for the integer-keyed
/// recursion (equal-width triangular cuts then collapse to small layers).
double round_probe(double lambda, double xi, double lo, double hi) {
    int k = 2;
    if (xi > 0) k = std::min(6, static_cast<int>(std::ceil(std::log10(1.0 / xi))) + 2);
    double factor = 1;
    for (int i = 0; i < k; ++i) factor *= 10;
    const double rounded = std::round(lambda * factor) / factor;
    if (rounded > lo && rounded < hi) return rounded;
    return lambda;
}

/// Binary search for the smallest feasible lambda when feasibility is
/// monotone nondecreasing in lambda. Keeps the certified feasible end of
/// the final bracket together with its width and the probe count.
struct UpperSearch {
    double lambda_star = 1;
    double width = 0;
    int probes = 0;
    bool feasible_at_zero = false;
    bool infeasible_at_one = false;
};

UpperSearch search_smallest_feasible(const std::function<bool(double)>& feasible, double xi) {
    if (xi <= 0) throw ValidationError("xi must be positive");
    UpperSearch res;
    res.probes = 1;
    if (feasible(0)) {
        res.lambda_star = 0;
        res.feasible_at_zero = true;
        return res;
    }
    ++res.probes;
    if (!feasible(1)) {
        res.lambda_star = 1;
        res.infeasible_at_one = true;
        return res;
    }
    double lo = 0, hi = 1;
    while (hi - lo > xi) {
        const double mid = round_probe(0.5 * (lo + hi), xi, lo, hi);
        ++res.probes;
        if (feasible(mid))
            hi = mid;
        else
            lo = mid;
    }
    res.lambda_star = hi;
    res.width = hi - lo;
    return res;
}

void require_fuzzy_like(const Instance& inst) {
    inst.validate();
    if (inst.demands.type == DemandType::Interval)
        throw ModelMismatchError("degree queries need crisp or fuzzy demands");
}

double upper_cost_at(const ProductionPlan& plan, const Instance& inst, double lambda,
                     Scenario* witness = nullptr) {
    auto [ni, np] = normalize_with_plan(scenario_cut_set(inst, lambda), plan);
    auto [s, f] = worst_case_scenario(np, ni);
    if (witness) *witness = std::move(s);
    return f;
}

double lower_cost_at(const ProductionPlan& plan, const Instance& inst, double lambda,
                     Scenario* witness = nullptr) {
    auto [ni, np] = normalize_with_plan(scenario_cut_set(inst, lambda), plan);
    auto [s, f] = optimistic_scenario(np, ni);
    if (witness) *witness = std::move(s);
    return f;
}

}  // namespace

DegreeResult possibility_cost_leq(const ProductionPlan& plan, const Instance& inst, double g,
                                  double xi) {
    require_fuzzy_like(inst);
    if (xi <= 0) throw ValidationError("xi must be positive");
    DegreeResult out;
    out.precision = xi;
    Scenario witness;
    out.probes = 1;
    if (lower_cost_at(plan, inst, 1.0, &witness) <= g) {
        out.degree = 1;
        out.lambda_star = 1;
        out.scenario = std::move(witness);
        return out;
    }
    ++out.probes;
    if (lower_cost_at(plan, inst, 0.0, &witness) > g) {
        out.degree = 0;
        out.lambda_star = 0;
        return out;
    }
    // Feasible levels form the lower interval [0, sup]; keep lo feasible
    // and report it, so the degree is achievable.
    double lo = 0, hi = 1;
    while (hi - lo > xi) {
        const double mid = round_probe(0.5 * (lo + hi), xi, lo, hi);
        ++out.probes;
        if (lower_cost_at(plan, inst, mid) <= g)
            lo = mid;
        else
            hi = mid;
    }
    lower_cost_at(plan, inst, lo, &witness);
    out.degree = lo;
    out.lambda_star = lo;
    out.scenario = std::move(witness);
    return out;
}

DegreeResult necessity_cost_leq(const ProductionPlan& plan, const Instance& inst, double g,
                                double xi) {
    require_fuzzy_like(inst);
    DegreeResult out;
    out.precision = xi;
    const auto res = search_smallest_feasible(
        [&](double lambda) { return upper_cost_at(plan, inst, lambda) <= g; }, xi);
    out.probes = res.probes;
    out.lambda_star = res.lambda_star;
    out.degree = res.infeasible_at_one ? 0.0 : 1.0 - res.lambda_star;
    if (!res.infeasible_at_one) {
        Scenario witness;
        upper_cost_at(plan, inst, res.lambda_star, &witness);
        out.scenario = std::move(witness);
    }
    return out;
}

DegreeResult necessity_in_goal(const ProductionPlan& plan, const Instance& inst,
                               const FuzzyGoal& goal, double xi) {
    require_fuzzy_like(inst);
    goal.validate();
    DegreeResult out;
    out.precision = xi;
    const auto res = search_smallest_feasible(
        [&](double lambda) {
            return upper_cost_at(plan, inst, lambda) <= goal.upper(1.0 - lambda);
        },
        xi);
    out.probes = res.probes;
    out.lambda_star = res.lambda_star;
    out.degree = res.infeasible_at_one ? 0.0 : 1.0 - res.lambda_star;
    if (!res.infeasible_at_one) {
        Scenario witness;
        upper_cost_at(plan, inst, res.lambda_star, &witness);
        out.scenario = std::move(witness);
    }
    return out;
}

namespace {

DegreeResult maximize_necessity(const Instance& inst,
                                const std::function<double(double)>& threshold,
                                const FuzzySearchOptions& opts) {
    require_fuzzy_like(inst);
    DegreeResult out;
    out.precision = opts.xi;

    RobustOptions robust_opts = opts.robust;
    RobustSolution best;
    bool have_best = false;
    const auto feasible = [&](double lambda) {
        const RobustSolution sol = solve_robust(scenario_cut_set(inst, lambda), robust_opts);
        // Adjacent probes have similar cuts; reuse the plan as the next start.
        robust_opts.initial_plan = sol.plan;
        const bool ok = sol.upper_bound <= threshold(lambda);
        if (ok) {
            best = sol;
            have_best = true;
        }
        return ok;
    };
    const auto res = search_smallest_feasible(feasible, opts.xi);
    out.probes = res.probes;
    out.lambda_star = res.lambda_star;
    if (res.infeasible_at_one) {
        out.degree = 0;
        return out;
    }
    if (!have_best)
        best = solve_robust(scenario_cut_set(inst, res.lambda_star), robust_opts);
    out.degree = 1.0 - res.lambda_star;
    out.plan = best.plan;
    out.scenario = best.worst_scenario;
    return out;
}

}  // namespace

DegreeResult maximize_necessity_threshold(const Instance& inst, double g,
                                          const FuzzySearchOptions& opts) {
    return maximize_necessity(inst, [g](double) { return g; }, opts);
}

DegreeResult maximize_necessity_goal(const Instance& inst, const FuzzyGoal& goal,
                                     const FuzzySearchOptions& opts) {
    goal.validate();
    return maximize_necessity(
        inst, [&goal](double lambda) { return goal.upper(1.0 - lambda); }, opts);
}

std::vector<std::pair<double, CostInterval>> fuzzy_cost_profile(
    const ProductionPlan& plan, const Instance& inst, const std::vector<double>& lambda_grid) {
    require_fuzzy_like(inst);
    std::vector<std::pair<double, CostInterval>> out;
    out.reserve(lambda_grid.size());
    for (double lambda : lambda_grid) {
        auto [ni, np] = normalize_with_plan(scenario_cut_set(inst, lambda), plan);
        const EvaluationResult res = evaluate_plan(np, ni);
        out.emplace_back(lambda, res.cost_interval);
    }
    return out;
}

}  // namespace lotrob
