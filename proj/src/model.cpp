#include "lotrob/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lotrob {

void TrapezoidalFuzzyInterval::validate() const {
    if (!(a <= b && b <= c && c <= d))
        throw ValidationError("trapezoidal interval requires a <= b <= c <= d");
}

double TrapezoidalFuzzyInterval::membership(double z) const {
    if (z <= a || z >= d) {
        // closed core still wins on the degenerate spikes a==b, c==d
        if (z == b && b == a) return 1.0;
        if (z == c && c == d) return 1.0;
        return 0.0;
    }
    if (z < b) return (z - a) / (b - a);
    if (z <= c) return 1.0;
    return (d - z) / (d - c);
}

std::pair<double, double> TrapezoidalFuzzyInterval::lambda_cut(double lambda) const {
    if (lambda < 0.0 || lambda > 1.0)
        throw ValidationError("lambda must lie in [0,1]");
    return {a + lambda * (b - a), d - lambda * (d - c)};
}

double defuzzify_yager(const TrapezoidalFuzzyInterval& fz) {
    return (fz.a + fz.b + fz.c + fz.d) / 4.0;
}

DemandModel DemandModel::crisp_demands(std::vector<double> values) {
    DemandModel m;
    m.type = DemandType::Crisp;
    m.crisp = std::move(values);
    return m;
}

DemandModel DemandModel::interval_demands(std::vector<double> lo, std::vector<double> hi) {
    DemandModel m;
    m.type = DemandType::Interval;
    m.lo = std::move(lo);
    m.hi = std::move(hi);
    return m;
}

DemandModel DemandModel::fuzzy_demands(std::vector<TrapezoidalFuzzyInterval> values) {
    DemandModel m;
    m.type = DemandType::Fuzzy;
    m.fuzzy = std::move(values);
    return m;
}

std::size_t DemandModel::size() const {
    switch (type) {
        case DemandType::Crisp: return crisp.size();
        case DemandType::Interval: return lo.size();
        case DemandType::Fuzzy: return fuzzy.size();
    }
    return 0;
}

void DemandModel::validate() const {
    switch (type) {
        case DemandType::Crisp:
            for (double d : crisp)
                if (d < 0) throw ValidationError("crisp demand must be nonnegative");
            break;
        case DemandType::Interval:
            if (lo.size() != hi.size())
                throw ValidationError("interval demand bound vectors differ in length");
            for (std::size_t t = 0; t < lo.size(); ++t)
                if (!(0 <= lo[t] && lo[t] <= hi[t]))
                    throw ValidationError("interval demand requires 0 <= d- <= d+ in period " +
                                          std::to_string(t + 1));
            break;
        case DemandType::Fuzzy:
            for (const auto& fz : fuzzy) {
                fz.validate();
                if (fz.a < 0) throw ValidationError("fuzzy demand support must be nonnegative");
            }
            break;
    }
}

void Instance::validate() const {
    if (periods < 1) throw ValidationError("instance needs at least one period");
    const auto T = static_cast<std::size_t>(periods);
    if (inv_cost.size() != T || back_cost.size() != T)
        throw ValidationError("cost vectors must have length T");
    for (std::size_t t = 0; t < T; ++t)
        if (inv_cost[t] < 0 || back_cost[t] < 0)
            throw ValidationError("unit costs must be nonnegative");
    if (capacity) {
        if (capacity->lower.size() != T || capacity->upper.size() != T)
            throw ValidationError("capacity vectors must have length T");
        for (std::size_t t = 0; t < T; ++t)
            if (!(0 <= capacity->lower[t] && capacity->lower[t] <= capacity->upper[t]))
                throw ValidationError("capacity requires 0 <= l_t <= u_t in period " +
                                      std::to_string(t + 1));
    }
    demands.validate();
    if (demands.size() != T)
        throw ValidationError("demand model must have length T");
    if (initial_inventory < 0 || initial_backorder < 0)
        throw ValidationError("initial inventory/backorder must be nonnegative");
    if (initial_inventory > 0 && initial_backorder > 0)
        throw ValidationError("at most one of I_0, B_0 may be positive");
}

std::vector<double> cumulative(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    std::partial_sum(v.begin(), v.end(), out.begin());
    return out;
}

double stage_cost(int t, double cum_production, double cum_demand, const Instance& inst) {
    const double surplus = cum_production - cum_demand;
    return std::max(inst.inv_cost[static_cast<std::size_t>(t)] * surplus,
                    -inst.back_cost[static_cast<std::size_t>(t)] * surplus);
}

double total_cost(const ProductionPlan& plan, const Scenario& scenario, const Instance& inst) {
    if (plan.size() != static_cast<std::size_t>(inst.periods) ||
        scenario.size() != static_cast<std::size_t>(inst.periods))
        throw ValidationError("plan and scenario must have length T");
    double cum_x = 0, cum_d = 0, cost = 0;
    for (int t = 0; t < inst.periods; ++t) {
        cum_x += plan[static_cast<std::size_t>(t)];
        cum_d += scenario[static_cast<std::size_t>(t)];
        cost += stage_cost(t, cum_x, cum_d, inst);
    }
    return cost;
}

bool plan_feasible(const ProductionPlan& plan, const Instance& inst, double tol) {
    if (plan.size() != static_cast<std::size_t>(inst.periods)) return false;
    for (double x : plan.values)
        if (x < -tol) return false;
    if (!inst.capacity) return true;
    for (std::size_t t = 0; t < plan.size(); ++t)
        if (plan[t] < inst.capacity->lower[t] - tol || plan[t] > inst.capacity->upper[t] + tol)
            return false;
    return true;
}

std::pair<Scenario, Scenario> scenario_bounds(const Instance& inst) {
    if (inst.demands.type != DemandType::Interval)
        throw ModelMismatchError(
            "scenario bounds require an interval demand model; take a lambda-cut first");
    return {Scenario{inst.demands.lo}, Scenario{inst.demands.hi}};
}

Scenario midpoint_scenario(const Instance& inst) {
    auto [lo, hi] = scenario_bounds(inst);
    std::vector<double> mid(lo.size());
    for (std::size_t t = 0; t < mid.size(); ++t) mid[t] = (lo[t] + hi[t]) / 2.0;
    return Scenario{std::move(mid)};
}

Instance as_interval_model(const Instance& inst) {
    if (inst.demands.type != DemandType::Crisp) return inst;
    Instance out = inst;
    out.demands = DemandModel::interval_demands(inst.demands.crisp, inst.demands.crisp);
    return out;
}

namespace {

// Shift every representation of the period-1 demand by delta (>=0 after the
// shift is required by the caller).
void shift_first_demand(DemandModel& dm, double delta) {
    switch (dm.type) {
        case DemandType::Crisp:
            dm.crisp[0] += delta;
            break;
        case DemandType::Interval:
            dm.lo[0] += delta;
            dm.hi[0] += delta;
            break;
        case DemandType::Fuzzy:
            dm.fuzzy[0].a += delta;
            dm.fuzzy[0].b += delta;
            dm.fuzzy[0].c += delta;
            dm.fuzzy[0].d += delta;
            break;
    }
}

double first_demand_lower(const DemandModel& dm) {
    switch (dm.type) {
        case DemandType::Crisp: return dm.crisp[0];
        case DemandType::Interval: return dm.lo[0];
        case DemandType::Fuzzy: return dm.fuzzy[0].a;
    }
    return 0;
}

double total_demand_upper(const DemandModel& dm) {
    double sum = 0;
    switch (dm.type) {
        case DemandType::Crisp:
            for (double d : dm.crisp) sum += d;
            break;
        case DemandType::Interval:
            for (double d : dm.hi) sum += d;
            break;
        case DemandType::Fuzzy:
            for (const auto& fz : dm.fuzzy) sum += fz.d;
            break;
    }
    return sum;
}

void prepend_demand_zero_or(DemandModel& dm, double value) {
    switch (dm.type) {
        case DemandType::Crisp:
            dm.crisp.insert(dm.crisp.begin(), value);
            break;
        case DemandType::Interval:
            dm.lo.insert(dm.lo.begin(), value);
            dm.hi.insert(dm.hi.begin(), value);
            break;
        case DemandType::Fuzzy:
            dm.fuzzy.insert(dm.fuzzy.begin(), TrapezoidalFuzzyInterval(value, value, value, value));
            break;
    }
}

}  // namespace

Instance normalize_initial_conditions(const Instance& inst) {
    inst.validate();
    if (inst.initial_inventory == 0 && inst.initial_backorder == 0) return inst;

    Instance out = inst;
    const double i0 = inst.initial_inventory;
    const double b0 = inst.initial_backorder;

    if (!inst.capacitated()) {
        if (b0 > 0) {
            shift_first_demand(out.demands, b0);
            out.initial_backorder = 0;
            return out;
        }
        if (i0 <= first_demand_lower(inst.demands)) {
            shift_first_demand(out.demands, -i0);
            out.initial_inventory = 0;
            return out;
        }
    }

    // Append a period 0 with fixed production x_0 = I_0 (or demand B_0) and
    // zero period-0 costs; uncapacitated instances get the box [0, M].
    const double big_m = total_demand_upper(inst.demands) + i0;
    out.periods = inst.periods + 1;
    out.inv_cost.insert(out.inv_cost.begin(), 0.0);
    out.back_cost.insert(out.back_cost.begin(), 0.0);
    prepend_demand_zero_or(out.demands, b0 > 0 ? b0 : 0.0);
    Capacity cap;
    if (inst.capacity) {
        cap = *inst.capacity;
    } else {
        cap.lower.assign(static_cast<std::size_t>(inst.periods), 0.0);
        cap.upper.assign(static_cast<std::size_t>(inst.periods), big_m);
        out.big_m = big_m;
    }
    cap.lower.insert(cap.lower.begin(), i0);
    cap.upper.insert(cap.upper.begin(), i0);
    out.capacity = std::move(cap);
    out.initial_inventory = 0;
    out.initial_backorder = 0;
    return out;
}

std::pair<Instance, ProductionPlan> normalize_with_plan(const Instance& inst,
                                                        const ProductionPlan& plan) {
    Instance norm = normalize_initial_conditions(inst);
    if (norm.periods == inst.periods) return {std::move(norm), plan};
    ProductionPlan mapped = plan;
    mapped.values.insert(mapped.values.begin(), inst.initial_inventory);
    return {std::move(norm), std::move(mapped)};
}

}  // namespace lotrob
