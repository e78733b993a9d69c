#include "lotrob/deterministic.hpp"

#include "lotrob/lp.hpp"

#include <algorithm>
#include <cmath>

namespace lotrob {

DeterministicSolution solve_deterministic(const Instance& inst, const Scenario& scenario) {
    inst.validate();
    const int T = inst.periods;
    if (scenario.size() != static_cast<std::size_t>(T))
        throw ValidationError("scenario must have length T");
    for (double s : scenario.values)
        if (s < 0) throw ValidationError("scenario demands must be nonnegative");

    const double net_initial = inst.initial_inventory - inst.initial_backorder;
    const auto cum_d = cumulative(scenario.values);

    DeterministicSolution out;
    out.inventory.resize(static_cast<std::size_t>(T));
    out.backorder.resize(static_cast<std::size_t>(T));

    if (!inst.capacitated()) {
        // Follow demand: X_t = max(D_t - (I_0 - B_0), 0).
        std::vector<double> x(static_cast<std::size_t>(T));
        double prev = 0;
        for (int t = 0; t < T; ++t) {
            const double cum_x = std::max(cum_d[static_cast<std::size_t>(t)] - net_initial, 0.0);
            x[static_cast<std::size_t>(t)] = cum_x - prev;
            prev = cum_x;
            const double pos = cum_x - cum_d[static_cast<std::size_t>(t)] + net_initial;
            out.inventory[static_cast<std::size_t>(t)] = std::max(pos, 0.0);
            out.backorder[static_cast<std::size_t>(t)] = std::max(-pos, 0.0);
            out.cost += inst.inv_cost[static_cast<std::size_t>(t)] * out.inventory[static_cast<std::size_t>(t)] +
                        inst.back_cost[static_cast<std::size_t>(t)] * out.backorder[static_cast<std::size_t>(t)];
        }
        out.plan = ProductionPlan{std::move(x)};
        return out;
    }

    // Flow formulation: min sum c^I I + c^B B
    //   s.t. B_t - I_t + sum_{j<=t} x_j = D_t - (I_0 - B_0)
    LinearProgram lp;
    std::vector<int> xv(static_cast<std::size_t>(T)), iv(static_cast<std::size_t>(T)), bv(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t)
        xv[static_cast<std::size_t>(t)] = lp.add_variable(0.0, inst.capacity->lower[static_cast<std::size_t>(t)],
                                                          inst.capacity->upper[static_cast<std::size_t>(t)]);
    for (int t = 0; t < T; ++t) {
        iv[static_cast<std::size_t>(t)] = lp.add_variable(inst.inv_cost[static_cast<std::size_t>(t)], 0.0, kLpInfinity);
        bv[static_cast<std::size_t>(t)] = lp.add_variable(inst.back_cost[static_cast<std::size_t>(t)], 0.0, kLpInfinity);
    }
    LpBasis crash;
    crash.at_upper.assign(static_cast<std::size_t>(lp.num_vars()), 0);
    double cum_l = 0;
    for (int t = 0; t < T; ++t) {
        std::vector<std::pair<int, double>> terms;
        terms.reserve(static_cast<std::size_t>(t) + 3);
        terms.emplace_back(bv[static_cast<std::size_t>(t)], 1.0);
        terms.emplace_back(iv[static_cast<std::size_t>(t)], -1.0);
        for (int j = 0; j <= t; ++j) terms.emplace_back(xv[static_cast<std::size_t>(j)], 1.0);
        lp.add_equality(std::move(terms), cum_d[static_cast<std::size_t>(t)] - net_initial);
        cum_l += inst.capacity->lower[static_cast<std::size_t>(t)];
        const double residual = cum_d[static_cast<std::size_t>(t)] - net_initial - cum_l;
        crash.basic.push_back(residual >= 0 ? bv[static_cast<std::size_t>(t)] : iv[static_cast<std::size_t>(t)]);
    }
    const LpSolution sol = solve_lp(lp, &crash);
    if (sol.status != LpStatus::Optimal)
        throw SolverError("deterministic flow program did not solve to optimality");

    std::vector<double> x(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) {
        x[static_cast<std::size_t>(t)] = sol.values[static_cast<std::size_t>(xv[static_cast<std::size_t>(t)])];
        out.inventory[static_cast<std::size_t>(t)] = sol.values[static_cast<std::size_t>(iv[static_cast<std::size_t>(t)])];
        out.backorder[static_cast<std::size_t>(t)] = sol.values[static_cast<std::size_t>(bv[static_cast<std::size_t>(t)])];
    }
    out.plan = ProductionPlan{std::move(x)};
    out.cost = sol.objective;
    return out;
}

}  // namespace lotrob
