#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "lotrob/deterministic.hpp"
#include "lotrob/evaluation.hpp"
#include "lotrob/robust.hpp"

#include <functional>

using namespace lotrob;
using lotrob::testing::brute_force_worst;
using lotrob::testing::random_interval_instance;

namespace {

Instance interval_fixture(bool capacitated = true) {
    Instance inst;
    inst.periods = 5;
    inst.inv_cost = {1, 1, 1, 1, 1};
    inst.back_cost = {5, 5, 5, 5, 5};
    if (capacitated) inst.capacity = Capacity{{40, 30, 30, 10, 10}, {50, 40, 40, 35, 35}};
    inst.demands = DemandModel::interval_demands({30, 5, 10, 20, 20}, {45, 15, 30, 40, 40});
    return inst;
}

// Minimum over an integer plan grid of the exhaustive worst case; exact
// upper bound on the min-max optimum for integer instances.
double grid_minmax(const Instance& inst) {
    const int T = inst.periods;
    std::vector<double> x(static_cast<std::size_t>(T));
    double best = std::numeric_limits<double>::infinity();
    const std::function<void(int)> sweep = [&](int t) {
        if (t == T) {
            best = std::min(best, brute_force_worst(ProductionPlan{x}, inst).second);
            return;
        }
        const int lo = static_cast<int>(inst.capacity->lower[static_cast<std::size_t>(t)]);
        const int hi = static_cast<int>(inst.capacity->upper[static_cast<std::size_t>(t)]);
        for (int v = lo; v <= hi; ++v) {
            x[static_cast<std::size_t>(t)] = v;
            sweep(t + 1);
        }
    };
    sweep(0);
    return best;
}

}  // namespace

TEST_CASE("closed form reproduces the uncapacitated published optimum") {
    const RobustSolution sol = solve_uncapacitated(interval_fixture(false));
    CHECK(sol.upper_bound == doctest::Approx(195.8333).epsilon(1e-4));
    CHECK(sol.converged);
    CHECK(sol.plan.values[0] == doctest::Approx(42.5));
    CHECK(sol.plan.values[1] == doctest::Approx(40.0 / 3));

    // Both extreme scenarios attain the same cost ...
    const Instance inst = interval_fixture(false);
    auto [s_lo, s_hi] = scenario_bounds(inst);
    const double f_lo = total_cost(sol.plan, s_lo, inst);
    const double f_hi = total_cost(sol.plan, s_hi, inst);
    CHECK(f_lo == doctest::Approx(f_hi).epsilon(1e-9));
    CHECK(f_hi == doctest::Approx(sol.upper_bound).epsilon(1e-9));

    // ... because each period splits its interval at the cost ratio.
    const auto cx = cumulative(sol.plan.values);
    const auto clo = cumulative(s_lo.values);
    const auto chi = cumulative(s_hi.values);
    for (int t = 0; t < 5; ++t) {
        const double left = 1.0 * (cx[static_cast<std::size_t>(t)] - clo[static_cast<std::size_t>(t)]);
        const double right = 5.0 * (chi[static_cast<std::size_t>(t)] - cx[static_cast<std::size_t>(t)]);
        CHECK(left == doctest::Approx(right).epsilon(1e-9));
    }

    // The DP agrees with the closed form on the worst case.
    CHECK(worst_case_scenario(sol.plan, inst).second ==
          doctest::Approx(sol.upper_bound).epsilon(1e-9));
}

TEST_CASE("closed form rejects instances outside its scope") {
    CHECK_THROWS_AS(solve_uncapacitated(interval_fixture(true)), ModelMismatchError);
    Instance varying = interval_fixture(false);
    varying.inv_cost[3] = 2;
    CHECK_THROWS_AS(solve_uncapacitated(varying), ModelMismatchError);
}

TEST_CASE("cut method reproduces the capacitated published optimum") {
    const RobustSolution sol = solve_capacitated(interval_fixture());
    CHECK(sol.converged);
    CHECK(sol.upper_bound == doctest::Approx(215.833).epsilon(3e-4));
    CHECK(sol.worst_scenario == Scenario{{30, 5, 10, 20, 20}});
    CHECK(plan_feasible(sol.plan, interval_fixture()));
    // The reported bound is the plan's actual worst case.
    CHECK(worst_case_scenario(sol.plan, interval_fixture()).second ==
          doctest::Approx(sol.upper_bound).epsilon(1e-9));
    // Relative gap closed.
    CHECK(sol.upper_bound - sol.lower_bound <= 1e-4 * std::max(1.0, sol.lower_bound) + 1e-12);
}

TEST_CASE("lower bounds are nondecreasing across iterations") {
    SplitMix64 rng(7);
    for (int rep = 0; rep < 25; ++rep) {
        const Instance inst = random_interval_instance(rng, rng.uniform_int(2, 8), true);
        const RobustSolution sol = solve_capacitated(inst);
        CHECK(sol.converged);
        for (std::size_t i = 1; i < sol.trace.size(); ++i) {
            CHECK(sol.trace[i].lower_bound >= sol.trace[i - 1].lower_bound - 1e-9);
            CHECK(sol.trace[i].upper_bound <= sol.trace[i - 1].upper_bound + 1e-9);
        }
        CHECK(sol.lower_bound <= sol.upper_bound + 1e-9);
        CHECK(sol.iterations == static_cast<int>(sol.trace.size()));
    }
}

TEST_CASE("cut method matches exhaustive plan-grid search on tiny instances") {
    SplitMix64 rng(29);
    for (int rep = 0; rep < 15; ++rep) {
        const int T = rng.uniform_int(2, 3);
        Instance inst = random_interval_instance(rng, T, false, 8);
        Capacity cap;
        for (int t = 0; t < T; ++t) {
            const int l = rng.uniform_int(0, 3);
            cap.lower.push_back(l);
            cap.upper.push_back(l + rng.uniform_int(1, 5));
        }
        inst.capacity = std::move(cap);
        const RobustSolution sol = solve_capacitated(inst);
        const double grid = grid_minmax(inst);
        // The grid only contains integer plans, so it upper-bounds the true
        // optimum; the relaxation bound sandwiches from below.
        CHECK(sol.lower_bound <= grid + 1e-6);
        CHECK(sol.upper_bound <= grid + 1e-4 * std::max(1.0, grid) + 1e-9);
    }
}

TEST_CASE("custom initial plans are honored and validated") {
    const Instance inst = interval_fixture();
    RobustOptions opts;
    opts.initial_plan = ProductionPlan{{50, 40, 40, 35, 35}};
    const RobustSolution sol = solve_capacitated(inst, opts);
    CHECK(sol.converged);
    CHECK(sol.upper_bound == doctest::Approx(215.833).epsilon(3e-4));

    RobustOptions bad;
    bad.initial_plan = ProductionPlan{{1, 1, 1, 1, 1}};
    CHECK_THROWS_AS(solve_capacitated(inst, bad), ValidationError);
}

TEST_CASE("front door routes by instance shape") {
    // Closed form branch.
    const RobustSolution closed = solve_robust(interval_fixture(false));
    CHECK(closed.upper_bound == doctest::Approx(195.8333).epsilon(1e-4));
    CHECK(closed.iterations == 0);

    // Capacitated branch.
    const RobustSolution cut = solve_robust(interval_fixture());
    CHECK(cut.upper_bound == doctest::Approx(215.833).epsilon(3e-4));

    // Uncapacitated with varying costs: boxed cut method; the box must not
    // bind, so the result cannot exceed any follow-demand policy's worst.
    Instance varying = interval_fixture(false);
    varying.inv_cost = {2, 1, 3, 1, 2};
    varying.back_cost = {5, 9, 5, 7, 5};
    const RobustSolution boxed = solve_robust(varying);
    CHECK(boxed.converged);
    const ProductionPlan follow{{45, 15, 30, 40, 40}};
    CHECK(boxed.upper_bound <=
          worst_case_scenario(follow, varying).second + 1e-6);

    // Crisp demands degenerate to the deterministic optimum.
    Instance crisp = interval_fixture();
    crisp.demands = DemandModel::crisp_demands({37.5, 10, 20, 30, 30});
    const RobustSolution det = solve_robust(crisp);
    CHECK(det.upper_bound == doctest::Approx(70));
}

TEST_CASE("initial conditions are absorbed before solving") {
    SplitMix64 rng(57);
    for (int rep = 0; rep < 12; ++rep) {
        Instance inst = random_interval_instance(rng, 4, true);
        inst.initial_inventory = rng.uniform_int(0, 25);
        const RobustSolution sol = solve_robust(inst);
        CHECK(sol.converged);
        CHECK(sol.plan.size() == 4);
        CHECK(plan_feasible(sol.plan, inst));
        // Reported bound matches an independent evaluation through the
        // same normalization.
        auto [ni, np] = normalize_with_plan(inst, sol.plan);
        CHECK(worst_case_scenario(np, ni).second ==
              doctest::Approx(sol.upper_bound).epsilon(1e-9));
    }
}

TEST_CASE("uncapacitated initial backorder shifts into the first demand") {
    Instance inst = interval_fixture(false);
    inst.initial_backorder = 5;
    const RobustSolution sol = solve_robust(inst);
    CHECK(sol.converged);
    Instance shifted = interval_fixture(false);
    shifted.demands.lo[0] += 5;
    shifted.demands.hi[0] += 5;
    CHECK(sol.upper_bound ==
          doctest::Approx(solve_robust(shifted).upper_bound).epsilon(1e-9));
}

TEST_CASE("option validation") {
    RobustOptions opts;
    opts.epsilon = 0;
    CHECK_THROWS_AS(solve_capacitated(interval_fixture(), opts), ValidationError);
    opts.epsilon = 1e-4;
    opts.max_iterations = 0;
    CHECK_THROWS_AS(solve_capacitated(interval_fixture(), opts), ValidationError);
}
