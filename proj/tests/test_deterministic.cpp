#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "lotrob/deterministic.hpp"

#include <cmath>

using namespace lotrob;
using lotrob::testing::random_interval_instance;

namespace {

Instance interval_fixture() {
    Instance inst;
    inst.periods = 5;
    inst.inv_cost = {1, 1, 1, 1, 1};
    inst.back_cost = {5, 5, 5, 5, 5};
    inst.capacity = Capacity{{40, 30, 30, 10, 10}, {50, 40, 40, 35, 35}};
    inst.demands = DemandModel::interval_demands({30, 5, 10, 20, 20}, {45, 15, 30, 40, 40});
    return inst;
}

// Grid search over integer plans inside the capacity box.
double grid_optimum(const Instance& inst, const Scenario& s) {
    const int T = inst.periods;
    std::vector<int> lo(static_cast<std::size_t>(T)), hi(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) {
        lo[static_cast<std::size_t>(t)] =
            static_cast<int>(inst.capacity->lower[static_cast<std::size_t>(t)]);
        hi[static_cast<std::size_t>(t)] =
            static_cast<int>(inst.capacity->upper[static_cast<std::size_t>(t)]);
    }
    std::vector<double> x(static_cast<std::size_t>(T));
    double best = std::numeric_limits<double>::infinity();
    const std::function<void(int)> sweep = [&](int t) {
        if (t == T) {
            best = std::min(best, total_cost(ProductionPlan{x}, s, inst));
            return;
        }
        for (int v = lo[static_cast<std::size_t>(t)]; v <= hi[static_cast<std::size_t>(t)]; ++v) {
            x[static_cast<std::size_t>(t)] = v;
            sweep(t + 1);
        }
    };
    sweep(0);
    return best;
}

}  // namespace

TEST_CASE("midpoint and extreme scenarios reproduce the published plans") {
    const Instance inst = interval_fixture();

    const DeterministicSolution mid = solve_deterministic(inst, Scenario{{37.5, 10, 20, 30, 30}});
    CHECK(mid.cost == doctest::Approx(70));
    CHECK(mid.plan == ProductionPlan{{40, 30, 30, 10, 17.5}});

    const DeterministicSolution up = solve_deterministic(inst, Scenario{{45, 15, 30, 40, 40}});
    CHECK(up.cost == doctest::Approx(35));

    const DeterministicSolution down = solve_deterministic(inst, Scenario{{30, 5, 10, 20, 20}});
    CHECK(down.cost == doctest::Approx(180));
}

TEST_CASE("uncapacitated plans follow the demand") {
    Instance inst = interval_fixture();
    inst.capacity.reset();
    const Scenario s{{30, 5, 10, 20, 20}};
    const DeterministicSolution sol = solve_deterministic(inst, s);
    CHECK(sol.cost == doctest::Approx(0));
    CHECK(sol.plan == ProductionPlan{{30, 5, 10, 20, 20}});
}

TEST_CASE("initial inventory reduces early production") {
    Instance inst = interval_fixture();
    inst.capacity.reset();
    inst.initial_inventory = 40;
    const Scenario s{{30, 5, 10, 20, 20}};
    const DeterministicSolution sol = solve_deterministic(inst, s);
    // Cumulative production tracks max(D_t - I_0, 0); the surplus of I_0
    // over the first two cumulative demands is carried at cost 10 + 5.
    CHECK(sol.cost == doctest::Approx(15));
    CHECK(sol.plan == ProductionPlan{{0, 0, 5, 20, 20}});

    inst.initial_inventory = 0;
    inst.initial_backorder = 10;
    const DeterministicSolution back = solve_deterministic(inst, s);
    CHECK(back.cost == doctest::Approx(0));
    CHECK(back.plan == ProductionPlan{{40, 5, 10, 20, 20}});
}

TEST_CASE("capacitated optimum matches integer grid search") {
    SplitMix64 rng(101);
    for (int rep = 0; rep < 40; ++rep) {
        const int T = rng.uniform_int(2, 4);
        Instance inst = random_interval_instance(rng, T, false, 10);
        Capacity cap;
        for (int t = 0; t < T; ++t) {
            const int l = rng.uniform_int(0, 4);
            cap.lower.push_back(l);
            cap.upper.push_back(l + rng.uniform_int(0, 5));
        }
        inst.capacity = std::move(cap);
        const Scenario s{inst.demands.lo};
        const DeterministicSolution sol = solve_deterministic(inst, s);
        // Integral demands and capacities admit an integral optimum, so the
        // grid optimum is the exact optimum.
        CHECK(sol.cost == doctest::Approx(grid_optimum(inst, s)).epsilon(1e-7));
        CHECK(plan_feasible(sol.plan, inst));
        CHECK(sol.cost == doctest::Approx(total_cost(sol.plan, s, inst)).epsilon(1e-7));
    }
}

TEST_CASE("trajectories are consistent with the plan") {
    const Instance inst = interval_fixture();
    const Scenario s{{37.5, 10, 20, 30, 30}};
    const DeterministicSolution sol = solve_deterministic(inst, s);
    const auto cx = cumulative(sol.plan.values);
    const auto cd = cumulative(s.values);
    for (int t = 0; t < inst.periods; ++t) {
        const double pos = cx[static_cast<std::size_t>(t)] - cd[static_cast<std::size_t>(t)];
        CHECK(sol.inventory[static_cast<std::size_t>(t)] -
                  sol.backorder[static_cast<std::size_t>(t)] == doctest::Approx(pos).epsilon(1e-7));
        CHECK(sol.inventory[static_cast<std::size_t>(t)] >= -1e-9);
        CHECK(sol.backorder[static_cast<std::size_t>(t)] >= -1e-9);
    }
}

TEST_CASE("input validation") {
    const Instance inst = interval_fixture();
    CHECK_THROWS_AS(solve_deterministic(inst, Scenario{{1, 2}}), ValidationError);
    CHECK_THROWS_AS(solve_deterministic(inst, Scenario{{1, 2, 3, -4, 5}}), ValidationError);
}
