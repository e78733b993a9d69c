#pragma once

#include "lotrob/model.hpp"

namespace lotrob {

/// Optimal plan for a fixed demand scenario together with the per-period
/// inventory and backorder trajectories of the flow model.
struct DeterministicSolution {
    ProductionPlan plan;
    std::vector<double> inventory;   // I_t
    std::vector<double> backorder;   // B_t
    double cost = 0;
};

/// Solves the crisp lot-sizing problem for the given scenario. Without
/// capacity limits the optimal plan follows the demand directly; with
/// capacity limits the flow formulation is solved as a linear program.
/// Nonzero initial conditions enter the flow balance as the net position
/// I_0 - B_0.
DeterministicSolution solve_deterministic(const Instance& inst, const Scenario& scenario);

}  // namespace lotrob
