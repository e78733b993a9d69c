#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <utility>
#include <vector>

namespace lotrob {

constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

/// Minimize c'x subject to A x = b and l <= x <= u (u may be +infinity).
/// Rows are sparse; inequality rows are modeled by the caller with explicit
/// slack variables.
struct LinearProgram {
    std::vector<double> cost;
    std::vector<double> lower;
    std::vector<double> upper;
    struct Row {
        std::vector<std::pair<int, double>> terms;
        double rhs = 0;
    };
    std::vector<Row> rows;

    int add_variable(double c, double lo, double hi);
    void add_equality(std::vector<std::pair<int, double>> terms, double rhs);
    int num_vars() const { return static_cast<int>(cost.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }

    /// Line-oriented debug dump (objective, one constraint per line, bounds).
    void dump(std::ostream& os) const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// A simplex basis: one basic variable per row plus the nonbasic-at-upper
/// flags. Returned with every optimal solution so callers can warm-start
/// an extended program.
struct LpBasis {
    std::vector<int> basic;
    std::vector<std::uint8_t> at_upper;  // indexed by variable
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> values;
    double objective = 0;
    LpBasis basis;
    int iterations = 0;
};

/// Solves the program with a bounded-variable revised simplex
/// (deterministic pivoting, Bland's rule as the anti-cycling fallback).
/// A warm basis may reference only existing variables; hinted bases that
/// are singular or badly infeasible fall back to a cold start.
LpSolution solve_lp(const LinearProgram& lp, const LpBasis* warm = nullptr);

}  // namespace lotrob
