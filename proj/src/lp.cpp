#include "lotrob/lp.hpp"

#include "lotrob/model.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace lotrob {

int LinearProgram::add_variable(double c, double lo, double hi) {
    if (!(lo <= hi)) throw ValidationError("variable bounds require lower <= upper");
    cost.push_back(c);
    lower.push_back(lo);
    upper.push_back(hi);
    return static_cast<int>(cost.size()) - 1;
}

void LinearProgram::add_equality(std::vector<std::pair<int, double>> terms, double rhs) {
    for (const auto& [var, coef] : terms) {
        (void)coef;
        if (var < 0 || var >= num_vars())
            throw ValidationError("constraint references an undeclared variable");
    }
    rows.push_back(Row{std::move(terms), rhs});
}

void LinearProgram::dump(std::ostream& os) const {
    os << "min";
    for (int j = 0; j < num_vars(); ++j)
        if (cost[static_cast<std::size_t>(j)] != 0.0)
            os << ' ' << cost[static_cast<std::size_t>(j)] << "*x" << j;
    os << '\n';
    for (const auto& row : rows) {
        bool first = true;
        for (const auto& [var, coef] : row.terms) {
            os << (first ? "" : " ") << coef << "*x" << var;
            first = false;
        }
        os << " = " << row.rhs << '\n';
    }
    os << "bounds\n";
    for (int j = 0; j < num_vars(); ++j)
        os << "x" << j << " in [" << lower[static_cast<std::size_t>(j)] << ", "
           << upper[static_cast<std::size_t>(j)] << "]\n";
}

namespace {

constexpr double kFeasTol = 1e-7;
constexpr double kCostTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr int kRefactorInterval = 128;

enum class VarState : std::uint8_t { Basic, AtLower, AtUpper };

class Simplex {
  public:
    Simplex(const LinearProgram& lp, const LpBasis* warm) : lp_(lp) {
        m_ = lp.num_rows();
        n_real_ = lp.num_vars();
        build_columns();
        if (warm == nullptr || !init_warm(*warm)) init_cold();
    }

    LpSolution run();

  private:
    const LinearProgram& lp_;
    int m_ = 0;
    int n_real_ = 0;
    int n_ = 0;  // real + artificial

    // column-major sparse matrix, artificials included
    std::vector<std::vector<std::pair<int, double>>> cols_;
    std::vector<double> lower_, upper_, cost_;

    std::vector<double> binv_;  // row-major m x m inverse of the basis
    std::vector<int> basic_;    // basic variable per row
    std::vector<VarState> state_;
    std::vector<double> x_;

    int iterations_ = 0;
    int degenerate_streak_ = 0;
    bool bland_ = false;

    double& binv(int i, int k) { return binv_[static_cast<std::size_t>(i) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(k)]; }

    void build_columns() {
        cols_.assign(static_cast<std::size_t>(n_real_), {});
        lower_ = lp_.lower;
        upper_ = lp_.upper;
        cost_ = lp_.cost;
        for (int i = 0; i < m_; ++i)
            for (const auto& [var, coef] : lp_.rows[static_cast<std::size_t>(i)].terms)
                if (coef != 0.0) cols_[static_cast<std::size_t>(var)].emplace_back(i, coef);
        n_ = n_real_;
    }

    double bound_value(int j) const {
        if (state_[static_cast<std::size_t>(j)] == VarState::AtUpper) return upper_[static_cast<std::size_t>(j)];
        if (std::isfinite(lower_[static_cast<std::size_t>(j)])) return lower_[static_cast<std::size_t>(j)];
        if (std::isfinite(upper_[static_cast<std::size_t>(j)])) return upper_[static_cast<std::size_t>(j)];
        return 0.0;
    }

    void init_cold() {
        // one artificial per row, fixed to [0,0]; phase 1 drives the basics
        // back inside their bounds
        basic_.resize(static_cast<std::size_t>(m_));
        state_.assign(static_cast<std::size_t>(n_real_), VarState::AtLower);
        for (int i = 0; i < m_; ++i) {
            cols_.push_back({{i, 1.0}});
            lower_.push_back(0.0);
            upper_.push_back(0.0);
            cost_.push_back(0.0);
            state_.push_back(VarState::Basic);
            basic_[static_cast<std::size_t>(i)] = n_ + i;
        }
        n_ += m_;
        binv_.assign(static_cast<std::size_t>(m_) * static_cast<std::size_t>(m_), 0.0);
        for (int i = 0; i < m_; ++i) binv(i, i) = 1.0;
        recompute_x();
    }

    bool init_warm(const LpBasis& warm) {
        if (static_cast<int>(warm.basic.size()) != m_) return false;
        for (int v : warm.basic)
            if (v < 0 || v >= n_real_) return false;
        std::vector<std::uint8_t> used(static_cast<std::size_t>(n_real_), 0);
        for (int v : warm.basic) {
            if (used[static_cast<std::size_t>(v)]) return false;
            used[static_cast<std::size_t>(v)] = 1;
        }
        basic_ = warm.basic;
        state_.assign(static_cast<std::size_t>(n_real_), VarState::AtLower);
        for (int j = 0; j < n_real_ && j < static_cast<int>(warm.at_upper.size()); ++j)
            if (warm.at_upper[static_cast<std::size_t>(j)] && std::isfinite(upper_[static_cast<std::size_t>(j)]))
                state_[static_cast<std::size_t>(j)] = VarState::AtUpper;
        for (int v : basic_) state_[static_cast<std::size_t>(v)] = VarState::Basic;
        if (!factorize()) return false;
        recompute_x();
        return true;
    }

    // Gauss-Jordan inversion of the current basis matrix. Returns false on
    // numerical singularity.
    bool factorize() {
        std::vector<double> work(static_cast<std::size_t>(m_) * static_cast<std::size_t>(m_), 0.0);
        auto at = [&](int i, int k) -> double& {
            return work[static_cast<std::size_t>(i) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(k)];
        };
        for (int k = 0; k < m_; ++k)
            for (const auto& [row, coef] : cols_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(k)])])
                at(row, k) = coef;
        binv_.assign(static_cast<std::size_t>(m_) * static_cast<std::size_t>(m_), 0.0);
        for (int i = 0; i < m_; ++i) binv(i, i) = 1.0;
        for (int col = 0; col < m_; ++col) {
            int piv = -1;
            double best = 1e-11;
            for (int i = col; i < m_; ++i)
                if (std::fabs(at(i, col)) > best) {
                    best = std::fabs(at(i, col));
                    piv = i;
                }
            if (piv < 0) return false;
            if (piv != col) {
                for (int k = 0; k < m_; ++k) {
                    std::swap(at(piv, k), at(col, k));
                    std::swap(binv(piv, k), binv(col, k));
                }
            }
            const double inv = 1.0 / at(col, col);
            for (int k = 0; k < m_; ++k) {
                at(col, k) *= inv;
                binv(col, k) *= inv;
            }
            for (int i = 0; i < m_; ++i) {
                if (i == col) continue;
                const double f = at(i, col);
                if (f == 0.0) continue;
                for (int k = 0; k < m_; ++k) {
                    at(i, k) -= f * at(col, k);
                    binv(i, k) -= f * binv(col, k);
                }
            }
        }
        return true;
    }

    void recompute_x() {
        x_.assign(static_cast<std::size_t>(n_), 0.0);
        for (int j = 0; j < n_; ++j)
            if (state_[static_cast<std::size_t>(j)] != VarState::Basic) x_[static_cast<std::size_t>(j)] = bound_value(j);
        std::vector<double> r(static_cast<std::size_t>(m_));
        for (int i = 0; i < m_; ++i) r[static_cast<std::size_t>(i)] = lp_.rows[static_cast<std::size_t>(i)].rhs;
        for (int j = 0; j < n_; ++j) {
            if (state_[static_cast<std::size_t>(j)] == VarState::Basic || x_[static_cast<std::size_t>(j)] == 0.0) continue;
            for (const auto& [row, coef] : cols_[static_cast<std::size_t>(j)]) r[static_cast<std::size_t>(row)] -= coef * x_[static_cast<std::size_t>(j)];
        }
        for (int i = 0; i < m_; ++i) {
            double v = 0;
            for (int k = 0; k < m_; ++k) v += binv(i, k) * r[static_cast<std::size_t>(k)];
            x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(i)])] = v;
        }
    }

    double infeasibility() const {
        double sum = 0;
        for (int i = 0; i < m_; ++i) {
            const int v = basic_[static_cast<std::size_t>(i)];
            const double xv = x_[static_cast<std::size_t>(v)];
            if (xv < lower_[static_cast<std::size_t>(v)]) sum += lower_[static_cast<std::size_t>(v)] - xv;
            if (xv > upper_[static_cast<std::size_t>(v)]) sum += xv - upper_[static_cast<std::size_t>(v)];
        }
        return sum;
    }

    // duals for the active phase objective
    std::vector<double> compute_duals(bool phase1) const {
        std::vector<double> y(static_cast<std::size_t>(m_), 0.0);
        for (int i = 0; i < m_; ++i) {
            const int v = basic_[static_cast<std::size_t>(i)];
            double ci;
            if (phase1) {
                const double xv = x_[static_cast<std::size_t>(v)];
                if (xv < lower_[static_cast<std::size_t>(v)] - kFeasTol) ci = -1.0;
                else if (xv > upper_[static_cast<std::size_t>(v)] + kFeasTol) ci = 1.0;
                else ci = 0.0;
            } else {
                ci = cost_[static_cast<std::size_t>(v)];
            }
            if (ci == 0.0) continue;
            const auto* row = &binv_[static_cast<std::size_t>(i) * static_cast<std::size_t>(m_)];
            for (int k = 0; k < m_; ++k) y[static_cast<std::size_t>(k)] += ci * row[k];
        }
        return y;
    }

    struct Entering {
        int var = -1;
        int dir = 0;  // +1 increase, -1 decrease
    };

    Entering choose_entering(const std::vector<double>& y, bool phase1) const {
        Entering best;
        double best_score = bland_ ? 0.0 : kCostTol;
        for (int j = 0; j < n_; ++j) {
            const VarState st = state_[static_cast<std::size_t>(j)];
            if (st == VarState::Basic) continue;
            if (lower_[static_cast<std::size_t>(j)] == upper_[static_cast<std::size_t>(j)]) continue;  // fixed (incl. artificials)
            double rc = phase1 ? 0.0 : cost_[static_cast<std::size_t>(j)];
            for (const auto& [row, coef] : cols_[static_cast<std::size_t>(j)]) rc -= y[static_cast<std::size_t>(row)] * coef;
            int dir = 0;
            double score = 0;
            const bool lower_finite = std::isfinite(lower_[static_cast<std::size_t>(j)]);
            const bool upper_finite = std::isfinite(upper_[static_cast<std::size_t>(j)]);
            if (!lower_finite && !upper_finite) {
                if (rc < -kCostTol) { dir = 1; score = -rc; }
                else if (rc > kCostTol) { dir = -1; score = rc; }
            } else if (st == VarState::AtLower || !upper_finite) {
                if (rc < -kCostTol) { dir = 1; score = -rc; }
            } else {
                if (rc > kCostTol) { dir = -1; score = rc; }
            }
            if (dir == 0) continue;
            if (bland_) return Entering{j, dir};
            if (score > best_score) {
                best_score = score;
                best = Entering{j, dir};
            }
        }
        return best;
    }

    std::vector<double> ftran(int j) const {
        std::vector<double> w(static_cast<std::size_t>(m_), 0.0);
        for (const auto& [row, coef] : cols_[static_cast<std::size_t>(j)])
            for (int i = 0; i < m_; ++i) w[static_cast<std::size_t>(i)] += binv(i, row) * coef;
        return w;
    }

    const double& binv(int i, int k) const {
        return binv_[static_cast<std::size_t>(i) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(k)];
    }

    struct Leaving {
        double theta = kLpInfinity;
        int row = -1;          // -1 with finite theta => bound flip of entering
        double target = 0;     // bound the leaving variable hits
        bool to_upper = false; // leaving variable parks at its upper bound
    };

    // Ratio test. Feasible basics block at the bound they move toward;
    // infeasible basics block at the violated bound they are returning to.
    Leaving ratio_test(const Entering& e, const std::vector<double>& w, bool phase1) const {
        Leaving lv;
        const int j = e.var;
        if (std::isfinite(lower_[static_cast<std::size_t>(j)]) && std::isfinite(upper_[static_cast<std::size_t>(j)]))
            lv.theta = upper_[static_cast<std::size_t>(j)] - lower_[static_cast<std::size_t>(j)];
        for (int i = 0; i < m_; ++i) {
            const double wi = w[static_cast<std::size_t>(i)];
            if (std::fabs(wi) < kPivotTol) continue;
            const int v = basic_[static_cast<std::size_t>(i)];
            const double rate = -static_cast<double>(e.dir) * wi;  // dx_v / dtheta
            const double xv = x_[static_cast<std::size_t>(v)];
            const double lo = lower_[static_cast<std::size_t>(v)];
            const double up = upper_[static_cast<std::size_t>(v)];
            double theta_i = kLpInfinity;
            double target = 0;
            bool to_upper = false;
            if (phase1 && xv < lo - kFeasTol) {
                if (rate > 0) { theta_i = (lo - xv) / rate; target = lo; }
            } else if (phase1 && xv > up + kFeasTol) {
                if (rate < 0) { theta_i = (xv - up) / (-rate); target = up; to_upper = true; }
            } else if (rate < 0) {
                if (std::isfinite(lo)) { theta_i = (xv - lo) / (-rate); target = lo; }
            } else {
                if (std::isfinite(up)) { theta_i = (up - xv) / rate; target = up; to_upper = true; }
            }
            if (theta_i < 0) theta_i = 0;
            if (theta_i < lv.theta - 1e-12 ||
                (theta_i < lv.theta + 1e-12 && lv.row >= 0 &&
                 v < basic_[static_cast<std::size_t>(lv.row)])) {
                lv.theta = theta_i;
                lv.row = i;
                lv.target = target;
                lv.to_upper = to_upper;
            }
        }
        return lv;
    }

    void apply_step(const Entering& e, const Leaving& lv, const std::vector<double>& w) {
        const int j = e.var;
        const double step = static_cast<double>(e.dir) * lv.theta;
        x_[static_cast<std::size_t>(j)] += step;
        for (int i = 0; i < m_; ++i)
            x_[static_cast<std::size_t>(basic_[static_cast<std::size_t>(i)])] -= step * w[static_cast<std::size_t>(i)];
        if (lv.row < 0) {
            // bound flip
            state_[static_cast<std::size_t>(j)] =
                state_[static_cast<std::size_t>(j)] == VarState::AtLower ? VarState::AtUpper : VarState::AtLower;
            x_[static_cast<std::size_t>(j)] = bound_value(j);
            return;
        }
        const int leaving = basic_[static_cast<std::size_t>(lv.row)];
        x_[static_cast<std::size_t>(leaving)] = lv.target;
        state_[static_cast<std::size_t>(leaving)] = lv.to_upper ? VarState::AtUpper : VarState::AtLower;
        state_[static_cast<std::size_t>(j)] = VarState::Basic;
        basic_[static_cast<std::size_t>(lv.row)] = j;
        // product-form update of the inverse
        const double piv = w[static_cast<std::size_t>(lv.row)];
        const double inv = 1.0 / piv;
        double* prow = &binv_[static_cast<std::size_t>(lv.row) * static_cast<std::size_t>(m_)];
        for (int k = 0; k < m_; ++k) prow[k] *= inv;
        for (int i = 0; i < m_; ++i) {
            if (i == lv.row) continue;
            const double f = w[static_cast<std::size_t>(i)];
            if (std::fabs(f) < 1e-14) continue;
            double* row = &binv_[static_cast<std::size_t>(i) * static_cast<std::size_t>(m_)];
            for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
        }
    }

    double objective() const {
        double obj = 0;
        for (int j = 0; j < n_real_; ++j) obj += cost_[static_cast<std::size_t>(j)] * x_[static_cast<std::size_t>(j)];
        return obj;
    }
};

LpSolution Simplex::run() {
    LpSolution sol;
    const long iter_cap = 2000L + 60L * (static_cast<long>(m_) + static_cast<long>(n_));
    bool phase1 = infeasibility() > kFeasTol;
    while (true) {
        if (++iterations_ > iter_cap)
            throw SolverError("simplex iteration cap exceeded (" + std::to_string(iter_cap) + ")");
        if (iterations_ % kRefactorInterval == 0) {
            if (!factorize()) throw SolverError("simplex basis became singular");
            recompute_x();
        }
        if (phase1 && infeasibility() <= kFeasTol) phase1 = false;
        const auto y = compute_duals(phase1);
        const Entering e = choose_entering(y, phase1);
        if (e.var < 0) {
            if (phase1) {
                sol.status = LpStatus::Infeasible;
                return sol;
            }
            break;  // optimal
        }
        const auto w = ftran(e.var);
        const Leaving lv = ratio_test(e, w, phase1);
        if (!std::isfinite(lv.theta)) {
            if (phase1) throw SolverError("phase 1 direction unbounded; numerical trouble");
            sol.status = LpStatus::Unbounded;
            return sol;
        }
        if (lv.theta <= 1e-12) {
            if (++degenerate_streak_ > 2 * m_ + 50) bland_ = true;
        } else {
            degenerate_streak_ = 0;
        }
        apply_step(e, lv, w);
    }
    // clean recompute so reported values satisfy the equalities tightly
    if (!factorize()) throw SolverError("simplex basis became singular at optimum");
    recompute_x();
    if (infeasibility() > 10 * kFeasTol) {
        sol.status = LpStatus::Infeasible;
        return sol;
    }
    sol.status = LpStatus::Optimal;
    sol.values.assign(x_.begin(), x_.begin() + n_real_);
    sol.objective = objective();
    sol.iterations = iterations_;
    sol.basis.basic = basic_;
    sol.basis.at_upper.assign(static_cast<std::size_t>(n_real_), 0);
    for (int j = 0; j < n_real_; ++j)
        if (state_[static_cast<std::size_t>(j)] == VarState::AtUpper) sol.basis.at_upper[static_cast<std::size_t>(j)] = 1;
    return sol;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpBasis* warm) {
    for (int j = 0; j < lp.num_vars(); ++j)
        if (!(lp.lower[static_cast<std::size_t>(j)] <= lp.upper[static_cast<std::size_t>(j)]))
            throw ValidationError("variable bounds require lower <= upper");
    if (warm != nullptr) {
        try {
            Simplex s(lp, warm);
            return s.run();
        } catch (const SolverError&) {
            // fall through to a cold start
        }
    }
    Simplex s(lp, nullptr);
    return s.run();
}

}  // namespace lotrob
