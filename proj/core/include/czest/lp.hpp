#pragma once

#include <Eigen/Dense>

namespace czest {

struct LpTolerances
{
    double feas = 1e-8;
    double opt = 1e-8;
    double pivot = 1e-10;
};

/// min cost^T x  s.t.  eq_matrix x = eq_rhs,  lower <= x <= upper
///
/// Bounds may be +-infinity.
struct LpProblem
{
    Eigen::VectorXd cost;
    Eigen::MatrixXd eq_matrix;
    Eigen::VectorXd eq_rhs;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    Eigen::Index num_vars() const { return cost.size(); }
    Eigen::Index num_rows() const { return eq_rhs.size(); }

    /// Throws DimensionError or DomainError on malformed input.
    void validate() const;
};

enum class LpStatus
{
    optimal,
    infeasible,
    unbounded
};

struct LpSolution
{
    LpStatus status = LpStatus::infeasible;
    Eigen::VectorXd x;
    double objective = 0.0;
    /// Row multipliers y with reduced costs cost - eq_matrix^T y (valid when optimal).
    Eigen::VectorXd duals;
    /// Phase-one residual: sum of artificial values at the end of phase one.
    double infeasibility = 0.0;
    int iterations = 0;

    bool optimal() const { return status == LpStatus::optimal; }
};

/// Dense bounded-variable two-phase primal simplex.
LpSolution solve_lp(const LpProblem& p, const LpTolerances& tol = {});

/// Phase one only: returns the minimal residual 1-norm ||eq_matrix x - eq_rhs||_1
/// over the box, with the minimizer in x. Status is optimal when that residual
/// is at most `threshold`.
LpSolution solve_feasibility(const LpProblem& p, double threshold, const LpTolerances& tol = {});

/// Objective of the dual at (duals, reduced costs); equals the primal objective at optimality.
double dual_objective(const LpProblem& p, const Eigen::VectorXd& duals);

const char* to_string(LpStatus s);

} // namespace czest
