#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "czest/constrained_zonotope.hpp"

namespace czest {

/// Box enclosing B_inf(A, b) = {xi in [-1,1]^ng : A xi = b}.
struct GeneratorBounds
{
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;
    bool empty = false;
    int sweeps = 0;
};

/// Interval constraint propagation over the rows of A xi = b, to a fixpoint
/// or at most 100 sweeps. Results are widened for floating-point error, so
/// they always enclose the exact constraint set.
GeneratorBounds tighten_generator_bounds(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

/// One elimination level: the set before rescaling had generators G_bar; the
/// rescaling offset was xi_m; the absorbed column contributed lambda_g * b_tilde.
struct EliminationLevel
{
    Eigen::MatrixXd G_bar;
    Eigen::VectorXd xi_m;
    /// n x n_c, nonzero only in the eliminated row's column.
    Eigen::MatrixXd Lambda_G;
    Eigen::VectorXd b_tilde;
    Eigen::Index row = 0;
    Eigen::Index column = 0;
};

struct EliminationTrail
{
    std::vector<EliminationLevel> levels;
    /// Final (zonotope when all constraints are removed) generators and center.
    Eigen::MatrixXd G0;
    Eigen::VectorXd c0;
    /// Sum over levels of G_bar xi_m + Lambda_G b_tilde; c0 = c + offset.
    Eigen::VectorXd offset;
    /// Constraint rows dropped as redundant (numerically zero) rather than eliminated.
    std::size_t dropped_rows = 0;
    /// Set when propagation proved the constraint set empty.
    bool empty = false;
};

/// Removes k constraints (and one generator per constraint) from Z, producing
/// an enclosure. When `record` is false the per-level matrices are not kept.
ConstrainedZonotope eliminate_constraints(const ConstrainedZonotope& Z, Eigen::Index k, EliminationTrail* trail = nullptr,
                                          bool record = true);

/// Enclosing zonotope obtained by eliminating every constraint.
ConstrainedZonotope to_zonotope(const ConstrainedZonotope& Z, EliminationTrail* trail = nullptr);

/**
 * Enclosure with at most `target` generators. Requires target >= n + n_c.
 * Zonotopes keep their largest columns by norm and box the rest. With
 * constraints, the surplus columns of the lifted matrix [G; A] are merged
 * into a basis of n + n_c kept columns, which are scaled to absorb them.
 */
ConstrainedZonotope reduce_generators(const ConstrainedZonotope& Z, Eigen::Index target);

struct ReductionConfig
{
    Eigen::Index max_generators = 20;
    Eigen::Index max_constraints = 5;
};

/// Constraints first, then generators.
ConstrainedZonotope reduce(const ConstrainedZonotope& Z, const ReductionConfig& cfg);

} // namespace czest
