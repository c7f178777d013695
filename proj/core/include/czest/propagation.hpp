#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "czest/constrained_zonotope.hpp"
#include "czest/interval.hpp"
#include "czest/model.hpp"
#include "czest/reduction.hpp"

namespace czest {

/// Rules for picking the expansion point h.
enum class HStrategy
{
    C1, ///< interval-hull midpoint, which must be a member
    C2, ///< LP minimizing the width of the CZ-inclusion remainder
    C3, ///< member closest (1-norm) to the representation center
    C4, ///< move the representation center to a member point
};

const char* to_string(HStrategy s);
/// Parses "C1".."C4" (case-insensitive). Throws Error otherwise.
HStrategy parse_h_strategy(const std::string& s);

/**
 * Encloses {J x : J in Jset, x in X}. The result is mid(J) X plus an axis
 * aligned box; it has n_g + n generators and n_c constraints.
 */
ConstrainedZonotope cz_inclusion(const IntervalMatrix& J, const ConstrainedZonotope& X);

/// Same, given the fully eliminated form (M_bar, p_bar) of X.
ConstrainedZonotope cz_inclusion(const IntervalMatrix& J, const ConstrainedZonotope& X, const Eigen::MatrixXd& M_bar,
                                 const Eigen::VectorXd& p_bar);

/// Throws StrategyError when the hull midpoint is not in X.
Eigen::VectorXd select_h_C1(const ConstrainedZonotope& X);

/// `trail` is the full elimination of X; computed here when null.
Eigen::VectorXd select_h_C2(const ConstrainedZonotope& X, const IntervalMatrix& J,
                            const EliminationTrail* trail = nullptr);

Eigen::VectorXd select_h_C3(const ConstrainedZonotope& X);

struct CenteredSet
{
    Eigen::VectorXd h;
    ConstrainedZonotope X;
    bool recentred = false;
};

CenteredSet select_h_C4(const ConstrainedZonotope& X);

/// What a propagation step actually did.
struct PropagationInfo
{
    HStrategy strategy = HStrategy::C2;
    Eigen::VectorXd h;
    bool recentred = false;
    std::vector<std::string> warnings;
};

/// f(X, u, W) enclosed by the mean value form around h.
ConstrainedZonotope mean_value_extension(const NonlinearModel& model, const ConstrainedZonotope& X,
                                         const ConstrainedZonotope& W, const Eigen::VectorXd& u, HStrategy strategy,
                                         PropagationInfo* info = nullptr);

/**
 * f(X, u, W) enclosed by the first-order Taylor form with interval Hessians,
 * expanded over X x W. With `split_affine_w`, a model whose disturbance
 * enters as beta(x) + B_w w with constant B_w is expanded over X alone and
 * B_w W is added exactly; other models ignore the flag.
 */
ConstrainedZonotope first_order_taylor_extension(const NonlinearModel& model, const ConstrainedZonotope& X,
                                                 const ConstrainedZonotope& W, const Eigen::VectorXd& u,
                                                 HStrategy strategy, PropagationInfo* info = nullptr,
                                                 bool split_affine_w = false);

/// Generator and constraint counts of the first-order Taylor output.
struct SizeCount
{
    Eigen::Index generators = 0;
    Eigen::Index constraints = 0;
};

SizeCount first_order_output_size(Eigen::Index n, Eigen::Index m_g, Eigen::Index m_c);

} // namespace czest
