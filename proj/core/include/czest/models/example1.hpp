#pragma once

#include "czest/model.hpp"

namespace czest::models {

/**
 * Two-state predator-prey style map with additive process noise:
 *
 *   x1+ = 3 x1 - x1^2 / 7 - 4 x1 x2 / (4 + x1) + w1
 *   x2+ = -2 x2 + 3 x1 x2 / (4 + x1) + w2
 *
 * Enclosures require 4 + x1 > 0 on the input box.
 */
class Example1 final : public NonlinearModel
{
public:
    Eigen::Index n() const override { return 2; }
    Eigen::Index n_w() const override { return 2; }
    Eigen::Index n_u() const override { return 0; }

    Eigen::VectorXd eval(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& w) const override;
    IntervalMatrix jacobian_x(const IntervalVector& X, const Eigen::VectorXd& u, const IntervalVector& W) const override;
    IntervalMatrix jacobian_w(const IntervalVector& X, const Eigen::VectorXd& u, const IntervalVector& W) const override;
    std::vector<IntervalMatrix> hessians(const IntervalVector& Z, const Eigen::VectorXd& u) const override;

    bool affine_in_w() const override { return true; }
};

} // namespace czest::models
