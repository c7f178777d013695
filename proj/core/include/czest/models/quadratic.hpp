#pragma once

#include <vector>

#include "czest/model.hpp"

namespace czest::models {

/**
 * f_q(z) = a_q + B_q z + z^T H_q z over z = (x, w), with H_q upper
 * triangular. u is ignored. A zero H gives an affine map.
 */
class Quadratic final : public NonlinearModel
{
public:
    Quadratic(Eigen::VectorXd a, Eigen::MatrixXd B, std::vector<Eigen::MatrixXd> H, Eigen::Index n_w);

    /// x+ = A x + Bw w.
    static Quadratic affine(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Bw);

    Eigen::Index n() const override { return a_.size(); }
    Eigen::Index n_w() const override { return n_w_; }
    Eigen::Index n_u() const override { return 0; }

    Eigen::VectorXd eval(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& w) const override;
    IntervalMatrix jacobian_x(const IntervalVector& X, const Eigen::VectorXd& u, const IntervalVector& W) const override;
    IntervalMatrix jacobian_w(const IntervalVector& X, const Eigen::VectorXd& u, const IntervalVector& W) const override;
    std::vector<IntervalMatrix> hessians(const IntervalVector& Z, const Eigen::VectorXd& u) const override;

    bool affine_in_w() const override { return affine_w_; }

private:
    IntervalMatrix jacobian(const IntervalVector& Z) const;

    Eigen::VectorXd a_;
    Eigen::MatrixXd B_;
    std::vector<Eigen::MatrixXd> H_;
    Eigen::Index n_w_;
    bool affine_w_ = true;
};

} // namespace czest::models
