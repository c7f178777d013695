#pragma once

#include <vector>

#include <Eigen/Dense>

#include "czest/interval.hpp"

namespace czest {

/**
 * Discrete-time dynamics x+ = f(x, u, w) with interval derivative enclosures.
 *
 * Hessians use the half convention over z = (x, w): entry (i, i) holds half
 * of d2f/dz_i^2, entry (i, j) with i < j holds d2f/dz_i dz_j, and the lower
 * triangle is zero.
 */
class NonlinearModel
{
public:
    virtual ~NonlinearModel() = default;

    virtual Eigen::Index n() const = 0;
    virtual Eigen::Index n_w() const = 0;
    virtual Eigen::Index n_u() const = 0;

    virtual Eigen::VectorXd eval(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& w) const = 0;

    /// Encloses df/dx over x in X, w in W.
    virtual IntervalMatrix jacobian_x(const IntervalVector& X, const Eigen::VectorXd& u,
                                      const IntervalVector& W) const = 0;

    /// Encloses df/dw over x in X, w in W.
    virtual IntervalMatrix jacobian_w(const IntervalVector& X, const Eigen::VectorXd& u,
                                      const IntervalVector& W) const = 0;

    /// One (n + n_w) square half-Hessian enclosure per output, over the box Z = X x W.
    virtual std::vector<IntervalMatrix> hessians(const IntervalVector& Z, const Eigen::VectorXd& u) const = 0;

    /// When true, f(x, u, w) = beta(x, u) + B_w(x, u) w.
    virtual bool affine_in_w() const { return false; }
    virtual Eigen::VectorXd beta(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const;
    virtual Eigen::MatrixXd B_w(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const;

    /// Point derivatives, from degenerate-box enclosures.
    Eigen::MatrixXd jacobian_x_at(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& w) const;
    Eigen::MatrixXd jacobian_w_at(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& w) const;
};

} // namespace czest
