#include "czest/model.hpp"

#include "czest/error.hpp"

namespace czest {

Eigen::VectorXd NonlinearModel::beta(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const
{
    if (!affine_in_w())
        throw Error("beta: model is not affine in w");
    return eval(x, u, Eigen::VectorXd::Zero(n_w()));
}

Eigen::MatrixXd NonlinearModel::B_w(const Eigen::VectorXd& x, const Eigen::VectorXd& u) const
{
    if (!affine_in_w())
        throw Error("B_w: model is not affine in w");
    return jacobian_w_at(x, u, Eigen::VectorXd::Zero(n_w()));
}

Eigen::MatrixXd NonlinearModel::jacobian_x_at(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                              const Eigen::VectorXd& w) const
{
    return jacobian_x(IntervalVector::from_point(x), u, IntervalVector::from_point(w)).mid();
}

Eigen::MatrixXd NonlinearModel::jacobian_w_at(const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                                              const Eigen::VectorXd& w) const
{
    return jacobian_w(IntervalVector::from_point(x), u, IntervalVector::from_point(w)).mid();
}

} // namespace czest
