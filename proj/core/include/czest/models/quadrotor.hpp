#pragma once

#include "czest/model.hpp"

namespace czest::models {

struct QuadrotorParams
{
    double mass = 0.7;
    double arm = 0.3;
    double Ixx = 1.2416;
    double Iyy = 1.2416;
    double Izz = 1.2416;
    double gravity = 9.81;
    double Ts = 0.01;
};

/**
 * Euler-discretized rigid-body quadrotor.
 *
 * State [x y z u v w phi theta psi p q r] (inertial position and velocity,
 * Z-Y-X Euler angles, body rates), input [U1 U2 U3 U4] (total thrust and
 * the three torques), disturbance [Dx Dy Dz] (forces on the inertial axes).
 * Enclosures require |theta| < pi/2 on the input box.
 */
class Quadrotor final : public NonlinearModel
{
public:
    explicit Quadrotor(QuadrotorParams p = {}) : p_(p) {}

    const QuadrotorParams& params() const { return p_; }

    Eigen::Index n() const override { return 12; }
    Eigen::Index n_w() const override { return 3; }
    Eigen::Index n_u() const override { return 4; }

    Eigen::VectorXd eval(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& w) const override;
    IntervalMatrix jacobian_x(const IntervalVector& X, const Eigen::VectorXd& u, const IntervalVector& W) const override;
    IntervalMatrix jacobian_w(const IntervalVector& X, const Eigen::VectorXd& u, const IntervalVector& W) const override;
    std::vector<IntervalMatrix> hessians(const IntervalVector& Z, const Eigen::VectorXd& u) const override;

    bool affine_in_w() const override { return true; }

    /// Continuous-time vector field.
    Eigen::VectorXd derivative(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& w) const;

private:
    QuadrotorParams p_;
};

} // namespace czest::models
