#include <algorithm>
#include <cmath>
#include <numbers>

#include "czest/models/quadrotor.hpp"
#include "czest/rng.hpp"
#include "scenarios.hpp"

namespace czest::scenarios {

namespace {

constexpr std::uint64_t kMeasurementChannel = 2;

// measured states: x y z phi theta psi p q r
constexpr int kMeasured[] = {0, 1, 2, 6, 7, 8, 9, 10, 11};

Eigen::VectorXd noise_bounds()
{
    Eigen::VectorXd v(9);
    v << 0.15, 0.15, 0.51, 2.618e-3, 2.618e-3, 2.618e-3, 16.558e-3, 16.558e-3, 16.558e-3;
    return v;
}

} // namespace

HelixPoint helix(double t)
{
    HelixPoint h;
    h.p = {0.5 * std::cos(t / 2), 0.5 * std::sin(t / 2), 1.0 + t / 10};
    h.v = {-0.25 * std::sin(t / 2), 0.25 * std::cos(t / 2), 0.1};
    h.a = {-0.125 * std::cos(t / 2), -0.125 * std::sin(t / 2), 0.0};
    return h;
}

Eigen::Vector3d quadrotor_disturbance(double t)
{
    // small offsets keep k * Ts from landing a step early at the window edges
    return {t >= 5.0 - 1e-9 && t < 15.0 - 1e-9 ? 1.0 : 0.0, t >= 8.0 - 1e-9 && t < 15.0 - 1e-9 ? 1.0 : 0.0,
            t >= 10.0 - 1e-9 && t < 15.0 - 1e-9 ? 1.0 : 0.0};
}

Eigen::VectorXd quadrotor_control(const Eigen::VectorXd& x, double t, const QuadrotorControl& c)
{
    const models::QuadrotorParams prm;
    const HelixPoint ref = helix(t);
    const double psi_ref = std::numbers::pi / 3;

    // outer loop: desired inertial acceleration
    Eigen::Vector3d acc;
    for (int i = 0; i < 3; ++i)
    {
        const double kp = i < 2 ? c.kp_xy : c.kp_z;
        const double kd = i < 2 ? c.kd_xy : c.kd_z;
        acc(i) = ref.a(i) + kp * (ref.p(i) - x(i)) + kd * (ref.v(i) - x(3 + i));
    }
    const double phi = x(6), theta = x(7), psi = x(8);
    const double tilt = std::max(std::cos(phi) * std::cos(theta), 0.5);
    const double thrust = std::clamp(prm.mass * (prm.gravity + acc(2)) / tilt, 0.0, 4.0 * prm.mass * prm.gravity);

    // small-angle inversion of the translational dynamics
    const double sp = std::sin(psi), cp = std::cos(psi);
    const double theta_d = std::clamp((acc(0) * cp + acc(1) * sp) / prm.gravity, -c.max_tilt, c.max_tilt);
    const double phi_d = std::clamp((acc(0) * sp - acc(1) * cp) / prm.gravity, -c.max_tilt, c.max_tilt);

    // inner loop: PD on the angles with the body rates as damping
    Eigen::VectorXd u(4);
    u(0) = thrust;
    u(1) = prm.Ixx / prm.arm * (c.kp_att * (phi_d - phi) - c.kd_att * x(9));
    u(2) = prm.Iyy / prm.arm * (c.kp_att * (theta_d - theta) - c.kd_att * x(10));
    u(3) = prm.Izz * (c.kp_yaw * (psi_ref - psi) - c.kd_yaw * x(11));
    return u;
}

Problem quadrotor_problem(std::uint64_t seed, std::size_t steps, const QuadrotorControl& control)
{
    Problem p;
    auto model = std::make_shared<models::Quadrotor>();
    const double Ts = model->params().Ts;
    p.model = model;
    p.steps = steps;

    Eigen::VectorXd g0(12);
    const double pi = std::numbers::pi;
    g0 << 2, 2, 2, 1, 1, 1, pi / 6, pi / 6, pi / 2, pi / 12, pi / 12, pi / 12;
    p.X0 = ConstrainedZonotope::zonotope(g0.asDiagonal(), Eigen::VectorXd::Zero(12));
    p.W = ConstrainedZonotope::ball_inf(Eigen::Vector3d::Zero(), 1.0);

    const Eigen::VectorXd bounds = noise_bounds();
    p.meas.C = Eigen::MatrixXd::Zero(9, 12);
    for (int i = 0; i < 9; ++i)
        p.meas.C(i, kMeasured[i]) = 1.0;
    p.meas.D_v = Eigen::MatrixXd::Identity(9, 9);
    p.meas.V = ConstrainedZonotope::box(-bounds, bounds);

    Trajectory& t = p.truth;
    t.x.resize(steps + 1);
    t.u.resize(steps + 1);
    t.y.resize(steps + 1);
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(12);
    x0(0) = 0.5;
    x0(2) = 1.0;
    x0(8) = pi / 3;
    t.x[0] = x0;
    for (std::size_t k = 0; k <= steps; ++k)
    {
        const double time = static_cast<double>(k) * Ts;
        const CounterRng rv(seed, k, kMeasurementChannel);
        Eigen::VectorXd v(9);
        for (int i = 0; i < 9; ++i)
            v(i) = rv.uniform(static_cast<std::uint64_t>(i), -bounds(i), bounds(i));
        t.y[k] = p.meas.C * t.x[k] + v;
        t.u[k] = quadrotor_control(t.x[k], time, control);
        if (k < steps)
            t.x[k + 1] = model->eval(t.x[k], t.u[k], quadrotor_disturbance(time));
    }
    return p;
}

std::vector<MethodSetup> quadrotor_methods(Eigen::Index ng, Eigen::Index nc)
{
    const ReductionConfig cz{ng, nc};
    const ReductionConfig z{ng, 0};
    return {
        {Method::CZMV, HStrategy::C2, cz, true},
        {Method::CZFO, HStrategy::C3, cz, true},
        {Method::ZMV, HStrategy::C2, z, true},
        {Method::ZFO, HStrategy::C3, z, true},
    };
}

} // namespace czest::scenarios
