#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "czest/constrained_zonotope.hpp"
#include "czest/estimator.hpp"
#include "czest/model.hpp"

namespace czest::scenarios {

/// True states x_0..x_N, inputs u_0..u_N and measurements y_0..y_N.
struct Trajectory
{
    std::vector<Eigen::VectorXd> x;
    std::vector<Eigen::VectorXd> u;
    std::vector<Eigen::VectorXd> y;
};

/// Everything an estimator run needs, plus the simulated truth.
struct Problem
{
    std::shared_ptr<const NonlinearModel> model;
    LinearMeasurement meas;
    ConstrainedZonotope X0;
    ConstrainedZonotope W;
    Trajectory truth;
    std::size_t steps = 0;
};

struct MethodSetup
{
    Method method = Method::CZMV;
    HStrategy h = HStrategy::C2;
    ReductionConfig caps;
    bool split_affine_w = false;
};

struct MethodResult
{
    MethodSetup setup;
    EstimatorRun run;
    /// First step whose estimate misses the true state.
    std::optional<std::size_t> violation;
    /// Set when the run stopped on an exception; `run` holds the steps before it.
    std::string error;

    bool ok() const { return !violation && error.empty(); }
};

struct SeedResult
{
    std::uint64_t seed = 0;
    std::vector<MethodResult> methods;
};

struct ScenarioResult
{
    std::string name;
    std::vector<SeedResult> seeds;

    bool all_contained() const;
    /// Mean over seeds of the per-seed ARR of `a` against `b`.
    double arr(Method a, Method b) const;
};

// Example 1

inline constexpr std::size_t kExample1Steps = 100;

/// Predator-prey map with |w|, |v| <= 0.4, y = (x1, x2 - x1) + v, truth from (0.8, 0.65).
Problem example1_problem(std::uint64_t seed, std::size_t steps = kExample1Steps);

/// CZMV and ZMV with C2, CZFO and ZFO with C4; zonotope methods drop constraints.
std::vector<MethodSetup> example1_methods(Eigen::Index ng = 20, Eigen::Index nc = 5);

/// One prediction step from the constrained zonotope X0 with w = 0.
struct ReachEnclosure
{
    std::string label;
    bool taylor = false;
    HStrategy h = HStrategy::C1;
    ConstrainedZonotope set;
    std::size_t violations = 0;
    double hull_area = 0.0;
};

struct ReachResult
{
    ConstrainedZonotope X0;
    std::vector<Eigen::VectorXd> images;
    std::vector<ReachEnclosure> enclosures;
};

/// Mean value form with C1..C4 and Taylor form with C1..C4; the Taylor C4
/// enclosure is reduced to the size of the Taylor C1 enclosure.
ReachResult example1_reach(std::size_t samples = 10000, std::uint64_t seed = 1);

// Quadrotor

/// Gains of the substitute cascaded PD tracking controller.
struct QuadrotorControl
{
    double kp_xy = 1.5;
    double kd_xy = 2.0;
    double kp_z = 4.0;
    double kd_z = 4.0;
    double kp_att = 30.0;
    double kd_att = 10.0;
    double kp_yaw = 10.0;
    double kd_yaw = 5.0;
    double max_tilt = 0.5;
};

inline constexpr std::size_t kQuadrotorSteps = 1500;

/// Helix tracking with force steps; GPS, barometer and IMU measurements.
Problem quadrotor_problem(std::uint64_t seed, std::size_t steps = kQuadrotorSteps, const QuadrotorControl& control = {});

/// CZMV and ZMV with C2, CZFO and ZFO with C3.
std::vector<MethodSetup> quadrotor_methods(Eigen::Index ng = 40, Eigen::Index nc = 12);

/// Reference position, velocity and acceleration of the helix at time t.
struct HelixPoint
{
    Eigen::Vector3d p, v, a;
};
HelixPoint helix(double t);

/// Control input for the true state at time t.
Eigen::VectorXd quadrotor_control(const Eigen::VectorXd& x, double t, const QuadrotorControl& control);

/// Disturbance forces at time t.
Eigen::Vector3d quadrotor_disturbance(double t);

// Running

/// Runs one method, checking the truth against every estimate at `tol`.
MethodResult run_method(const Problem& problem, const MethodSetup& setup, double tol = 1e-6);

/// Runs every method on every seed. Seeds run on `threads` workers (0: use
/// CZEST_THREADS, else the hardware count); results are ordered by seed.
ScenarioResult run_scenario(const std::string& name, const std::function<Problem(std::uint64_t)>& make_problem,
                            const std::vector<MethodSetup>& methods, const std::vector<std::uint64_t>& seeds,
                            unsigned threads = 0);

/// CZEST_THREADS when set and positive, else std::thread::hardware_concurrency().
unsigned default_threads();

} // namespace czest::scenarios
