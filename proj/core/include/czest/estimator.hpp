#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "czest/constrained_zonotope.hpp"
#include "czest/model.hpp"
#include "czest/propagation.hpp"
#include "czest/reduction.hpp"

namespace czest {

/// CZ* keep constrained zonotopes throughout; Z* are the zonotope baselines.
enum class Method
{
    CZMV,
    CZFO,
    ZMV,
    ZFO,
};

const char* to_string(Method m);
/// Case-insensitive. Throws Error on unknown names.
Method parse_method(const std::string& s);
bool is_zonotope_method(Method m);
bool is_mean_value_method(Method m);

/// y = C x + D_u u + D_v v with v in V.
struct LinearMeasurement
{
    Eigen::MatrixXd C;
    Eigen::MatrixXd D_u;
    Eigen::MatrixXd D_v;
    ConstrainedZonotope V;

    Eigen::Index n_y() const { return C.rows(); }
    void validate(Eigen::Index n, Eigen::Index n_u) const;
};

struct EstimatorConfig
{
    Method method = Method::CZMV;
    ReductionConfig reduction;
    HStrategy h_strategy = HStrategy::C2;
    std::uint64_t seed = 0;
    /// Taylor form over X alone when the disturbance enters additively.
    bool split_affine_w = false;
    /// Keep every predicted set in the run record (memory heavy for large sets).
    bool keep_predicted = false;
};

struct StepRecord
{
    std::size_t k = 0;
    std::optional<ConstrainedZonotope> predicted;
    ConstrainedZonotope updated;
    double radius = 0.0;
    Eigen::Index ng = 0;
    Eigen::Index nc = 0;
    double wall_micros = 0.0;
};

struct EstimatorRun
{
    Method method = Method::CZMV;
    std::vector<StepRecord> steps;
    /// Notes about conversions and fallbacks, in order of occurrence.
    std::vector<std::string> log;
};

/// Prediction step: mean value form for CZMV/ZMV, first-order Taylor for CZFO/ZFO.
ConstrainedZonotope predict(const NonlinearModel& model, const ConstrainedZonotope& X, const ConstrainedZonotope& W,
                            const Eigen::VectorXd& u, const EstimatorConfig& config, PropagationInfo* info = nullptr);

/// Exact update by generalized intersection. Throws InconsistentMeasurementError
/// (tagged with `step`) when the result is empty and `check_empty` is set.
ConstrainedZonotope update_cz(const ConstrainedZonotope& Xbar, const LinearMeasurement& meas, const Eigen::VectorXd& u,
                              const Eigen::VectorXd& y, std::size_t step = 0, bool check_empty = true);

/**
 * Zonotope update by sequential strip intersection. For each measurement row
 * the strip |p^T x - d| <= sigma is intersected with the parameterized family
 * {c + lambda (d - p^T c), [(I - lambda p^T) G, sigma lambda]}, with lambda
 * minimizing the Frobenius norm of the new generator matrix.
 */
ConstrainedZonotope update_zonotope_strip(const ConstrainedZonotope& Xbar, const LinearMeasurement& meas,
                                          const Eigen::VectorXd& u, const Eigen::VectorXd& y, std::size_t step = 0);

/// Caps the complexity; zonotope methods always drop every constraint.
ConstrainedZonotope reduce_step(const ConstrainedZonotope& X, const EstimatorConfig& config);

/**
 * Update at k = 0, then predict, update and reduce for k = 1..steps.
 * u_seq and y_seq hold the values for k = 0..steps.
 */
EstimatorRun run_estimation(const NonlinearModel& model, const LinearMeasurement& meas, const ConstrainedZonotope& X0,
                            const ConstrainedZonotope& W, std::size_t steps, const std::vector<Eigen::VectorXd>& u_seq,
                            const std::vector<Eigen::VectorXd>& y_seq, const EstimatorConfig& config);

/// Mean over k of radius_a(k) / radius_b(k).
double compute_arr(const EstimatorRun& a, const EstimatorRun& b);
double compute_arr(const std::vector<double>& radius_a, const std::vector<double>& radius_b);

} // namespace czest
