#include "czest/estimator.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <string>

#include "czest/error.hpp"
#include "czest/set_queries.hpp"

namespace czest {

namespace {

std::string upper(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::toupper(ch); });
    return s;
}

ConstrainedZonotope as_zonotope(const ConstrainedZonotope& Z, const char* what, std::vector<std::string>* log)
{
    if (Z.is_zonotope())
        return Z;
    if (log)
        log->push_back(std::string(what) + " has " + std::to_string(Z.num_constraints()) +
                       " constraints; replaced by an enclosing zonotope");
    return to_zonotope(Z);
}

Eigen::VectorXd input_term(const LinearMeasurement& meas, const Eigen::VectorXd& u)
{
    if (meas.D_u.cols() == 0)
        return Eigen::VectorXd::Zero(meas.n_y());
    return meas.D_u * u;
}

} // namespace

const char* to_string(Method m)
{
    switch (m)
    {
    case Method::CZMV: return "CZMV";
    case Method::CZFO: return "CZFO";
    case Method::ZMV: return "ZMV";
    case Method::ZFO: return "ZFO";
    }
    return "?";
}

Method parse_method(const std::string& s)
{
    const std::string t = upper(s);
    if (t == "CZMV")
        return Method::CZMV;
    if (t == "CZFO")
        return Method::CZFO;
    if (t == "ZMV")
        return Method::ZMV;
    if (t == "ZFO")
        return Method::ZFO;
    throw Error("unknown method '" + s + "' (expected CZMV, CZFO, ZMV or ZFO)");
}

bool is_zonotope_method(Method m) { return m == Method::ZMV || m == Method::ZFO; }

bool is_mean_value_method(Method m) { return m == Method::CZMV || m == Method::ZMV; }

void LinearMeasurement::validate(Eigen::Index n, Eigen::Index n_u) const
{
    if (C.cols() != n)
        throw DimensionError("LinearMeasurement: C has " + std::to_string(C.cols()) + " columns, state has " +
                             std::to_string(n));
    if (D_v.rows() != C.rows() || D_v.cols() != V.dim())
        throw DimensionError("LinearMeasurement: D_v must be n_y x dim(V)");
    if (D_u.size() > 0 && (D_u.rows() != C.rows() || D_u.cols() != n_u))
        throw DimensionError("LinearMeasurement: D_u must be n_y x n_u");
}

ConstrainedZonotope predict(const NonlinearModel& model, const ConstrainedZonotope& X, const ConstrainedZonotope& W,
                            const Eigen::VectorXd& u, const EstimatorConfig& config, PropagationInfo* info)
{
    if (is_mean_value_method(config.method))
        return mean_value_extension(model, X, W, u, config.h_strategy, info);
    return first_order_taylor_extension(model, X, W, u, config.h_strategy, info, config.split_affine_w);
}

ConstrainedZonotope update_cz(const ConstrainedZonotope& Xbar, const LinearMeasurement& meas, const Eigen::VectorXd& u,
                              const Eigen::VectorXd& y, std::size_t step, bool check_empty)
{
    if (y.size() != meas.n_y())
        throw DimensionError("update_cz: measurement has the wrong size");
    // y - D_u u - D_v V
    const ConstrainedZonotope Y = linear_map(-meas.D_v, meas.V).translated(y - input_term(meas, u));
    ConstrainedZonotope out = generalized_intersect(Xbar, meas.C, Y);
    if (check_empty && is_empty(out))
        throw InconsistentMeasurementError("update_cz: measurement at step " + std::to_string(step) +
                                               " is inconsistent with the predicted set",
                                           step);
    return out;
}

ConstrainedZonotope update_zonotope_strip(const ConstrainedZonotope& Xbar, const LinearMeasurement& meas,
                                          const Eigen::VectorXd& u, const Eigen::VectorXd& y, std::size_t step)
{
    if (!Xbar.is_zonotope())
        throw DimensionError("update_zonotope_strip: the predicted set must be a zonotope");
    if (y.size() != meas.n_y())
        throw DimensionError("update_zonotope_strip: measurement has the wrong size");
    const ConstrainedZonotope V = meas.V.is_zonotope() ? meas.V : to_zonotope(meas.V);
    const Eigen::VectorXd d_all = y - input_term(meas, u) - meas.D_v * V.c();
    const Eigen::VectorXd sigma_all = (meas.D_v * V.G()).cwiseAbs().rowwise().sum();

    Eigen::MatrixXd G = Xbar.G();
    Eigen::VectorXd c = Xbar.c();
    for (Eigen::Index j = 0; j < meas.n_y(); ++j)
    {
        const Eigen::VectorXd p = meas.C.row(j).transpose();
        const double d = d_all(j);
        const double sigma = sigma_all(j);
        const Eigen::VectorXd Gtp = G.transpose() * p;
        const double spread = Gtp.cwiseAbs().sum();
        const double offset = d - p.dot(c);
        const double tol = 1e-12 * (1.0 + std::abs(d) + spread);
        if (std::abs(offset) > spread + sigma + tol)
            throw InconsistentMeasurementError("update_zonotope_strip: strip " + std::to_string(j) + " at step " +
                                                   std::to_string(step) + " misses the predicted set",
                                               step);
        if (std::abs(offset) + spread <= sigma)
            continue; // the strip already contains the set
        const Eigen::VectorXd GGtp = G * Gtp;
        const double denom = Gtp.squaredNorm() + sigma * sigma;
        if (denom <= 0.0)
            continue;
        const Eigen::VectorXd lambda = GGtp / denom;
        c += lambda * offset;
        G -= lambda * Gtp.transpose();
        G.conservativeResize(Eigen::NoChange, G.cols() + 1);
        G.col(G.cols() - 1) = sigma * lambda;
    }
    return ConstrainedZonotope::zonotope(std::move(G), std::move(c));
}

ConstrainedZonotope reduce_step(const ConstrainedZonotope& X, const EstimatorConfig& config)
{
    ReductionConfig cfg = config.reduction;
    if (is_zonotope_method(config.method))
        cfg.max_constraints = 0;
    return reduce(X, cfg);
}

EstimatorRun run_estimation(const NonlinearModel& model, const LinearMeasurement& meas, const ConstrainedZonotope& X0,
                            const ConstrainedZonotope& W, std::size_t steps, const std::vector<Eigen::VectorXd>& u_seq,
                            const std::vector<Eigen::VectorXd>& y_seq, const EstimatorConfig& config)
{
    meas.validate(model.n(), model.n_u());
    if (u_seq.size() < steps + 1 || y_seq.size() < steps + 1)
        throw DimensionError("run_estimation: need inputs and measurements for k = 0.." + std::to_string(steps));
    if (X0.dim() != model.n() || W.dim() != model.n_w())
        throw DimensionError("run_estimation: X0 or W does not match the model");

    EstimatorRun run;
    run.method = config.method;
    run.steps.reserve(steps + 1);
    const bool zono = is_zonotope_method(config.method);
    const ConstrainedZonotope X_init = zono ? as_zonotope(X0, "X0", &run.log) : X0;
    const ConstrainedZonotope W_use = zono ? as_zonotope(W, "W", &run.log) : W;
    LinearMeasurement meas_use = meas;
    if (zono)
        meas_use.V = as_zonotope(meas.V, "V", &run.log);

    using clock = std::chrono::steady_clock;
    ConstrainedZonotope Xhat = X_init;
    for (std::size_t k = 0; k <= steps; ++k)
    {
        const auto t0 = clock::now();
        StepRecord rec;
        rec.k = k;
        ConstrainedZonotope Xbar = Xhat;
        if (k > 0)
        {
            PropagationInfo info;
            Xbar = predict(model, Xhat, W_use, u_seq[k - 1], config, &info);
            for (const auto& w : info.warnings)
                run.log.push_back("k=" + std::to_string(k) + ": " + w);
        }
        ConstrainedZonotope updated = zono ? update_zonotope_strip(Xbar, meas_use, u_seq[k], y_seq[k], k)
                                           : update_cz(Xbar, meas_use, u_seq[k], y_seq[k], k, false);
        Xhat = reduce_step(updated, config);
        // an empty enclosure means the exact update was empty too
        if (!zono && is_empty(Xhat))
            throw InconsistentMeasurementError("run_estimation: empty estimate at step " + std::to_string(k), k);
        rec.radius = radius_metric(Xhat);
        rec.wall_micros = std::chrono::duration<double, std::micro>(clock::now() - t0).count();
        if (config.keep_predicted)
            rec.predicted = std::move(Xbar);
        rec.ng = Xhat.num_generators();
        rec.nc = Xhat.num_constraints();
        rec.updated = Xhat;
        run.steps.push_back(std::move(rec));
    }
    return run;
}

double compute_arr(const std::vector<double>& radius_a, const std::vector<double>& radius_b)
{
    if (radius_a.size() != radius_b.size() || radius_a.empty())
        throw DimensionError("compute_arr: runs must have the same, nonzero number of steps");
    double sum = 0.0;
    for (std::size_t k = 0; k < radius_a.size(); ++k)
    {
        if (!(radius_b[k] > 0.0))
            throw DomainError("compute_arr: zero reference radius at step " + std::to_string(k));
        sum += radius_a[k] / radius_b[k];
    }
    return sum / static_cast<double>(radius_a.size());
}

double compute_arr(const EstimatorRun& a, const EstimatorRun& b)
{
    std::vector<double> ra, rb;
    for (const auto& s : a.steps)
        ra.push_back(s.radius);
    for (const auto& s : b.steps)
        rb.push_back(s.radius);
    return compute_arr(ra, rb);
}

} // namespace czest
