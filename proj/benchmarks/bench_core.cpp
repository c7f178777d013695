#include <random>

#include <benchmark/benchmark.h>

#include "czest/estimator.hpp"
#include "czest/lp.hpp"
#include "czest/models/example1.hpp"
#include "czest/reduction.hpp"
#include "czest/set_queries.hpp"

using namespace czest;

namespace {

ConstrainedZonotope random_set(Eigen::Index n, Eigen::Index ng, Eigen::Index nc, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const Eigen::MatrixXd G = Eigen::MatrixXd::NullaryExpr(n, ng, [&] { return u(rng); });
    const Eigen::MatrixXd A = Eigen::MatrixXd::NullaryExpr(nc, ng, [&] { return u(rng); });
    const Eigen::VectorXd xi0 = Eigen::VectorXd::NullaryExpr(ng, [&] { return 0.5 * u(rng); });
    return {G, Eigen::VectorXd::Zero(n), A, A * xi0};
}

LinearMeasurement example1_measurement()
{
    LinearMeasurement m;
    m.C.resize(2, 2);
    m.C << 1.0, 0.0, -1.0, 1.0;
    m.D_v = Eigen::MatrixXd::Identity(2, 2);
    m.V = ConstrainedZonotope::ball_inf(Eigen::Vector2d::Zero(), 0.4);
    return m;
}

} // namespace

static void BM_IntervalHull(benchmark::State& state)
{
    const auto Z = random_set(4, state.range(0), state.range(0) / 4, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(interval_hull(Z));
}
BENCHMARK(BM_IntervalHull)->Arg(8)->Arg(20)->Arg(40);

static void BM_Membership(benchmark::State& state)
{
    const auto Z = random_set(4, state.range(0), state.range(0) / 4, 2);
    const Eigen::VectorXd p = Eigen::VectorXd::Zero(4);
    for (auto _ : state)
        benchmark::DoNotOptimize(is_member(Z, p));
}
BENCHMARK(BM_Membership)->Arg(8)->Arg(20)->Arg(40);

static void BM_Reduce(benchmark::State& state)
{
    const auto Z = random_set(4, 60, 15, 3);
    const ReductionConfig caps{state.range(0), state.range(0) / 4};
    for (auto _ : state)
        benchmark::DoNotOptimize(reduce(Z, caps));
}
BENCHMARK(BM_Reduce)->Arg(20)->Arg(40);

static void BM_PredictUpdate(benchmark::State& state)
{
    const models::Example1 f;
    const auto meas = example1_measurement();
    const auto W = ConstrainedZonotope::ball_inf(Eigen::Vector2d::Zero(), 0.4);
    Eigen::MatrixXd G0(2, 3);
    G0 << 0.1, 0.2, -0.1, 0.1, 0.1, 0.0;
    const auto X0 = ConstrainedZonotope::zonotope(G0, Eigen::Vector2d(0.5, 0.5));
    EstimatorConfig cfg;
    cfg.method = static_cast<Method>(state.range(0));
    cfg.h_strategy = is_mean_value_method(cfg.method) ? HStrategy::C2 : HStrategy::C4;
    const Eigen::VectorXd u(0);
    const Eigen::Vector2d y = meas.C * Eigen::Vector2d(0.8, 0.65);
    for (auto _ : state)
    {
        auto X = predict(f, X0, W, u, cfg);
        X = is_zonotope_method(cfg.method) ? update_zonotope_strip(X, meas, u, y) : update_cz(X, meas, u, y);
        benchmark::DoNotOptimize(reduce_step(X, cfg));
    }
    state.SetLabel(to_string(cfg.method));
}
BENCHMARK(BM_PredictUpdate)->DenseRange(0, 3);
BENCHMARK_MAIN();
