#include <cmath>

#include "czest/models/example1.hpp"
#include "czest/propagation.hpp"
#include "czest/reduction.hpp"
#include "czest/rng.hpp"
#include "czest/set_queries.hpp"
#include "scenarios.hpp"

namespace czest::scenarios {

namespace {

constexpr double kNoise = 0.4;

// channels of the counter RNG
constexpr std::uint64_t kProcessChannel = 1;
constexpr std::uint64_t kMeasurementChannel = 2;

double hull_area(const ConstrainedZonotope& Z)
{
    const IntervalVector h = interval_hull(Z);
    return (h[0].hi() - h[0].lo()) * (h[1].hi() - h[1].lo());
}

} // namespace

Problem example1_problem(std::uint64_t seed, std::size_t steps)
{
    Problem p;
    auto model = std::make_shared<models::Example1>();
    p.model = model;
    p.steps = steps;

    Eigen::MatrixXd G0(2, 3);
    G0 << 0.1, 0.2, -0.1, 0.1, 0.1, 0.0;
    p.X0 = ConstrainedZonotope::zonotope(G0, Eigen::Vector2d(0.5, 0.5));
    p.W = ConstrainedZonotope::ball_inf(Eigen::Vector2d::Zero(), kNoise);

    p.meas.C.resize(2, 2);
    p.meas.C << 1.0, 0.0, -1.0, 1.0;
    p.meas.D_v = Eigen::MatrixXd::Identity(2, 2);
    p.meas.V = ConstrainedZonotope::ball_inf(Eigen::Vector2d::Zero(), kNoise);

    Trajectory& t = p.truth;
    t.x.resize(steps + 1);
    t.u.assign(steps + 1, Eigen::VectorXd(0));
    t.y.resize(steps + 1);
    t.x[0] = Eigen::Vector2d(0.8, 0.65);
    for (std::size_t k = 0; k <= steps; ++k)
    {
        const CounterRng rv(seed, k, kMeasurementChannel);
        const Eigen::Vector2d v(rv.uniform(0, -kNoise, kNoise), rv.uniform(1, -kNoise, kNoise));
        t.y[k] = p.meas.C * t.x[k] + v;
        if (k < steps)
        {
            const CounterRng rw(seed, k, kProcessChannel);
            const Eigen::Vector2d w(rw.uniform(0, -kNoise, kNoise), rw.uniform(1, -kNoise, kNoise));
            t.x[k + 1] = model->eval(t.x[k], t.u[k], w);
        }
    }
    return p;
}

std::vector<MethodSetup> example1_methods(Eigen::Index ng, Eigen::Index nc)
{
    const ReductionConfig cz{ng, nc};
    const ReductionConfig z{ng, 0};
    return {
        {Method::CZMV, HStrategy::C2, cz, false},
        {Method::CZFO, HStrategy::C4, cz, false},
        {Method::ZMV, HStrategy::C2, z, false},
        {Method::ZFO, HStrategy::C4, z, false},
    };
}

ReachResult example1_reach(std::size_t samples, std::uint64_t seed)
{
    ReachResult out;
    Eigen::MatrixXd G(2, 3);
    G << 0.2, 0.4, 0.2, 0.2, 0.0, -0.2;
    Eigen::MatrixXd A(1, 3);
    A << 2.0, 2.0, 2.0;
    out.X0 = ConstrainedZonotope(G, Eigen::Vector2d(-1.0, 1.0), A, Eigen::VectorXd::Constant(1, -3.0));

    const models::Example1 f;
    const ConstrainedZonotope W = ConstrainedZonotope::point(Eigen::Vector2d::Zero());
    const Eigen::VectorXd u(0);
    const Eigen::VectorXd w0 = Eigen::Vector2d::Zero();
    for (const auto& x : sample_members(out.X0, samples, seed))
        out.images.push_back(f.eval(x, u, w0));

    const HStrategy all[] = {HStrategy::C1, HStrategy::C2, HStrategy::C3, HStrategy::C4};
    for (const bool taylor : {false, true})
    {
        for (const HStrategy h : all)
        {
            ReachEnclosure e;
            e.taylor = taylor;
            e.h = h;
            e.label = std::string(taylor ? "taylor-" : "mean-value-") + to_string(h);
            e.set = taylor ? first_order_taylor_extension(f, out.X0, W, u, h) : mean_value_extension(f, out.X0, W, u, h);
            out.enclosures.push_back(std::move(e));
        }
    }
    // the recentred Taylor enclosure is larger in CG-rep; bring it to the C1 size
    const ConstrainedZonotope& c1 = out.enclosures[4].set;
    ConstrainedZonotope& c4 = out.enclosures[7].set;
    c4 = reduce(c4, {c1.num_generators(), c1.num_constraints()});

    for (auto& e : out.enclosures)
    {
        for (const auto& y : out.images)
            if (!is_member(e.set, y, 1e-6))
                ++e.violations;
        e.hull_area = hull_area(e.set);
    }
    return out;
}

} // namespace czest::scenarios
