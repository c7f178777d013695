#include <random>

#include <gtest/gtest.h>

#include "czest/lp.hpp"
#include "czest/set_queries.hpp"
#include "oracles.hpp"

using namespace czest;
namespace ot = czest::testing;
using ot::box_section_vertices;

namespace {

LpProblem boxed(Eigen::VectorXd cost, Eigen::MatrixXd M, Eigen::VectorXd r)
{
    LpProblem p;
    const auto n = cost.size();
    p.cost = std::move(cost);
    p.eq_matrix = std::move(M);
    p.eq_rhs = std::move(r);
    p.lower = Eigen::VectorXd::Constant(n, -1.0);
    p.upper = Eigen::VectorXd::Constant(n, 1.0);
    return p;
}

} // namespace

TEST(Lp, BoundActiveOptimum)
{
    LpProblem p;
    p.cost = Eigen::VectorXd::Ones(1);
    p.eq_matrix.resize(0, 1);
    p.eq_rhs.resize(0);
    p.lower = Eigen::VectorXd::Zero(1);
    p.upper = Eigen::VectorXd::Ones(1);
    const LpSolution s = solve_lp(p);
    ASSERT_EQ(s.status, LpStatus::optimal);
    EXPECT_DOUBLE_EQ(s.x(0), 0.0);
    EXPECT_DOUBLE_EQ(s.objective, 0.0);
}

TEST(Lp, InfeasibleSum)
{
    LpProblem p;
    p.cost = Eigen::VectorXd::Zero(2);
    p.eq_matrix = Eigen::RowVector2d(1.0, 1.0);
    p.eq_rhs = Eigen::VectorXd::Constant(1, 3.0);
    p.lower = Eigen::VectorXd::Zero(2);
    p.upper = Eigen::VectorXd::Ones(2);
    EXPECT_EQ(solve_lp(p).status, LpStatus::infeasible);
}

TEST(Lp, Unbounded)
{
    LpProblem p;
    p.cost = Eigen::Vector2d(-1.0, 0.0);
    p.eq_matrix = Eigen::RowVector2d(1.0, -1.0);
    p.eq_rhs = Eigen::VectorXd::Zero(1);
    p.lower = Eigen::VectorXd::Zero(2);
    p.upper = Eigen::VectorXd::Constant(2, std::numeric_limits<double>::infinity());
    EXPECT_EQ(solve_lp(p).status, LpStatus::unbounded);
}

TEST(Lp, SegmentOptimumMatchesVertexEnumeration)
{
    const Eigen::Vector3d w(0.2, 0.4, 0.2);
    const Eigen::MatrixXd A = Eigen::RowVector3d(2, 2, 2);
    const Eigen::VectorXd b = Eigen::VectorXd::Constant(1, -3.0);
    double best = -1e300;
    for (const auto& xi : box_section_vertices(A, b))
        best = std::max(best, w.dot(xi));
    EXPECT_NEAR(best, -0.2, 1e-12);

    const LpSolution s = solve_lp(boxed(-w, A, b));
    ASSERT_TRUE(s.optimal());
    EXPECT_NEAR(-s.objective, best, 1e-9);
}

TEST(Lp, RandomBoxedProblemsMatchVertexEnumeration)
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial)
    {
        const Eigen::Index n = 3 + trial % 5;
        const Eigen::Index m = 1 + trial % 3;
        const Eigen::MatrixXd M = ot::random_matrix(rng, m, n);
        const Eigen::VectorXd xi0 = ot::random_vector(rng, n, 0.8);
        const Eigen::VectorXd cost = ot::random_vector(rng, n);
        const Eigen::VectorXd r = M * xi0;
        double best = 1e300;
        for (const auto& v : box_section_vertices(M, r))
            best = std::min(best, cost.dot(v));
        const LpProblem p = boxed(cost, M, r);
        const LpSolution s = solve_lp(p);
        ASSERT_TRUE(s.optimal()) << "trial " << trial;
        EXPECT_NEAR(s.objective, best, 1e-7) << "trial " << trial;
        EXPECT_LE((M * s.x - r).cwiseAbs().maxCoeff(), 1e-8);
        EXPECT_LE(s.x.cwiseAbs().maxCoeff(), 1.0 + 1e-9);
        EXPECT_NEAR(dual_objective(p, s.duals), s.objective, 1e-6) << "trial " << trial;
    }
}

TEST(Lp, FeasibilityResidual)
{
    LpProblem p;
    p.cost = Eigen::VectorXd::Zero(2);
    p.eq_matrix = Eigen::RowVector2d(1.0, 1.0);
    p.eq_rhs = Eigen::VectorXd::Constant(1, 3.0);
    p.lower = Eigen::VectorXd::Zero(2);
    p.upper = Eigen::VectorXd::Ones(2);
    const LpSolution s = solve_feasibility(p, 1e-9);
    EXPECT_FALSE(s.optimal());
    EXPECT_NEAR(s.infeasibility, 1.0, 1e-9);
}

TEST(Lp, ValidateRejectsBadShapes)
{
    LpProblem p;
    p.cost = Eigen::VectorXd::Zero(2);
    p.eq_matrix = Eigen::MatrixXd::Zero(1, 3);
    p.eq_rhs = Eigen::VectorXd::Zero(1);
    p.lower = Eigen::VectorXd::Zero(2);
    p.upper = Eigen::VectorXd::Ones(2);
    EXPECT_THROW(p.validate(), DimensionError);
    p.eq_matrix = Eigen::MatrixXd::Zero(1, 2);
    p.lower(0) = 2.0;
    EXPECT_THROW(p.validate(), Error);
}

TEST(LpMembership, ZonotopeCenter)
{
    const ConstrainedZonotope Z = ConstrainedZonotope::zonotope(Eigen::MatrixXd::Random(3, 5), Eigen::Vector3d(1, 2, 3));
    EXPECT_TRUE(is_member(Z, Z.c()));
}

TEST(LpMembership, ConstrainedCenterIsNotAMember)
{
    Eigen::MatrixXd G(2, 3);
    G << 0.2, 0.4, 0.2, 0.2, 0.0, -0.2;
    const ConstrainedZonotope X(G, Eigen::Vector2d(-1, 1), Eigen::RowVector3d(2, 2, 2), Eigen::VectorXd::Constant(1, -3));
    // grid over the feasible plane xi1 + xi2 + xi3 = -1.5: no point has G xi = 0
    double closest = 1e300;
    for (int i = 0; i <= 200; ++i)
        for (int j = 0; j <= 200; ++j)
        {
            const double a = -1 + 2.0 * i / 200, b = -1 + 2.0 * j / 200, c = -1.5 - a - b;
            if (std::abs(c) > 1)
                continue;
            closest = std::min(closest, (G * Eigen::Vector3d(a, b, c)).norm());
        }
    ASSERT_GT(closest, 0.1);
    EXPECT_FALSE(is_member(X, X.c()));
    EXPECT_EQ(is_member(X, X.c()), ot::brute_member(X, X.c()));
}

TEST(LpMembership, PointsOutsideTheHull)
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t)
    {
        const auto inst = ot::random_cz(rng, 2, 5, 2);
        const auto [lo, hi] = ot::brute_hull(inst.Z);
        Eigen::VectorXd p = hi;
        p(t % 2) += 0.01 + 0.1 * t;
        EXPECT_FALSE(is_member(inst.Z, p));
        p = lo;
        p(t % 2) -= 0.01;
        EXPECT_FALSE(is_member(inst.Z, p));
    }
}

TEST(LpMembership, AgreesWithVertexOracle)
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int inside = 0;
    for (int t = 0; t < 60; ++t)
    {
        const auto inst = ot::random_cz(rng, 2, 4 + t % 3, 1 + t % 2);
        const auto [lo, hi] = ot::brute_hull(inst.Z);
        for (int s = 0; s < 10; ++s)
        {
            Eigen::Vector2d p(lo(0) + (hi(0) - lo(0)) * u(rng), lo(1) + (hi(1) - lo(1)) * u(rng));
            const bool lib = is_member(inst.Z, p, 1e-9);
            const bool ref = ot::brute_member(inst.Z, p, 1e-9);
            // skip points that sit within roundoff of the boundary
            if (lib != ref && ot::brute_member(inst.Z, p, 1e-6) != ot::brute_member(inst.Z, p, 1e-12))
                continue;
            EXPECT_EQ(lib, ref) << "instance " << t << " sample " << s;
            inside += ref;
        }
    }
    EXPECT_GT(inside, 50);
}
