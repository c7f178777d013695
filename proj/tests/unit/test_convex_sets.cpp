#include <random>

#include <gtest/gtest.h>

#include "czest/constrained_zonotope.hpp"
#include "czest/reduction.hpp"
#include "czest/set_queries.hpp"
#include "oracles.hpp"

using namespace czest;
namespace ot = czest::testing;

namespace {

// the triangle used throughout the reach examples
ConstrainedZonotope triangle()
{
    Eigen::MatrixXd G(2, 3);
    G << 0.2, 0.4, 0.2, 0.2, 0.0, -0.2;
    return {G, Eigen::Vector2d(-1, 1), Eigen::RowVector3d(2, 2, 2), Eigen::VectorXd::Constant(1, -3)};
}

/// Every vertex of `inner` is in `outer`, so inner is a subset.
void expect_subset(const ConstrainedZonotope& inner, const ConstrainedZonotope& outer, double tol = 1e-6)
{
    for (const auto& v : ot::cz_vertices(inner))
        EXPECT_TRUE(is_member(outer, v, tol)) << v.transpose();
}

void expect_same_set(const ConstrainedZonotope& a, const ConstrainedZonotope& b, double tol = 1e-6)
{
    expect_subset(a, b, tol);
    expect_subset(b, a, tol);
}

} // namespace

TEST(ConstrainedZonotope, ShapeChecks)
{
    EXPECT_THROW(ConstrainedZonotope(Eigen::MatrixXd::Zero(2, 3), Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Zero(0, 3),
                                     Eigen::VectorXd::Zero(0)),
                 DimensionError);
    EXPECT_THROW(ConstrainedZonotope(Eigen::MatrixXd::Zero(2, 3), Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Zero(1, 2),
                                     Eigen::VectorXd::Zero(1)),
                 DimensionError);
    const auto Z = ConstrainedZonotope::zonotope(Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d::Zero());
    EXPECT_TRUE(Z.is_zonotope());
    EXPECT_EQ(Z.A().cols(), 2);
}

TEST(LinearMap, IdentityKeepsRepresentation)
{
    const auto X = triangle();
    const auto Y = linear_map(Eigen::MatrixXd::Identity(2, 2), X);
    EXPECT_EQ(Y.G(), X.G());
    EXPECT_EQ(Y.c(), X.c());
    EXPECT_EQ(Y.A(), X.A());
    EXPECT_EQ(Y.b(), X.b());
}

TEST(LinearMap, Diagonal)
{
    const auto Z = ConstrainedZonotope::zonotope(Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d::Zero());
    const auto Y = linear_map(Eigen::Vector2d(2, 1).asDiagonal().toDenseMatrix(), Z);
    EXPECT_EQ(Y.G(), Eigen::Vector2d(2, 1).asDiagonal().toDenseMatrix());
    EXPECT_EQ(Y.c(), Eigen::Vector2d::Zero());
}

TEST(LinearMap, SampledImagesAreMembers)
{
    std::mt19937_64 rng(1);
    const auto inst = ot::random_cz(rng, 3, 6, 2);
    const Eigen::MatrixXd R = ot::random_matrix(rng, 2, 3);
    const auto Y = linear_map(R, inst.Z);
    for (const auto& z : ot::true_members(inst.Z, inst.xi0, 1000, 2))
        EXPECT_TRUE(is_member(Y, R * z, 1e-6));
}

TEST(MinkowskiSum, SingletonTranslates)
{
    const auto X = triangle();
    const Eigen::Vector2d p(0.5, -2.0);
    const auto Y = minkowski_sum(X, ConstrainedZonotope::point(p));
    EXPECT_EQ(Y.G(), X.G());
    EXPECT_TRUE(Y.c().isApprox(X.c() + p));
    EXPECT_EQ(Y.A(), X.A());
}

TEST(MinkowskiSum, Intervals)
{
    const auto a = ConstrainedZonotope::zonotope(Eigen::MatrixXd::Constant(1, 1, 1.0), Eigen::VectorXd::Zero(1));
    const auto b = ConstrainedZonotope::zonotope(Eigen::MatrixXd::Constant(1, 1, 2.0), Eigen::VectorXd::Zero(1));
    const auto s = minkowski_sum(a, b);
    EXPECT_EQ(s.G(), Eigen::RowVector2d(1, 2));
    EXPECT_EQ(s.c()(0), 0.0);
    const auto h = interval_hull(s);
    EXPECT_NEAR(h[0].lo(), -3.0, 1e-12);
    EXPECT_NEAR(h[0].hi(), 3.0, 1e-12);
}

TEST(MinkowskiSum, SampledSumsAreMembers)
{
    std::mt19937_64 rng(2);
    const auto a = ot::random_cz(rng, 2, 4, 1);
    const auto b = ot::random_cz(rng, 2, 3, 1);
    const auto S = minkowski_sum(a.Z, b.Z);
    const auto za = ot::true_members(a.Z, a.xi0, 300, 3);
    const auto zb = ot::true_members(b.Z, b.xi0, 300, 4);
    for (std::size_t i = 0; i < za.size(); ++i)
        EXPECT_TRUE(is_member(S, za[i] + zb[i], 1e-6));
}

TEST(GeneralizedIntersect, VacuousBox)
{
    const auto X = triangle();
    const auto Y = ConstrainedZonotope::box(Eigen::Vector2d(-10, -10), Eigen::Vector2d(10, 10));
    expect_same_set(generalized_intersect(X, Eigen::MatrixXd::Identity(2, 2), Y), X);
}

TEST(GeneralizedIntersect, HalfBoxCut)
{
    const auto Z = ConstrainedZonotope::box(Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, 1));
    const auto Y = ConstrainedZonotope::box(Eigen::VectorXd::Constant(1, 0.0), Eigen::VectorXd::Constant(1, 2.0));
    const auto cut = generalized_intersect(Z, Eigen::RowVector2d(1, 0), Y);
    const auto h = interval_hull(cut);
    EXPECT_NEAR(h[0].lo(), 0.0, 1e-9);
    EXPECT_NEAR(h[0].hi(), 1.0, 1e-9);
    EXPECT_NEAR(h[1].lo(), -1.0, 1e-9);
    EXPECT_NEAR(h[1].hi(), 1.0, 1e-9);
    // sampling oracle: box points with x1 >= 0 are in, x1 < 0 are out
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 500; ++i)
    {
        const Eigen::Vector2d p(u(rng), u(rng));
        if (std::abs(p(0)) < 1e-6)
            continue;
        EXPECT_EQ(is_member(cut, p), p(0) > 0.0);
    }
}

TEST(GeneralizedIntersect, HullWithinOperandHull)
{
    std::mt19937_64 rng(4);
    for (int t = 0; t < 10; ++t)
    {
        const auto a = ot::random_cz(rng, 2, 4, 1);
        // Y contains R a.xi0's image so the intersection is non-empty
        const Eigen::MatrixXd R = ot::random_matrix(rng, 1, 2);
        const Eigen::VectorXd z0 = a.Z.c() + a.Z.G() * a.xi0;
        const auto Y = ConstrainedZonotope::ball_inf(R * z0, 0.3);
        const auto I = generalized_intersect(a.Z, R, Y);
        const auto hi = interval_hull(I), hz = interval_hull(a.Z), hy = interval_hull(Y);
        for (std::size_t i = 0; i < 2; ++i)
            EXPECT_TRUE(Interval(hz[i].lo() - 1e-9, hz[i].hi() + 1e-9).contains(hi[i]));
        for (const auto& v : ot::cz_vertices(I))
        {
            EXPECT_TRUE(ot::brute_member(a.Z, v, 1e-6));
            EXPECT_TRUE(Interval(hy[0].lo() - 1e-6, hy[0].hi() + 1e-6).contains((R * v)(0)));
        }
    }
}

TEST(CartesianProduct, SingletonFactor)
{
    const auto X = triangle();
    const auto P = cartesian_product(X, ConstrainedZonotope::point(Eigen::VectorXd::Zero(1)));
    ASSERT_EQ(P.dim(), 3);
    EXPECT_EQ(P.G().topRows(2), X.G());
    EXPECT_EQ(P.G().row(2).norm(), 0.0);
    EXPECT_EQ(P.c()(2), 0.0);
}

TEST(CartesianProduct, SizesAndMembers)
{
    std::mt19937_64 rng(5);
    const auto a = ot::random_cz(rng, 2, 4, 1);
    const auto b = ot::random_cz(rng, 3, 5, 2);
    const auto P = cartesian_product(a.Z, b.Z);
    EXPECT_EQ(P.dim(), 5);
    EXPECT_EQ(P.num_generators(), 9);
    EXPECT_EQ(P.num_constraints(), 3);
    const auto za = ot::true_members(a.Z, a.xi0, 200, 1);
    const auto zb = ot::true_members(b.Z, b.xi0, 200, 2);
    for (std::size_t i = 0; i < za.size(); ++i)
        EXPECT_TRUE(is_member(P, vcat(za[i], zb[i]), 1e-6));
}

TEST(IntervalHull, ZonotopeClosedForm)
{
    Eigen::MatrixXd G(2, 3);
    G << 1, -2, 0.5, 0, 1, -1;
    const auto Z = ConstrainedZonotope::zonotope(G, Eigen::Vector2d(1, -1));
    const auto h = interval_hull(Z);
    EXPECT_NEAR(h[0].lo(), 1 - 3.5, 1e-14);
    EXPECT_NEAR(h[0].hi(), 1 + 3.5, 1e-14);
    EXPECT_NEAR(h[1].lo(), -1 - 2, 1e-14);
    EXPECT_NEAR(h[1].hi(), -1 + 2, 1e-14);
}

TEST(IntervalHull, Triangle)
{
    const auto [lo, hi] = ot::brute_hull(triangle());
    EXPECT_NEAR(lo(0), -1.5, 1e-12);
    EXPECT_NEAR(hi(0), -1.2, 1e-12);
    EXPECT_NEAR(lo(1), 0.7, 1e-12);
    EXPECT_NEAR(hi(1), 1.3, 1e-12);
    const auto h = interval_hull(triangle());
    for (std::size_t i = 0; i < 2; ++i)
    {
        EXPECT_NEAR(h[i].lo(), lo(static_cast<Eigen::Index>(i)), 1e-6);
        EXPECT_NEAR(h[i].hi(), hi(static_cast<Eigen::Index>(i)), 1e-6);
    }
}

TEST(IntervalHull, RandomMatchesVertexOracle)
{
    std::mt19937_64 rng(6);
    for (int t = 0; t < 40; ++t)
    {
        const auto inst = ot::random_cz(rng, 2 + t % 2, 5, 1 + t % 3);
        const auto [lo, hi] = ot::brute_hull(inst.Z);
        const auto h = interval_hull(inst.Z);
        for (Eigen::Index i = 0; i < inst.Z.dim(); ++i)
        {
            EXPECT_NEAR(h[static_cast<std::size_t>(i)].lo(), lo(i), 1e-6);
            EXPECT_NEAR(h[static_cast<std::size_t>(i)].hi(), hi(i), 1e-6);
        }
    }
}

TEST(IntervalHull, EmptySetThrows)
{
    const ConstrainedZonotope E(Eigen::MatrixXd::Identity(1, 1), Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Ones(1, 1),
                                Eigen::VectorXd::Constant(1, 2.0));
    EXPECT_TRUE(is_empty(E));
    EXPECT_THROW(interval_hull(E), EmptySetError);
}

TEST(ClosestPoint, MemberQuery)
{
    const auto X = triangle();
    const Eigen::Vector2d h(-1.3, 1.0);
    ASSERT_TRUE(ot::brute_member(X, h));
    EXPECT_LE((closest_point(X, h) - h).lpNorm<1>(), 1e-8);
}

TEST(ClosestPoint, BoxProjection)
{
    const auto Z = ConstrainedZonotope::box(Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, 1));
    EXPECT_LE((closest_point(Z, Eigen::Vector2d(3, 0)) - Eigen::Vector2d(1, 0)).norm(), 1e-8);
}

TEST(ClosestPoint, TriangleCenterMatchesGrid)
{
    const auto X = triangle();
    const Eigen::Vector2d h = X.c();
    double grid = 1e300;
    const int n = 400;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
        {
            const double a = -1 + 2.0 * i / n, b = -1 + 2.0 * j / n, c = -1.5 - a - b;
            if (std::abs(c) > 1)
                continue;
            grid = std::min(grid, (X.c() + X.G() * Eigen::Vector3d(a, b, c) - h).lpNorm<1>());
        }
    const Eigen::VectorXd p = closest_point(X, h);
    EXPECT_TRUE(is_member(X, p, 1e-8));
    EXPECT_NEAR((p - h).lpNorm<1>(), grid, 1e-4);
}

TEST(ClosestPoint, RandomMatchesPolygonOracle)
{
    std::mt19937_64 rng(7);
    for (int t = 0; t < 30; ++t)
    {
        const auto inst = ot::random_cz(rng, 2, 5, 1 + t % 2);
        const Eigen::Vector2d h = ot::random_vector(rng, 2, 4.0);
        const Eigen::VectorXd p = closest_point(inst.Z, h);
        EXPECT_TRUE(is_member(inst.Z, p, 1e-7));
        EXPECT_NEAR((p - h).lpNorm<1>(), ot::l1_distance_2d(ot::cz_vertices(inst.Z), h), 1e-6) << "instance " << t;
    }
}

TEST(RescaleWithCenter, ZonotopeNoOp)
{
    const auto Z = ConstrainedZonotope::zonotope(Eigen::MatrixXd::Random(2, 4), Eigen::Vector2d(1, 2));
    const auto R = rescale_with_center(Z, Z.c());
    EXPECT_TRUE(R.c().isApprox(Z.c()));
    expect_same_set(R, Z);
}

TEST(RescaleWithCenter, TriangleAtHullMidpoint)
{
    const auto X = triangle();
    const Eigen::Vector2d h(-1.35, 1.0);
    const auto R = rescale_with_center(X, h);
    EXPECT_LE((R.c() - h).norm(), 1e-12);
    expect_same_set(R, X);
    const auto a = interval_hull(X), b = interval_hull(R);
    for (std::size_t i = 0; i < 2; ++i)
    {
        EXPECT_NEAR(a[i].lo(), b[i].lo(), 1e-6);
        EXPECT_NEAR(a[i].hi(), b[i].hi(), 1e-6);
    }
    for (const auto& x : sample_members(X, 1000, 3))
        EXPECT_TRUE(is_member(R, x, 1e-6));
}

TEST(TightenGeneratorBounds, FreeBox)
{
    const auto g = tighten_generator_bounds(Eigen::MatrixXd::Zero(0, 3), Eigen::VectorXd::Zero(0));
    EXPECT_EQ(g.lo, Eigen::VectorXd::Constant(3, -1.0));
    EXPECT_EQ(g.hi, Eigen::VectorXd::Constant(3, 1.0));
}

TEST(TightenGeneratorBounds, SingleRow)
{
    const auto g = tighten_generator_bounds(Eigen::RowVector3d(2, 2, 2), Eigen::VectorXd::Constant(1, -3.0));
    for (Eigen::Index i = 0; i < 3; ++i)
    {
        EXPECT_NEAR(g.lo(i), -1.0, 1e-12);
        EXPECT_NEAR(g.hi(i), 0.5, 1e-12);
        EXPECT_GE(g.hi(i), 0.5);
    }
}

TEST(TightenGeneratorBounds, EnclosesVertexExtremes)
{
    std::mt19937_64 rng(9);
    for (int t = 0; t < 40; ++t)
    {
        const auto inst = ot::random_cz(rng, 2, 5, 1 + t % 3);
        const auto g = tighten_generator_bounds(inst.Z.A(), inst.Z.b());
        ASSERT_FALSE(g.empty);
        for (const auto& xi : ot::box_section_vertices(inst.Z.A(), inst.Z.b()))
            for (Eigen::Index i = 0; i < xi.size(); ++i)
            {
                EXPECT_LE(g.lo(i), xi(i) + 1e-12);
                EXPECT_GE(g.hi(i), xi(i) - 1e-12);
            }
    }
}

TEST(EliminateConstraints, ZeroIsIdentity)
{
    const auto X = triangle();
    EliminationTrail trail;
    const auto Y = eliminate_constraints(X, 0, &trail);
    EXPECT_EQ(Y.G(), X.G());
    EXPECT_EQ(Y.A(), X.A());
    EXPECT_TRUE(trail.levels.empty());
}

TEST(EliminateConstraints, TriangleToZonotope)
{
    const auto X = triangle();
    EliminationTrail trail;
    const auto Y = eliminate_constraints(X, 1, &trail);
    EXPECT_TRUE(Y.is_zonotope());
    EXPECT_LE(Y.num_generators(), 2);
    expect_subset(X, Y, 1e-9);
    for (const auto& x : sample_members(X, 1000, 1))
        EXPECT_TRUE(is_member(Y, x, 1e-9));
}

TEST(EliminateConstraints, CenterAccumulatesLevels)
{
    std::mt19937_64 rng(10);
    for (int t = 0; t < 10; ++t)
    {
        const auto inst = ot::random_cz(rng, 3, 7, 3);
        EliminationTrail trail;
        const auto Y = eliminate_constraints(inst.Z, 3, &trail);
        Eigen::VectorXd offset = Eigen::VectorXd::Zero(3);
        for (const auto& l : trail.levels)
            offset += l.G_bar * l.xi_m + l.Lambda_G * l.b_tilde;
        EXPECT_LE((trail.offset - offset).norm(), 1e-9);
        EXPECT_LE((trail.c0 - (inst.Z.c() + trail.offset)).norm(), 1e-9);
        EXPECT_LE((Y.c() - trail.c0).norm(), 1e-9);
        expect_subset(inst.Z, Y, 1e-9);
    }
}

TEST(ReduceGenerators, TargetAboveCountIsIdentity)
{
    const auto X = triangle();
    const auto Y = reduce_generators(X, 5);
    EXPECT_EQ(Y.G(), X.G());
    EXPECT_EQ(Y.A(), X.A());
}

TEST(ReduceGenerators, CollinearSum)
{
    const auto Z = ConstrainedZonotope::zonotope(Eigen::RowVector3d(0.5, 0.3, 0.2), Eigen::VectorXd::Zero(1));
    const auto Y = reduce_generators(Z, 1);
    ASSERT_EQ(Y.num_generators(), 1);
    EXPECT_NEAR(std::abs(Y.G()(0, 0)), 1.0, 1e-12);
}

TEST(ReduceGenerators, RandomEnclosure)
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t)
    {
        const Eigen::Index n = 2, nc = t % 3;
        const auto inst = ot::random_cz(rng, n, 9, nc);
        const auto Y = reduce_generators(inst.Z, n + nc + 2);
        EXPECT_LE(Y.num_generators(), n + nc + 2);
        for (const auto& z : ot::true_members(inst.Z, inst.xi0, 1000, static_cast<std::uint64_t>(t)))
            EXPECT_TRUE(is_member(Y, z, 1e-7));
        expect_subset(inst.Z, Y, 1e-7);
    }
}

TEST(ReduceGenerators, RejectsTooSmallTarget)
{
    EXPECT_THROW(reduce_generators(triangle(), 2), Error);
}

TEST(Reduce, CapsAreRespected)
{
    std::mt19937_64 rng(12);
    const auto inst = ot::random_cz(rng, 2, 26, 9);
    const auto Y = reduce(inst.Z, {20, 5});
    EXPECT_LE(Y.num_generators(), 20);
    EXPECT_LE(Y.num_constraints(), 5);
    for (const auto& z : ot::true_members(inst.Z, inst.xi0, 1000, 5))
        EXPECT_TRUE(is_member(Y, z, 1e-7));
}

TEST(RadiusMetric, Examples)
{
    EXPECT_DOUBLE_EQ(radius_metric(ConstrainedZonotope::box(Eigen::Vector2d(-1, -1), Eigen::Vector2d(1, 1))), 1.0);
    EXPECT_NEAR(radius_metric(triangle()), 0.3, 1e-6);
    EXPECT_NEAR(radius_metric(triangle().translated(Eigen::Vector2d(10, -3))), 0.3, 1e-6);
}

TEST(SampleMembers, ZonotopeAndTriangle)
{
    const auto Z = ConstrainedZonotope::zonotope(Eigen::MatrixXd::Random(2, 4), Eigen::Vector2d(1, 2));
    for (const auto& z : sample_members(Z, 200, 1))
        EXPECT_TRUE(ot::brute_member(Z, z, 1e-9));
    const auto X = triangle();
    for (const auto& x : sample_members(X, 1000, 2))
        EXPECT_TRUE(ot::brute_member(X, x, 1e-7));
}

TEST(SampleMembers, SeedDeterminism)
{
    const auto a = sample_members(triangle(), 50, 9);
    const auto b = sample_members(triangle(), 50, 9);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_EQ(a[i], b[i]);
}

TEST(Polygon2d, AreaMatchesVertexHull)
{
    std::mt19937_64 rng(13);
    for (int t = 0; t < 10; ++t)
    {
        const auto inst = ot::random_cz(rng, 2, 5, 1);
        std::vector<Eigen::Vector2d> pts;
        for (const auto& v : ot::cz_vertices(inst.Z))
            pts.emplace_back(v(0), v(1));
        const double exact = ot::convex_hull_area(pts);
        const double approx = ot::convex_hull_area(polygon_2d(inst.Z, 720));
        EXPECT_LE(approx, exact * (1 + 1e-6) + 1e-9);
        EXPECT_GE(approx, exact * 0.98);
    }
}
