#include "czest/set_queries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "czest/error.hpp"
#include "czest/lp.hpp"
#include "czest/reduction.hpp"
#include "czest/rng.hpp"

namespace czest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LpProblem box_problem(const ConstrainedZonotope& Z, const Eigen::VectorXd& cost)
{
    LpProblem p;
    p.cost = cost;
    p.eq_matrix = Z.A();
    p.eq_rhs = Z.b();
    p.lower = -Eigen::VectorXd::Ones(Z.num_generators());
    p.upper = Eigen::VectorXd::Ones(Z.num_generators());
    return p;
}

void check_dim(const ConstrainedZonotope& Z, const Eigen::VectorXd& p, const char* fn)
{
    if (p.size() != Z.dim())
        throw DimensionError(std::string(fn) + ": point has dimension " + std::to_string(p.size()) +
                             ", set has " + std::to_string(Z.dim()));
}

} // namespace

IntervalVector interval_hull(const ConstrainedZonotope& Z)
{
    const Eigen::Index n = Z.dim();
    IntervalVector out(static_cast<std::size_t>(n));
    if (Z.is_zonotope())
    {
        const Eigen::VectorXd r = Z.G().cwiseAbs().rowwise().sum();
        for (Eigen::Index i = 0; i < n; ++i)
            out[i] = Interval(Z.c()(i) - r(i), Z.c()(i) + r(i));
        return out;
    }
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const Eigen::VectorXd row = Z.G().row(i).transpose();
        const LpSolution lo = solve_lp(box_problem(Z, row));
        if (!lo.optimal())
            throw EmptySetError("interval_hull: constraint set is empty");
        const LpSolution hi = solve_lp(box_problem(Z, -row));
        if (!hi.optimal())
            throw EmptySetError("interval_hull: constraint set is empty");
        const double a = Z.c()(i) + lo.objective;
        const double b = Z.c()(i) - hi.objective;
        out[i] = Interval(std::min(a, b), std::max(a, b));
    }
    return out;
}

IntervalVector enclosing_box(const ConstrainedZonotope& Z)
{
    IntervalVector h = interval_hull(Z);
    for (auto& x : h)
    {
        const double pad = Z.is_zonotope() ? 4e-16 * (1.0 + x.mag()) : 1e-8 * (1.0 + x.mag());
        x = make_outward(x.lo() - pad, x.hi() + pad);
    }
    return h;
}

bool is_member(const ConstrainedZonotope& Z, const Eigen::VectorXd& p, double tol)
{
    check_dim(Z, p, "is_member");
    LpProblem lp = box_problem(Z, Eigen::VectorXd::Zero(Z.num_generators()));
    lp.eq_matrix = vstack(Z.G(), Z.A());
    lp.eq_rhs = vcat(p - Z.c(), Z.b());
    const double threshold = tol * std::max(1.0, p.lpNorm<Eigen::Infinity>());
    return solve_feasibility(lp, threshold).optimal();
}

bool is_empty(const ConstrainedZonotope& Z)
{
    if (Z.is_zonotope())
        return false;
    const LpProblem lp = box_problem(Z, Eigen::VectorXd::Zero(Z.num_generators()));
    return !solve_feasibility(lp, 1e-9 * (1.0 + Z.b().lpNorm<Eigen::Infinity>())).optimal();
}

Eigen::VectorXd closest_point(const ConstrainedZonotope& Z, const Eigen::VectorXd& h)
{
    check_dim(Z, h, "closest_point");
    const Eigen::Index n = Z.dim();
    const Eigen::Index ng = Z.num_generators();
    const Eigen::Index nc = Z.num_constraints();
    // variables: xi (ng), p (n), q (n) with G xi - p + q = h - c
    LpProblem lp;
    lp.cost = Eigen::VectorXd::Zero(ng + 2 * n);
    lp.cost.tail(2 * n).setOnes();
    lp.eq_matrix = Eigen::MatrixXd::Zero(n + nc, ng + 2 * n);
    lp.eq_matrix.topLeftCorner(n, ng) = Z.G();
    lp.eq_matrix.block(0, ng, n, n) = -Eigen::MatrixXd::Identity(n, n);
    lp.eq_matrix.block(0, ng + n, n, n) = Eigen::MatrixXd::Identity(n, n);
    lp.eq_matrix.bottomLeftCorner(nc, ng) = Z.A();
    lp.eq_rhs = vcat(h - Z.c(), Z.b());
    lp.lower = Eigen::VectorXd::Zero(ng + 2 * n);
    lp.lower.head(ng).setConstant(-1.0);
    lp.upper = Eigen::VectorXd::Constant(ng + 2 * n, kInf);
    lp.upper.head(ng).setOnes();
    const LpSolution s = solve_lp(lp);
    if (!s.optimal())
        throw EmptySetError("closest_point: set is empty");
    return Z.c() + Z.G() * s.x.head(ng);
}

ConstrainedZonotope rescale_with_center(const ConstrainedZonotope& Z, const Eigen::VectorXd& h)
{
    check_dim(Z, h, "rescale_with_center");
    const Eigen::Index ng = Z.num_generators();
    const Eigen::Index nc = Z.num_constraints();
    const Eigen::Index n = Z.dim();
    const Eigen::VectorXd d = h - Z.c();

    if (ng == 0 || (Z.G() * Z.G().completeOrthogonalDecomposition().solve(d) - d).norm() >
                       1e-8 * (1.0 + d.norm()))
        throw DomainError("rescale_with_center: h - c is not in the range of G");

    const GeneratorBounds bounds = tighten_generator_bounds(Z.A(), Z.b());
    if (bounds.empty)
        throw EmptySetError("rescale_with_center: set is empty");

    // variables: xi_L (ng) <= lo_tight, xi_U (ng) >= hi_tight
    LpProblem lp;
    lp.cost = Eigen::VectorXd::Constant(2 * ng, 0.5);
    lp.cost.head(ng).setConstant(-0.5);
    lp.eq_matrix = 0.5 * hstack(Z.G(), Z.G());
    lp.eq_rhs = d;
    lp.lower = vcat(Eigen::VectorXd::Constant(ng, -kInf), bounds.hi);
    lp.upper = vcat(bounds.lo, Eigen::VectorXd::Constant(ng, kInf));
    const LpSolution s = solve_lp(lp);
    if (!s.optimal())
        throw DomainError("rescale_with_center: recentering LP failed (" + std::string(to_string(s.status)) + ")");
    const Eigen::VectorXd xl = s.x.head(ng);
    const Eigen::VectorXd xu = s.x.tail(ng);
    const Eigen::VectorXd xi_m = 0.5 * (xl + xu);
    const Eigen::VectorXd er = 0.5 * (xu - xl);
    const Eigen::MatrixXd GE = Z.G() * er.asDiagonal();

    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, 2 * ng);
    G.leftCols(ng) = GE;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * nc + n, 2 * ng);
    A.topLeftCorner(nc, ng) = Z.A() * er.asDiagonal();
    A.block(nc, ng, nc, ng) = Z.A();
    A.block(2 * nc, 0, n, ng) = GE;
    A.block(2 * nc, ng, n, ng) = -Z.G();
    Eigen::VectorXd b(2 * nc + n);
    b << Z.b() - Z.A() * xi_m, Z.b(), Z.c() - h;
    return {std::move(G), h, std::move(A), std::move(b)};
}

double radius_metric(const ConstrainedZonotope& Z)
{
    const IntervalVector h = interval_hull(Z);
    double r = 0.0;
    for (const auto& x : h)
        r = std::max(r, 0.5 * (x.hi() - x.lo()));
    return r;
}

double support(const ConstrainedZonotope& Z, const Eigen::VectorXd& d, Eigen::VectorXd* argmax)
{
    check_dim(Z, d, "support");
    const Eigen::VectorXd w = Z.G().transpose() * d;
    Eigen::VectorXd xi;
    if (Z.is_zonotope())
    {
        xi = w.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
    }
    else
    {
        const LpSolution s = solve_lp(box_problem(Z, -w));
        if (!s.optimal())
            throw EmptySetError("support: set is empty");
        xi = s.x;
    }
    if (argmax)
        *argmax = Z.c() + Z.G() * xi;
    return d.dot(Z.c()) + w.dot(xi);
}

std::vector<Eigen::VectorXd> sample_members(const ConstrainedZonotope& Z, std::size_t count, std::uint64_t seed)
{
    const Eigen::Index ng = Z.num_generators();
    std::vector<Eigen::VectorXd> out;
    out.reserve(count);
    CounterRng rng(seed, 0, 0x5a3e);
    std::uint64_t draw = 0;

    if (Z.is_zonotope())
    {
        for (std::size_t s = 0; s < count; ++s)
        {
            Eigen::VectorXd xi(ng);
            for (Eigen::Index j = 0; j < ng; ++j)
                xi(j) = rng.uniform(draw++, -1.0, 1.0);
            out.push_back(Z.c() + Z.G() * xi);
        }
        return out;
    }

    const GeneratorBounds bounds = tighten_generator_bounds(Z.A(), Z.b());
    if (bounds.empty || is_empty(Z))
        throw EmptySetError("sample_members: set is empty");

    // interior anchor: average of the coordinate-extreme feasible points
    Eigen::VectorXd anchor = Eigen::VectorXd::Zero(ng);
    for (Eigen::Index j = 0; j < ng; ++j)
    {
        for (double sgn : {1.0, -1.0})
        {
            Eigen::VectorXd cost = Eigen::VectorXd::Zero(ng);
            cost(j) = sgn;
            const LpSolution s = solve_lp(box_problem(Z, cost));
            if (!s.optimal())
                throw EmptySetError("sample_members: set is empty");
            anchor += s.x;
        }
    }
    anchor /= static_cast<double>(2 * ng);

    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(Z.A());
    for (std::size_t s = 0; s < count; ++s)
    {
        Eigen::VectorXd xi(ng);
        for (Eigen::Index j = 0; j < ng; ++j)
            xi(j) = rng.uniform(draw++, bounds.lo(j), bounds.hi(j));
        xi -= cod.solve(Z.A() * xi - Z.b());
        // pull back toward the anchor until the box holds
        double t = 1.0;
        for (Eigen::Index j = 0; j < ng; ++j)
        {
            const double dj = xi(j) - anchor(j);
            if (xi(j) > 1.0 && dj > 0.0)
                t = std::min(t, (1.0 - anchor(j)) / dj);
            else if (xi(j) < -1.0 && dj < 0.0)
                t = std::min(t, (-1.0 - anchor(j)) / dj);
        }
        t = std::max(0.0, t);
        xi = anchor + t * (xi - anchor);
        xi = xi.cwiseMax(-1.0).cwiseMin(1.0);
        out.push_back(Z.c() + Z.G() * xi);
    }
    return out;
}

std::vector<Eigen::Vector2d> polygon_2d(const ConstrainedZonotope& Z, int directions)
{
    if (Z.dim() != 2)
        throw DimensionError("polygon_2d: set must be 2-D");
    std::vector<Eigen::Vector2d> pts;
    for (int k = 0; k < directions; ++k)
    {
        const double a = 2.0 * std::numbers::pi * k / directions;
        Eigen::VectorXd d(2);
        d << std::cos(a), std::sin(a);
        Eigen::VectorXd x;
        support(Z, d, &x);
        const Eigen::Vector2d p(x(0), x(1));
        if (pts.empty() || (pts.back() - p).norm() > 1e-9 * (1.0 + p.norm()))
            pts.push_back(p);
    }
    while (pts.size() > 1 && (pts.front() - pts.back()).norm() <= 1e-9 * (1.0 + pts.front().norm()))
        pts.pop_back();
    return pts;
}

} // namespace czest
