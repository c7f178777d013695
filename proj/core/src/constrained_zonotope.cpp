#include "czest/constrained_zonotope.hpp"

#include <cmath>
#include <string>

#include "czest/error.hpp"

namespace czest {

ConstrainedZonotope::ConstrainedZonotope(Eigen::MatrixXd G, Eigen::VectorXd c, Eigen::MatrixXd A,
                                         Eigen::VectorXd b)
    : G_(std::move(G)), c_(std::move(c)), A_(std::move(A)), b_(std::move(b))
{
    if (G_.rows() != c_.size())
        throw DimensionError("ConstrainedZonotope: G has " + std::to_string(G_.rows()) +
                             " rows but c has " + std::to_string(c_.size()) + " entries");
    if (A_.rows() == 0 && A_.cols() != G_.cols())
        A_.resize(0, G_.cols());
    if (A_.cols() != G_.cols())
        throw DimensionError("ConstrainedZonotope: A and G column counts differ");
    if (A_.rows() != b_.size())
        throw DimensionError("ConstrainedZonotope: A rows and b length differ");
}

ConstrainedZonotope ConstrainedZonotope::zonotope(Eigen::MatrixXd G, Eigen::VectorXd c)
{
    const Eigen::Index ng = G.cols();
    return {std::move(G), std::move(c), Eigen::MatrixXd(0, ng), Eigen::VectorXd(0)};
}

ConstrainedZonotope ConstrainedZonotope::point(Eigen::VectorXd c)
{
    const Eigen::Index n = c.size();
    return zonotope(Eigen::MatrixXd(n, 0), std::move(c));
}

ConstrainedZonotope ConstrainedZonotope::box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi)
{
    if (lo.size() != hi.size())
        throw DimensionError("ConstrainedZonotope::box: bound sizes differ");
    const Eigen::Index n = lo.size();
    Eigen::Index ng = 0;
    for (Eigen::Index i = 0; i < n; ++i)
    {
        if (!(lo(i) <= hi(i)))
            throw DomainError("ConstrainedZonotope::box: lo > hi");
        if (hi(i) > lo(i))
            ++ng;
    }
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, ng);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < n; ++i)
    {
        if (hi(i) > lo(i))
            G(i, k++) = 0.5 * (hi(i) - lo(i));
    }
    return zonotope(std::move(G), 0.5 * (lo + hi));
}

ConstrainedZonotope ConstrainedZonotope::ball_inf(const Eigen::VectorXd& center, double radius)
{
    const Eigen::Index n = center.size();
    return zonotope(std::abs(radius) * Eigen::MatrixXd::Identity(n, n), center);
}

ConstrainedZonotope ConstrainedZonotope::translated(const Eigen::VectorXd& d) const
{
    if (d.size() != dim())
        throw DimensionError("translated: offset dimension mismatch");
    return {G_, c_ + d, A_, b_};
}

Eigen::MatrixXd vstack(const Eigen::MatrixXd& top, const Eigen::MatrixXd& bottom)
{
    if (top.cols() != bottom.cols())
        throw DimensionError("vstack: column counts differ");
    Eigen::MatrixXd out(top.rows() + bottom.rows(), top.cols());
    out.topRows(top.rows()) = top;
    out.bottomRows(bottom.rows()) = bottom;
    return out;
}

Eigen::MatrixXd hstack(const Eigen::MatrixXd& left, const Eigen::MatrixXd& right)
{
    if (left.rows() != right.rows())
        throw DimensionError("hstack: row counts differ");
    Eigen::MatrixXd out(left.rows(), left.cols() + right.cols());
    out.leftCols(left.cols()) = left;
    out.rightCols(right.cols()) = right;
    return out;
}

Eigen::MatrixXd blkdiag(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b)
{
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

Eigen::VectorXd vcat(const Eigen::VectorXd& a, const Eigen::VectorXd& b)
{
    Eigen::VectorXd out(a.size() + b.size());
    out << a, b;
    return out;
}

ConstrainedZonotope linear_map(const Eigen::MatrixXd& R, const ConstrainedZonotope& Z)
{
    if (R.cols() != Z.dim())
        throw DimensionError("linear_map: R has " + std::to_string(R.cols()) + " columns, set dimension is " +
                             std::to_string(Z.dim()));
    return {R * Z.G(), R * Z.c(), Z.A(), Z.b()};
}

ConstrainedZonotope minkowski_sum(const ConstrainedZonotope& Z, const ConstrainedZonotope& W)
{
    if (Z.dim() != W.dim())
        throw DimensionError("minkowski_sum: dimension mismatch");
    return {hstack(Z.G(), W.G()), Z.c() + W.c(), blkdiag(Z.A(), W.A()), vcat(Z.b(), W.b())};
}

ConstrainedZonotope generalized_intersect(const ConstrainedZonotope& Z, const Eigen::MatrixXd& R,
                                          const ConstrainedZonotope& Y)
{
    if (R.cols() != Z.dim() || R.rows() != Y.dim())
        throw DimensionError("generalized_intersect: R must be " + std::to_string(Y.dim()) + "x" +
                             std::to_string(Z.dim()));
    const Eigen::Index ngz = Z.num_generators();
    const Eigen::Index ngy = Y.num_generators();
    const Eigen::Index ncz = Z.num_constraints();
    const Eigen::Index ncy = Y.num_constraints();
    const Eigen::Index m = Y.dim();

    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(Z.dim(), ngz + ngy);
    G.leftCols(ngz) = Z.G();

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(ncz + ncy + m, ngz + ngy);
    A.topLeftCorner(ncz, ngz) = Z.A();
    A.block(ncz, ngz, ncy, ngy) = Y.A();
    A.block(ncz + ncy, 0, m, ngz) = R * Z.G();
    A.block(ncz + ncy, ngz, m, ngy) = -Y.G();

    Eigen::VectorXd b(ncz + ncy + m);
    b << Z.b(), Y.b(), Y.c() - R * Z.c();
    return {std::move(G), Z.c(), std::move(A), std::move(b)};
}

ConstrainedZonotope intersect(const ConstrainedZonotope& Z, const ConstrainedZonotope& Y)
{
    return generalized_intersect(Z, Eigen::MatrixXd::Identity(Z.dim(), Z.dim()), Y);
}

ConstrainedZonotope cartesian_product(const ConstrainedZonotope& X, const ConstrainedZonotope& W)
{
    return {blkdiag(X.G(), W.G()), vcat(X.c(), W.c()), blkdiag(X.A(), W.A()), vcat(X.b(), W.b())};
}

} // namespace czest
