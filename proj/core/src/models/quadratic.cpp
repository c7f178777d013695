#include "czest/models/quadratic.hpp"

#include "czest/constrained_zonotope.hpp"
#include "czest/error.hpp"

namespace czest::models {

Quadratic::Quadratic(Eigen::VectorXd a, Eigen::MatrixXd B, std::vector<Eigen::MatrixXd> H, Eigen::Index n_w)
    : a_(std::move(a)), B_(std::move(B)), H_(std::move(H)), n_w_(n_w)
{
    const Eigen::Index n = a_.size();
    const Eigen::Index m = n + n_w_;
    if (B_.rows() != n || B_.cols() != m)
        throw DimensionError("Quadratic: B must be n x (n + n_w)");
    if (H_.empty())
        H_.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(m, m));
    if (static_cast<Eigen::Index>(H_.size()) != n)
        throw DimensionError("Quadratic: need one H per output");
    for (auto& h : H_)
    {
        if (h.rows() != m || h.cols() != m)
            throw DimensionError("Quadratic: H must be (n + n_w) square");
        // fold the strict lower triangle into the upper one
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < i; ++j)
            {
                h(j, i) += h(i, j);
                h(i, j) = 0.0;
            }
        if (h.rightCols(n_w_).cwiseAbs().maxCoeff() > 0.0)
            affine_w_ = false;
    }
}

Quadratic Quadratic::affine(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Bw)
{
    return {Eigen::VectorXd::Zero(A.rows()), hstack(A, Bw), {}, Bw.cols()};
}

Eigen::VectorXd Quadratic::eval(const Eigen::VectorXd& x, const Eigen::VectorXd&, const Eigen::VectorXd& w) const
{
    const Eigen::VectorXd z = vcat(x, w);
    Eigen::VectorXd out = a_ + B_ * z;
    for (Eigen::Index q = 0; q < out.size(); ++q)
        out(q) += z.dot(H_[static_cast<std::size_t>(q)] * z);
    return out;
}

IntervalMatrix Quadratic::jacobian(const IntervalVector& Z) const
{
    const Eigen::Index n = a_.size();
    const Eigen::Index m = n + n_w_;
    IntervalMatrix J(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
    for (Eigen::Index q = 0; q < n; ++q)
    {
        const Eigen::MatrixXd S = H_[static_cast<std::size_t>(q)] + H_[static_cast<std::size_t>(q)].transpose();
        const IntervalVector row = IntervalMatrix::from_point(S) * Z;
        for (Eigen::Index k = 0; k < m; ++k)
            J(static_cast<std::size_t>(q), static_cast<std::size_t>(k)) = Interval(B_(q, k)) + row[static_cast<std::size_t>(k)];
    }
    return J;
}

namespace {

IntervalVector join(const IntervalVector& a, const IntervalVector& b)
{
    IntervalVector out(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        out[a.size() + i] = b[i];
    return out;
}

IntervalMatrix columns(const IntervalMatrix& J, std::size_t first, std::size_t count)
{
    IntervalMatrix out(J.rows(), count);
    for (std::size_t i = 0; i < J.rows(); ++i)
        for (std::size_t j = 0; j < count; ++j)
            out(i, j) = J(i, first + j);
    return out;
}

} // namespace

IntervalMatrix Quadratic::jacobian_x(const IntervalVector& X, const Eigen::VectorXd&, const IntervalVector& W) const
{
    return columns(jacobian(join(X, W)), 0, static_cast<std::size_t>(a_.size()));
}

IntervalMatrix Quadratic::jacobian_w(const IntervalVector& X, const Eigen::VectorXd&, const IntervalVector& W) const
{
    return columns(jacobian(join(X, W)), static_cast<std::size_t>(a_.size()), static_cast<std::size_t>(n_w_));
}

std::vector<IntervalMatrix> Quadratic::hessians(const IntervalVector&, const Eigen::VectorXd&) const
{
    std::vector<IntervalMatrix> out;
    out.reserve(H_.size());
    for (const auto& h : H_)
        out.push_back(IntervalMatrix::from_point(h));
    return out;
}

} // namespace czest::models
