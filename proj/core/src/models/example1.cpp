#include "czest/models/example1.hpp"

namespace czest::models {

namespace {

const Interval kTwoSevenths = make_outward(2.0 / 7.0, 2.0 / 7.0);

} // namespace

Eigen::VectorXd Example1::eval(const Eigen::VectorXd& x, const Eigen::VectorXd&, const Eigen::VectorXd& w) const
{
    const double x1 = x(0), x2 = x(1);
    const double s = x1 / (4.0 + x1);
    Eigen::VectorXd out(2);
    out(0) = 3.0 * x1 - x1 * x1 / 7.0 - 4.0 * s * x2 + w(0);
    out(1) = -2.0 * x2 + 3.0 * s * x2 + w(1);
    return out;
}

// x1 / (4 + x1) is written 1 - 4 / (4 + x1) so x1 occurs once.
IntervalMatrix Example1::jacobian_x(const IntervalVector& X, const Eigen::VectorXd&, const IntervalVector&) const
{
    const Interval& x1 = X[0];
    const Interval& x2 = X[1];
    const Interval r = reciprocal_shift(x1, 4.0);
    const Interval r2 = sqr(r);
    IntervalMatrix J(2, 2);
    J(0, 0) = Interval(3.0) - x1 * kTwoSevenths - scale(x2 * r2, 16.0);
    J(0, 1) = Interval(-4.0) + scale(r, 16.0);
    J(1, 0) = scale(x2 * r2, 12.0);
    J(1, 1) = Interval(1.0) - scale(r, 12.0);
    return J;
}

IntervalMatrix Example1::jacobian_w(const IntervalVector&, const Eigen::VectorXd&, const IntervalVector&) const
{
    IntervalMatrix J(2, 2, Interval(0.0));
    J(0, 0) = Interval(1.0);
    J(1, 1) = Interval(1.0);
    return J;
}

std::vector<IntervalMatrix> Example1::hessians(const IntervalVector& Z, const Eigen::VectorXd&) const
{
    const Interval& x1 = Z[0];
    const Interval& x2 = Z[1];
    const Interval r = reciprocal_shift(x1, 4.0);
    const Interval r2 = sqr(r);
    const Interval r3 = r2 * r;
    std::vector<IntervalMatrix> H(2, IntervalMatrix(4, 4, Interval(0.0)));
    // d2/dx1^2 of f1 is -2/7 + 32 x2 / (4 + x1)^3
    H[0](0, 0) = scale(kTwoSevenths, -0.5) + scale(x2 * r3, 16.0);
    H[0](0, 1) = scale(r2, -16.0);
    H[1](0, 0) = scale(x2 * r3, -12.0);
    H[1](0, 1) = scale(r2, 12.0);
    return H;
}

} // namespace czest::models
