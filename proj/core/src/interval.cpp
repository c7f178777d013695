#include "czest/interval.hpp"

#include <numbers>
#include <ostream>
#include <sstream>

namespace czest {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// libm transcendental results are faithful but not correctly rounded, so
// their endpoints get one extra outward step on top of the usual one.
Interval widen_libm(double lo, double hi)
{
    return make_outward(detail::round_down(lo), detail::round_up(hi));
}

std::string describe(const Interval& x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// True when some offset + k * period lies in x (within a relative slack that
// only ever reports extra lattice points, which widens results).
bool hits_lattice(const Interval& x, double offset, double period)
{
    const double slack = 1e-12 * std::max(1.0, x.mag());
    const double k_lo = std::ceil((x.lo() - slack - offset) / period);
    const double k_hi = std::floor((x.hi() + slack - offset) / period);
    return k_lo <= k_hi;
}

void require_finite(const Interval& x, const char* fn)
{
    if (!std::isfinite(x.lo()) || !std::isfinite(x.hi()))
        throw DomainError(std::string(fn) + ": unbounded argument " + describe(x));
}

Interval clamp_unit(const Interval& r)
{
    return {std::max(r.lo(), -1.0), std::min(r.hi(), 1.0)};
}

} // namespace

Interval operator/(const Interval& a, const Interval& b)
{
    if (b.contains(0.0))
        throw DomainError("division by interval containing zero: " + describe(b));
    const double q1 = a.lo() / b.lo();
    const double q2 = a.lo() / b.hi();
    const double q3 = a.hi() / b.lo();
    const double q4 = a.hi() / b.hi();
    return make_outward(std::min({q1, q2, q3, q4}), std::max({q1, q2, q3, q4}));
}

Interval sin(const Interval& x)
{
    require_finite(x, "sin");
    if (x.hi() - x.lo() >= kTwoPi)
        return Interval::unit();
    const double s_lo = std::sin(x.lo());
    const double s_hi = std::sin(x.hi());
    double lo = std::min(s_lo, s_hi);
    double hi = std::max(s_lo, s_hi);
    if (hits_lattice(x, 0.5 * kPi, kTwoPi))
        hi = 1.0;
    if (hits_lattice(x, -0.5 * kPi, kTwoPi))
        lo = -1.0;
    return clamp_unit(widen_libm(lo, hi));
}

Interval cos(const Interval& x)
{
    require_finite(x, "cos");
    if (x.hi() - x.lo() >= kTwoPi)
        return Interval::unit();
    const double c_lo = std::cos(x.lo());
    const double c_hi = std::cos(x.hi());
    double lo = std::min(c_lo, c_hi);
    double hi = std::max(c_lo, c_hi);
    if (hits_lattice(x, 0.0, kTwoPi))
        hi = 1.0;
    if (hits_lattice(x, kPi, kTwoPi))
        lo = -1.0;
    return clamp_unit(widen_libm(lo, hi));
}

Interval tan(const Interval& x)
{
    require_finite(x, "tan");
    if (x.hi() - x.lo() >= kPi || hits_lattice(x, 0.5 * kPi, kPi))
        throw DomainError("tan: argument contains a pole: " + describe(x));
    return widen_libm(std::tan(x.lo()), std::tan(x.hi()));
}

Interval sec(const Interval& x)
{
    require_finite(x, "sec");
    const Interval c = cos(x);
    if (c.contains(0.0))
        throw DomainError("sec: argument contains a pole: " + describe(x));
    return Interval(1.0) / c;
}

Interval sqrt(const Interval& x)
{
    if (x.lo() < 0.0)
        throw DomainError("sqrt: negative argument " + describe(x));
    const Interval r = widen_libm(std::sqrt(x.lo()), std::sqrt(x.hi()));
    return {std::max(0.0, r.lo()), r.hi()};
}

Interval sqr(const Interval& x)
{
    const double a = x.lo() * x.lo();
    const double b = x.hi() * x.hi();
    if (x.contains(0.0))
        return {0.0, detail::round_up(std::max(a, b))};
    const Interval r = make_outward(std::min(a, b), std::max(a, b));
    return {std::max(0.0, r.lo()), r.hi()};
}

Interval reciprocal_shift(const Interval& x, double k)
{
    const Interval d = x + Interval(k);
    if (d.contains(0.0))
        throw DomainError("reciprocal_shift: 1/(" + std::to_string(k) + " + x) with x = " +
                          describe(x) + " crosses zero");
    return Interval(1.0) / d;
}

std::ostream& operator<<(std::ostream& os, const Interval& x)
{
    return os << '[' << x.lo() << ", " << x.hi() << ']';
}

// ---------------------------------------------------------------------------
// vectors

IntervalVector IntervalVector::from_point(const Eigen::VectorXd& v)
{
    IntervalVector out(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out[i] = Interval(v(i));
    return out;
}

IntervalVector IntervalVector::from_bounds(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi)
{
    if (lo.size() != hi.size())
        throw DimensionError("IntervalVector::from_bounds: size mismatch");
    IntervalVector out(static_cast<std::size_t>(lo.size()));
    for (Eigen::Index i = 0; i < lo.size(); ++i)
        out[i] = Interval(lo(i), hi(i));
    return out;
}

Eigen::VectorXd IntervalVector::lower() const
{
    Eigen::VectorXd out(size());
    for (std::size_t i = 0; i < size(); ++i)
        out(i) = elems_[i].lo();
    return out;
}

Eigen::VectorXd IntervalVector::upper() const
{
    Eigen::VectorXd out(size());
    for (std::size_t i = 0; i < size(); ++i)
        out(i) = elems_[i].hi();
    return out;
}

Eigen::VectorXd IntervalVector::mid() const
{
    Eigen::VectorXd out(size());
    for (std::size_t i = 0; i < size(); ++i)
        out(i) = elems_[i].mid();
    return out;
}

Eigen::VectorXd IntervalVector::rad() const
{
    Eigen::VectorXd out(size());
    for (std::size_t i = 0; i < size(); ++i)
        out(i) = elems_[i].rad();
    return out;
}

Eigen::VectorXd IntervalVector::diam() const
{
    return 2.0 * rad();
}

bool IntervalVector::contains(const Eigen::VectorXd& x) const
{
    if (static_cast<std::size_t>(x.size()) != size())
        throw DimensionError("IntervalVector::contains: size mismatch");
    for (std::size_t i = 0; i < size(); ++i)
    {
        if (!elems_[i].contains(x(i)))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// matrices

IntervalMatrix IntervalMatrix::from_point(const Eigen::MatrixXd& m)
{
    IntervalMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(i, j) = Interval(m(i, j));
    return out;
}

IntervalMatrix IntervalMatrix::from_mid_rad(const Eigen::MatrixXd& mid, const Eigen::MatrixXd& rad)
{
    if (mid.rows() != rad.rows() || mid.cols() != rad.cols())
        throw DimensionError("IntervalMatrix::from_mid_rad: shape mismatch");
    IntervalMatrix out(mid.rows(), mid.cols());
    for (Eigen::Index i = 0; i < mid.rows(); ++i)
        for (Eigen::Index j = 0; j < mid.cols(); ++j)
            out(i, j) = make_outward(mid(i, j) - std::abs(rad(i, j)), mid(i, j) + std::abs(rad(i, j)));
    return out;
}

Eigen::MatrixXd IntervalMatrix::lower() const
{
    Eigen::MatrixXd out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(i, j) = (*this)(i, j).lo();
    return out;
}

Eigen::MatrixXd IntervalMatrix::upper() const
{
    Eigen::MatrixXd out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(i, j) = (*this)(i, j).hi();
    return out;
}

Eigen::MatrixXd IntervalMatrix::mid() const
{
    Eigen::MatrixXd out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(i, j) = (*this)(i, j).mid();
    return out;
}

Eigen::MatrixXd IntervalMatrix::rad() const
{
    Eigen::MatrixXd out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(i, j) = (*this)(i, j).rad();
    return out;
}

Eigen::MatrixXd IntervalMatrix::diam() const
{
    return 2.0 * rad();
}

IntervalMatrix IntervalMatrix::transpose() const
{
    IntervalMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out(j, i) = (*this)(i, j);
    return out;
}

bool IntervalMatrix::contains(const Eigen::MatrixXd& m) const
{
    if (static_cast<std::size_t>(m.rows()) != rows_ || static_cast<std::size_t>(m.cols()) != cols_)
        throw DimensionError("IntervalMatrix::contains: shape mismatch");
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!(*this)(i, j).contains(m(i, j)))
                return false;
    return true;
}

namespace {

// Outward-rounded accumulation of sum_k x_k * r_k with real r_k.
struct Accumulator
{
    double lo = 0.0;
    double hi = 0.0;

    void add_scaled(const Interval& x, double r)
    {
        if (r == 0.0)
            return;
        const Interval p = scale(x, r);
        lo = detail::round_down(lo + p.lo());
        hi = detail::round_up(hi + p.hi());
    }

    void add(const Interval& p)
    {
        lo = detail::round_down(lo + p.lo());
        hi = detail::round_up(hi + p.hi());
    }

    Interval value() const { return {lo, hi}; }
};

} // namespace

IntervalVector operator*(const IntervalMatrix& m, const Eigen::VectorXd& v)
{
    if (static_cast<std::size_t>(v.size()) != m.cols())
        throw DimensionError("IntervalMatrix * vector: size mismatch");
    IntervalVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        Accumulator acc;
        for (std::size_t k = 0; k < m.cols(); ++k)
            acc.add_scaled(m(i, k), v(k));
        out[i] = acc.value();
    }
    return out;
}

IntervalVector operator*(const IntervalMatrix& m, const IntervalVector& v)
{
    if (v.size() != m.cols())
        throw DimensionError("IntervalMatrix * IntervalVector: size mismatch");
    IntervalVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
    {
        Accumulator acc;
        for (std::size_t k = 0; k < m.cols(); ++k)
            acc.add(m(i, k) * v[k]);
        out[i] = acc.value();
    }
    return out;
}

IntervalMatrix operator*(const IntervalMatrix& m, const Eigen::MatrixXd& r)
{
    if (static_cast<std::size_t>(r.rows()) != m.cols())
        throw DimensionError("IntervalMatrix * matrix: shape mismatch");
    IntervalMatrix out(m.rows(), r.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < r.cols(); ++j)
        {
            Accumulator acc;
            for (std::size_t k = 0; k < m.cols(); ++k)
                acc.add_scaled(m(i, k), r(k, j));
            out(i, j) = acc.value();
        }
    return out;
}

IntervalMatrix operator*(const Eigen::MatrixXd& l, const IntervalMatrix& m)
{
    if (static_cast<std::size_t>(l.cols()) != m.rows())
        throw DimensionError("matrix * IntervalMatrix: shape mismatch");
    IntervalMatrix out(l.rows(), m.cols());
    for (Eigen::Index i = 0; i < l.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
        {
            Accumulator acc;
            for (std::size_t k = 0; k < m.rows(); ++k)
                acc.add_scaled(m(k, j), l(i, k));
            out(i, j) = acc.value();
        }
    return out;
}

IntervalMatrix operator-(const IntervalMatrix& m, const Eigen::MatrixXd& r)
{
    if (static_cast<std::size_t>(r.rows()) != m.rows() || static_cast<std::size_t>(r.cols()) != m.cols())
        throw DimensionError("IntervalMatrix - matrix: shape mismatch");
    IntervalMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = m(i, j) - Interval(r(i, j));
    return out;
}

IntervalMatrix scale(const IntervalMatrix& m, double s)
{
    IntervalMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = scale(m(i, j), s);
    return out;
}

IntervalVector left_multiply(const Eigen::VectorXd& v, const IntervalMatrix& m)
{
    if (static_cast<std::size_t>(v.size()) != m.rows())
        throw DimensionError("vector^T * IntervalMatrix: size mismatch");
    IntervalVector out(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
    {
        Accumulator acc;
        for (std::size_t k = 0; k < m.rows(); ++k)
            acc.add_scaled(m(k, j), v(k));
        out[j] = acc.value();
    }
    return out;
}

IntervalStats interval_stats(const Interval& x)
{
    IntervalStats s;
    s.mid = Eigen::MatrixXd::Constant(1, 1, x.mid());
    s.rad = Eigen::MatrixXd::Constant(1, 1, x.rad());
    s.diam = Eigen::MatrixXd::Constant(1, 1, x.diam());
    return s;
}

IntervalStats interval_stats(const IntervalVector& x)
{
    return {x.mid(), x.rad(), x.diam()};
}

IntervalStats interval_stats(const IntervalMatrix& x)
{
    return {x.mid(), x.rad(), x.diam()};
}

} // namespace czest
