#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "czest/error.hpp"

namespace czest {

namespace detail {

inline double round_down(double x)
{
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

inline double round_up(double x)
{
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

} // namespace detail

/**
 * Compact real interval [lo, hi] with outward-rounded arithmetic.
 *
 * Every elementary operation computes its endpoints in round-to-nearest and
 * then steps each endpoint one representable value outward, so the result
 * always encloses the exact real image. Empty intervals cannot be built.
 */
class Interval
{
public:
    constexpr Interval() = default;

    // NOLINTNEXTLINE(google-explicit-constructor): a real is a degenerate interval
    Interval(double value) : Interval(value, value) {}

    Interval(double lo, double hi) : lo_(lo), hi_(hi)
    {
        if (!(lo <= hi)) // also rejects NaN
        {
            throw DomainError("Interval: invalid endpoints [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
        }
    }

    /// [-r, r]
    static Interval symmetric(double r) { return {-std::abs(r), std::abs(r)}; }

    static Interval unit() { return {-1.0, 1.0}; }

    double lo() const { return lo_; }
    double hi() const { return hi_; }

    double mid() const { return 0.5 * lo_ + 0.5 * hi_; }

    /// Radius, rounded so that [mid - rad, mid + rad] contains the interval.
    double rad() const
    {
        const double m = mid();
        double r = 0.5 * (hi_ - lo_);
        while (m - r > lo_ || m + r < hi_)
        {
            r = detail::round_up(r);
        }
        return r;
    }

    double diam() const { return 2.0 * rad(); }

    /// Largest absolute value of any member.
    double mag() const { return std::max(std::abs(lo_), std::abs(hi_)); }

    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }
    bool is_degenerate() const { return lo_ == hi_; }

    /// Smallest interval containing both operands.
    Interval hull(const Interval& other) const
    {
        return {std::min(lo_, other.lo_), std::max(hi_, other.hi_)};
    }

    std::optional<Interval> intersect(const Interval& other) const
    {
        const double lo = std::max(lo_, other.lo_);
        const double hi = std::min(hi_, other.hi_);
        if (lo > hi)
            return std::nullopt;
        return Interval(lo, hi);
    }

    bool operator==(const Interval& other) const = default;

private:
    // endpoints that are already known to satisfy lo <= hi
    struct Unchecked
    {
    };
    Interval(double lo, double hi, Unchecked) : lo_(lo), hi_(hi) {}

    friend Interval make_outward(double lo, double hi);

    double lo_ = 0.0;
    double hi_ = 0.0;
};

/// Builds [round_down(lo), round_up(hi)].
inline Interval make_outward(double lo, double hi)
{
    return {detail::round_down(lo), detail::round_up(hi), Interval::Unchecked{}};
}

inline Interval operator+(const Interval& a, const Interval& b)
{
    return make_outward(a.lo() + b.lo(), a.hi() + b.hi());
}

inline Interval operator-(const Interval& a, const Interval& b)
{
    return make_outward(a.lo() - b.hi(), a.hi() - b.lo());
}

inline Interval operator-(const Interval& a)
{
    return {-a.hi(), -a.lo()};
}

inline Interval operator*(const Interval& a, const Interval& b)
{
    const double p1 = a.lo() * b.lo();
    const double p2 = a.lo() * b.hi();
    const double p3 = a.hi() * b.lo();
    const double p4 = a.hi() * b.hi();
    return make_outward(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

/// Interval times a real scalar.
inline Interval scale(const Interval& a, double s)
{
    const double p1 = a.lo() * s;
    const double p2 = a.hi() * s;
    return make_outward(std::min(p1, p2), std::max(p1, p2));
}

/// Throws DomainError when 0 is in b.
Interval operator/(const Interval& a, const Interval& b);

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }

Interval sin(const Interval& x);
Interval cos(const Interval& x);
/// Requires x to exclude every odd multiple of pi/2.
Interval tan(const Interval& x);
/// 1 / cos(x); requires cos to keep one sign over x.
Interval sec(const Interval& x);
/// Requires x.lo() >= 0.
Interval sqrt(const Interval& x);
Interval sqr(const Interval& x);
/// 1 / (k + x); requires 0 not in k + x.
Interval reciprocal_shift(const Interval& x, double k);

std::ostream& operator<<(std::ostream& os, const Interval& x);

/// Dense vector of intervals.
class IntervalVector
{
public:
    IntervalVector() = default;
    explicit IntervalVector(std::size_t n, const Interval& fill = Interval()) : elems_(n, fill) {}
    IntervalVector(std::initializer_list<Interval> init) : elems_(init) {}
    explicit IntervalVector(std::vector<Interval> elems) : elems_(std::move(elems)) {}

    /// Degenerate vector [v, v].
    static IntervalVector from_point(const Eigen::VectorXd& v);
    /// Elementwise [lo_i, hi_i].
    static IntervalVector from_bounds(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);

    std::size_t size() const { return elems_.size(); }
    Interval& operator[](std::size_t i) { return elems_[i]; }
    const Interval& operator[](std::size_t i) const { return elems_[i]; }

    auto begin() { return elems_.begin(); }
    auto end() { return elems_.end(); }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    Eigen::VectorXd lower() const;
    Eigen::VectorXd upper() const;
    Eigen::VectorXd mid() const;
    Eigen::VectorXd rad() const;
    Eigen::VectorXd diam() const;

    bool contains(const Eigen::VectorXd& x) const;

private:
    std::vector<Interval> elems_;
};

/// Dense row-major matrix of intervals.
class IntervalMatrix
{
public:
    IntervalMatrix() = default;
    IntervalMatrix(std::size_t rows, std::size_t cols, const Interval& fill = Interval())
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    static IntervalMatrix from_point(const Eigen::MatrixXd& m);
    static IntervalMatrix from_mid_rad(const Eigen::MatrixXd& mid, const Eigen::MatrixXd& rad);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Interval& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Interval& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Eigen::MatrixXd lower() const;
    Eigen::MatrixXd upper() const;
    Eigen::MatrixXd mid() const;
    Eigen::MatrixXd rad() const;
    Eigen::MatrixXd diam() const;

    IntervalMatrix transpose() const;

    /// True when every real matrix entry lies in the corresponding interval.
    bool contains(const Eigen::MatrixXd& m) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Interval> data_;
};

IntervalVector operator*(const IntervalMatrix& m, const Eigen::VectorXd& v);
IntervalVector operator*(const IntervalMatrix& m, const IntervalVector& v);
IntervalMatrix operator*(const IntervalMatrix& m, const Eigen::MatrixXd& r);
IntervalMatrix operator*(const Eigen::MatrixXd& l, const IntervalMatrix& m);
IntervalMatrix operator-(const IntervalMatrix& m, const Eigen::MatrixXd& r);
IntervalMatrix scale(const IntervalMatrix& m, double s);

/// v^T m as an interval row vector of length m.cols().
IntervalVector left_multiply(const Eigen::VectorXd& v, const IntervalMatrix& m);

/// Midpoint, radius and diameter of an interval object, elementwise.
struct IntervalStats
{
    Eigen::MatrixXd mid;
    Eigen::MatrixXd rad;
    Eigen::MatrixXd diam;
};

IntervalStats interval_stats(const Interval& x);
IntervalStats interval_stats(const IntervalVector& x);
IntervalStats interval_stats(const IntervalMatrix& x);

} // namespace czest
