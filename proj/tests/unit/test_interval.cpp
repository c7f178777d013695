#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "czest/interval.hpp"

using namespace czest;

namespace {

constexpr double kPi = std::numbers::pi;

/// Min and max of f over a dense grid of [a] x [b].
template <class F>
std::pair<double, double> grid_range(const Interval& a, const Interval& b, F f, int n = 400)
{
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
        {
            const double x = std::min(a.hi(), a.lo() + (a.hi() - a.lo()) * i / n);
            const double y = std::min(b.hi(), b.lo() + (b.hi() - b.lo()) * j / n);
            const double v = f(x, y);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    return {lo, hi};
}

template <class F>
void expect_encloses_1d(const Interval& x, const Interval& y, F f, int n = 20000)
{
    for (int i = 0; i <= n; ++i)
    {
        const double t = std::min(x.hi(), x.lo() + (x.hi() - x.lo()) * i / n);
        EXPECT_TRUE(y.contains(f(t))) << "at " << t;
    }
}

} // namespace

TEST(Interval, RejectsInvertedEndpoints)
{
    EXPECT_THROW(Interval(2.0, 1.0), DomainError);
    EXPECT_THROW(Interval(std::nan(""), 1.0), DomainError);
}

TEST(Interval, Addition)
{
    const Interval r = Interval(1, 2) + Interval(3, 4);
    EXPECT_LE(r.lo(), 4.0);
    EXPECT_GE(r.hi(), 6.0);
    EXPECT_NEAR(r.lo(), 4.0, 1e-15);
    EXPECT_NEAR(r.hi(), 6.0, 1e-15);
}

TEST(Interval, ScalarProduct)
{
    const Interval r = Interval(-1, 2) * Interval(3, 3);
    EXPECT_LE(r.lo(), -3.0);
    EXPECT_GE(r.hi(), 6.0);
    EXPECT_NEAR(r.lo(), -3.0, 1e-14);
    EXPECT_NEAR(r.hi(), 6.0, 1e-14);
}

TEST(Interval, DivisionEnclosesSampledQuotients)
{
    const Interval a(1, 2), b(0.5, 1);
    const Interval r = a / b;
    const auto [lo, hi] = grid_range(a, b, [](double x, double y) { return x / y; });
    EXPECT_LE(r.lo(), lo);
    EXPECT_GE(r.hi(), hi);
    EXPECT_THROW(a / Interval(-1, 1), DomainError);
}

TEST(Interval, ArithmeticEnclosesSampledImages)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-5, 5);
    for (int trial = 0; trial < 50; ++trial)
    {
        double a0 = d(rng), a1 = d(rng), b0 = d(rng), b1 = d(rng);
        const Interval a(std::min(a0, a1), std::max(a0, a1));
        const Interval b(std::min(b0, b1), std::max(b0, b1));
        const auto check = [&](const Interval& r, auto f) {
            const auto [lo, hi] = grid_range(a, b, f, 60);
            EXPECT_LE(r.lo(), lo);
            EXPECT_GE(r.hi(), hi);
        };
        check(a + b, [](double x, double y) { return x + y; });
        check(a - b, [](double x, double y) { return x - y; });
        check(a * b, [](double x, double y) { return x * y; });
        check(-a, [](double x, double) { return -x; });
        check(scale(a, -2.5), [](double x, double) { return -2.5 * x; });
        if (!b.contains(0.0))
            check(a / b, [](double x, double y) { return x / y; });
    }
}

TEST(Interval, SinOverHalfPeriod)
{
    const Interval r = sin(Interval(0, kPi));
    EXPECT_LE(r.lo(), 0.0);
    EXPECT_GE(r.hi(), 1.0);
    EXPECT_NEAR(r.lo(), 0.0, 1e-12);
    EXPECT_NEAR(r.hi(), 1.0, 1e-12);
}

TEST(Interval, SquareThroughZero)
{
    const Interval r = sqr(Interval(-1, 2));
    EXPECT_EQ(r.lo(), 0.0);
    EXPECT_GE(r.hi(), 4.0);
    EXPECT_NEAR(r.hi(), 4.0, 1e-14);
}

TEST(Interval, ReciprocalShift)
{
    const Interval r = reciprocal_shift(Interval(-1, 1), 4.0);
    expect_encloses_1d(Interval(-1, 1), r, [](double x) { return 1.0 / (4.0 + x); });
    EXPECT_LE(r.lo(), 0.2);
    EXPECT_GE(r.hi(), 1.0 / 3.0);
    EXPECT_THROW(reciprocal_shift(Interval(-5, 1), 4.0), DomainError);
}

TEST(Interval, TranscendentalsEncloseSamples)
{
    const Interval xs[] = {{-0.3, 0.2}, {1.0, 2.5}, {-4.0, -1.0}, {0.1, 7.0}, {2.0, 2.0}};
    for (const auto& x : xs)
    {
        expect_encloses_1d(x, sin(x), [](double t) { return std::sin(t); });
        expect_encloses_1d(x, cos(x), [](double t) { return std::cos(t); });
        expect_encloses_1d(x, sqr(x), [](double t) { return t * t; });
    }
    const Interval ts[] = {{-1.2, 1.2}, {0.1, 1.5}, {2.0, 4.5}};
    for (const auto& x : ts)
    {
        expect_encloses_1d(x, tan(x), [](double t) { return std::tan(t); });
        expect_encloses_1d(x, sec(x), [](double t) { return 1.0 / std::cos(t); });
    }
    expect_encloses_1d(Interval(0.0, 9.0), sqrt(Interval(0.0, 9.0)), [](double t) { return std::sqrt(t); });
    EXPECT_THROW(tan(Interval(1.0, 2.0)), DomainError);
    EXPECT_THROW(sqrt(Interval(-1.0, 1.0)), DomainError);
}

TEST(Interval, ResultsAreOutwardRounded)
{
    const Interval r = Interval(0.1) + Interval(0.2);
    EXPECT_LT(r.lo(), r.hi());
    EXPECT_LE(r.lo(), 0.3);
    EXPECT_GE(r.hi(), 0.3);
}

TEST(IntervalStats, Scalar)
{
    const auto s = interval_stats(Interval(-1, 3));
    EXPECT_DOUBLE_EQ(s.mid(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(s.rad(0, 0), 2.0);
    EXPECT_DOUBLE_EQ(s.diam(0, 0), 4.0);
    const auto d = interval_stats(Interval(5, 5));
    EXPECT_DOUBLE_EQ(d.mid(0, 0), 5.0);
    EXPECT_DOUBLE_EQ(d.rad(0, 0), 0.0);
}

TEST(IntervalStats, VectorAndMatrix)
{
    const IntervalVector v{Interval(0, 2), Interval(-4, 0)};
    const auto s = interval_stats(v);
    EXPECT_DOUBLE_EQ(s.mid(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(s.mid(1, 0), -2.0);

    IntervalMatrix m(2, 2, Interval(1, 3));
    m(1, 0) = Interval(-2, -2);
    const auto t = interval_stats(m);
    EXPECT_DOUBLE_EQ(t.mid(0, 1), 2.0);
    EXPECT_DOUBLE_EQ(t.rad(0, 1), 1.0);
    EXPECT_DOUBLE_EQ(t.rad(1, 0), 0.0);
}

TEST(IntervalMatrix, ProductEnclosesSampledProducts)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Eigen::MatrixXd mid = Eigen::MatrixXd::Random(3, 4);
    const Eigen::MatrixXd rad = Eigen::MatrixXd::Random(3, 4).cwiseAbs() * 0.3;
    const IntervalMatrix J = IntervalMatrix::from_mid_rad(mid, rad);
    const Eigen::VectorXd x = Eigen::VectorXd::Random(4);
    const IntervalVector y = J * x;
    for (int s = 0; s < 500; ++s)
    {
        Eigen::MatrixXd Js(3, 4);
        for (Eigen::Index i = 0; i < 3; ++i)
            for (Eigen::Index j = 0; j < 4; ++j)
                Js(i, j) = mid(i, j) + rad(i, j) * (2.0 * u(rng) - 1.0);
        ASSERT_TRUE(J.contains(Js));
        EXPECT_TRUE(y.contains(Js * x));
    }
}
