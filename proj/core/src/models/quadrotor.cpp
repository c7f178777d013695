#include "czest/models/quadrotor.hpp"

#include <cmath>

namespace czest::models {

namespace {

enum : std::size_t
{
    kX,
    kY,
    kZ,
    kU,
    kV,
    kW,
    kPhi,
    kTheta,
    kPsi,
    kP,
    kQ,
    kR,
    kStates
};

struct Trig
{
    Interval sf, cf, st, ct, sp, cp, tt, sec;
};

Trig trig(const Interval& phi, const Interval& theta, const Interval& psi)
{
    return {sin(phi), cos(phi), sin(theta), cos(theta), sin(psi), cos(psi), tan(theta), sec(theta)};
}

} // namespace

Eigen::VectorXd Quadrotor::derivative(const Eigen::VectorXd& s, const Eigen::VectorXd& u, const Eigen::VectorXd& d) const
{
    const double sf = std::sin(s(kPhi)), cf = std::cos(s(kPhi));
    const double st = std::sin(s(kTheta)), ct = std::cos(s(kTheta));
    const double sp = std::sin(s(kPsi)), cp = std::cos(s(kPsi));
    const double p = s(kP), q = s(kQ), r = s(kR);
    const double k = u(0) / p_.mass;
    Eigen::VectorXd f(kStates);
    f(kX) = s(kU);
    f(kY) = s(kV);
    f(kZ) = s(kW);
    f(kU) = k * (cp * st * cf + sp * sf) + d(0) / p_.mass;
    f(kV) = k * (sp * st * cf - cp * sf) + d(1) / p_.mass;
    f(kW) = -p_.gravity + k * ct * cf + d(2) / p_.mass;
    f(kPhi) = p + (q * sf + r * cf) * st / ct;
    f(kTheta) = q * cf - r * sf;
    f(kPsi) = (q * sf + r * cf) / ct;
    f(kP) = (p_.Iyy - p_.Izz) / p_.Ixx * q * r + p_.arm / p_.Ixx * u(1);
    f(kQ) = (p_.Izz - p_.Ixx) / p_.Iyy * p * r + p_.arm / p_.Iyy * u(2);
    f(kR) = (p_.Ixx - p_.Iyy) / p_.Izz * p * q + u(3) / p_.Izz;
    return f;
}

Eigen::VectorXd Quadrotor::eval(const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& w) const
{
    return x + p_.Ts * derivative(x, u, w);
}

IntervalMatrix Quadrotor::jacobian_x(const IntervalVector& X, const Eigen::VectorXd& u, const IntervalVector&) const
{
    const Trig t = trig(X[kPhi], X[kTheta], X[kPsi]);
    const Interval& q = X[kQ];
    const Interval& r = X[kR];
    const Interval& p = X[kP];
    const double k = u(0) / p_.mass;

    IntervalMatrix D(kStates, kStates, Interval(0.0));
    D(kX, kU) = D(kY, kV) = D(kZ, kW) = Interval(1.0);

    D(kU, kPhi) = scale(t.sp * t.cf - t.cp * t.st * t.sf, k);
    D(kU, kTheta) = scale(t.cp * t.ct * t.cf, k);
    D(kU, kPsi) = scale(t.cp * t.sf - t.sp * t.st * t.cf, k);

    D(kV, kPhi) = scale(-(t.sp * t.st * t.sf) - t.cp * t.cf, k);
    D(kV, kTheta) = scale(t.sp * t.ct * t.cf, k);
    D(kV, kPsi) = scale(t.cp * t.st * t.cf + t.sp * t.sf, k);

    D(kW, kPhi) = scale(-(t.ct * t.sf), k);
    D(kW, kTheta) = scale(-(t.st * t.cf), k);

    const Interval S = q * t.sf + r * t.cf;
    const Interval Sf = q * t.cf - r * t.sf;
    const Interval sec2 = sqr(t.sec);
    D(kPhi, kPhi) = Sf * t.tt;
    D(kPhi, kTheta) = S * sec2;
    D(kPhi, kP) = Interval(1.0);
    D(kPhi, kQ) = t.sf * t.tt;
    D(kPhi, kR) = t.cf * t.tt;

    D(kTheta, kPhi) = -S;
    D(kTheta, kQ) = t.cf;
    D(kTheta, kR) = -t.sf;

    D(kPsi, kPhi) = Sf * t.sec;
    D(kPsi, kTheta) = S * t.sec * t.tt;
    D(kPsi, kQ) = t.sf * t.sec;
    D(kPsi, kR) = t.cf * t.sec;

    const double a = (p_.Iyy - p_.Izz) / p_.Ixx;
    const double b = (p_.Izz - p_.Ixx) / p_.Iyy;
    const double c = (p_.Ixx - p_.Iyy) / p_.Izz;
    D(kP, kQ) = scale(r, a);
    D(kP, kR) = scale(q, a);
    D(kQ, kP) = scale(r, b);
    D(kQ, kR) = scale(p, b);
    D(kR, kP) = scale(q, c);
    D(kR, kQ) = scale(p, c);

    IntervalMatrix J(kStates, kStates);
    for (std::size_t i = 0; i < kStates; ++i)
        for (std::size_t j = 0; j < kStates; ++j)
            J(i, j) = Interval(i == j ? 1.0 : 0.0) + scale(D(i, j), p_.Ts);
    return J;
}

IntervalMatrix Quadrotor::jacobian_w(const IntervalVector&, const Eigen::VectorXd&, const IntervalVector&) const
{
    IntervalMatrix J(kStates, 3, Interval(0.0));
    const Interval g = scale(Interval(1.0) / Interval(p_.mass), p_.Ts);
    J(kU, 0) = J(kV, 1) = J(kW, 2) = g;
    return J;
}

std::vector<IntervalMatrix> Quadrotor::hessians(const IntervalVector& Z, const Eigen::VectorXd& u) const
{
    const Trig t = trig(Z[kPhi], Z[kTheta], Z[kPsi]);
    const Interval& q = Z[kQ];
    const Interval& r = Z[kR];
    const double k = u(0) / p_.mass;
    const std::size_t m = kStates + 3;

    // full second derivatives of the vector field, upper triangle only
    std::vector<IntervalMatrix> F(kStates, IntervalMatrix(m, m, Interval(0.0)));

    const Interval a = t.cp * t.st * t.cf + t.sp * t.sf;
    IntervalMatrix& Fu = F[kU];
    Fu(kPhi, kPhi) = scale(-a, k);
    Fu(kTheta, kTheta) = scale(-(t.cp * t.st * t.cf), k);
    Fu(kPsi, kPsi) = scale(-a, k);
    Fu(kPhi, kTheta) = scale(-(t.cp * t.ct * t.sf), k);
    Fu(kPhi, kPsi) = scale(t.sp * t.st * t.sf + t.cp * t.cf, k);
    Fu(kTheta, kPsi) = scale(-(t.sp * t.ct * t.cf), k);

    const Interval bb = t.sp * t.st * t.cf - t.cp * t.sf;
    IntervalMatrix& Fv = F[kV];
    Fv(kPhi, kPhi) = scale(-bb, k);
    Fv(kTheta, kTheta) = scale(-(t.sp * t.st * t.cf), k);
    Fv(kPsi, kPsi) = scale(-bb, k);
    Fv(kPhi, kTheta) = scale(-(t.sp * t.ct * t.sf), k);
    Fv(kPhi, kPsi) = scale(t.sp * t.cf - t.cp * t.st * t.sf, k);
    Fv(kTheta, kPsi) = scale(t.cp * t.ct * t.cf, k);

    IntervalMatrix& Fw = F[kW];
    const Interval e = t.ct * t.cf;
    Fw(kPhi, kPhi) = scale(-e, k);
    Fw(kTheta, kTheta) = scale(-e, k);
    Fw(kPhi, kTheta) = scale(t.st * t.sf, k);

    const Interval S = q * t.sf + r * t.cf;
    const Interval Sf = q * t.cf - r * t.sf;
    const Interval sec2 = sqr(t.sec);

    IntervalMatrix& Fphi = F[kPhi];
    Fphi(kPhi, kPhi) = -(S * t.tt);
    Fphi(kTheta, kTheta) = scale(S * sec2 * t.tt, 2.0);
    Fphi(kPhi, kTheta) = Sf * sec2;
    Fphi(kPhi, kQ) = t.cf * t.tt;
    Fphi(kPhi, kR) = -(t.sf * t.tt);
    Fphi(kTheta, kQ) = t.sf * sec2;
    Fphi(kTheta, kR) = t.cf * sec2;

    IntervalMatrix& Ftheta = F[kTheta];
    Ftheta(kPhi, kPhi) = -Sf;
    Ftheta(kPhi, kQ) = -t.sf;
    Ftheta(kPhi, kR) = -t.cf;

    IntervalMatrix& Fpsi = F[kPsi];
    Fpsi(kPhi, kPhi) = -(S * t.sec);
    Fpsi(kTheta, kTheta) = S * t.sec * (sqr(t.tt) + sec2);
    Fpsi(kPhi, kTheta) = Sf * t.sec * t.tt;
    Fpsi(kPhi, kQ) = t.cf * t.sec;
    Fpsi(kPhi, kR) = -(t.sf * t.sec);
    Fpsi(kTheta, kQ) = t.sf * t.sec * t.tt;
    Fpsi(kTheta, kR) = t.cf * t.sec * t.tt;

    F[kP](kQ, kR) = Interval((p_.Iyy - p_.Izz) / p_.Ixx);
    F[kQ](kP, kR) = Interval((p_.Izz - p_.Ixx) / p_.Iyy);
    F[kR](kP, kQ) = Interval((p_.Ixx - p_.Iyy) / p_.Izz);

    // half convention, times the step
    for (auto& H : F)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j)
                H(i, j) = scale(H(i, j), i == j ? 0.5 * p_.Ts : p_.Ts);
    return F;
}

} // namespace czest::models
