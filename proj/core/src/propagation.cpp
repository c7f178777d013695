#include "czest/propagation.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <string>

#include "czest/error.hpp"
#include "czest/lp.hpp"
#include "czest/set_queries.hpp"

namespace czest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_degenerate(const IntervalMatrix& J)
{
    for (std::size_t i = 0; i < J.rows(); ++i)
        for (std::size_t j = 0; j < J.cols(); ++j)
            if (!J(i, j).is_degenerate())
                return false;
    return true;
}

// Widths at roundoff level count as constant.
bool is_nearly_constant(const IntervalMatrix& J)
{
    for (std::size_t i = 0; i < J.rows(); ++i)
        for (std::size_t j = 0; j < J.cols(); ++j)
            if (J(i, j).hi() - J(i, j).lo() > 1e-12 * (1.0 + J(i, j).mag()))
                return false;
    return true;
}

IntervalMatrix leading_block(const IntervalMatrix& Q, std::size_t m)
{
    IntervalMatrix out(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            out(i, j) = Q(i, j);
    return out;
}

IntervalVector point_box(const Eigen::VectorXd& x)
{
    IntervalVector out(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i)
        out[static_cast<std::size_t>(i)] = Interval(x(i));
    return out;
}

// beta(x) + B_w w with B_w independent of x, and the x-Jacobian independent of w
bool w_enters_additively(const NonlinearModel& model, const Eigen::VectorXd& hx, const IntervalVector& Xbox,
                         const IntervalVector& Wbox, const Eigen::VectorXd& u)
{
    return model.affine_in_w() && is_nearly_constant(model.jacobian_w(Xbox, u, Wbox)) &&
           is_nearly_constant(model.jacobian_x(point_box(hx), u, Wbox));
}

EliminationTrail full_trail(const ConstrainedZonotope& X)
{
    EliminationTrail trail;
    eliminate_constraints(X, X.num_constraints(), &trail, false);
    if (trail.empty)
        throw EmptySetError("propagation: input set is empty");
    return trail;
}

Eigen::VectorXd member_point(const ConstrainedZonotope& W)
{
    if (W.is_zonotope() || is_member(W, W.c()))
        return W.c();
    return closest_point(W, W.c());
}

IntervalVector concat(const IntervalVector& a, const IntervalVector& b)
{
    IntervalVector out(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        out[a.size() + i] = b[i];
    return out;
}

void check_inputs(const NonlinearModel& model, const ConstrainedZonotope& X, const ConstrainedZonotope& W,
                  const Eigen::VectorXd& u, const char* fn)
{
    if (X.dim() != model.n() || W.dim() != model.n_w() || u.size() != model.n_u())
        throw DimensionError(std::string(fn) + ": X, W or u does not match the model dimensions");
}

// A + A^T with the diagonal counted once, halved: the symmetric matrix whose
// quadratic form equals that of an upper-triangular half-Hessian.
IntervalMatrix symmetrize_half(const IntervalMatrix& Q)
{
    IntervalMatrix S(Q.rows(), Q.cols());
    for (std::size_t i = 0; i < Q.rows(); ++i)
        for (std::size_t j = 0; j < Q.cols(); ++j)
            S(i, j) = i == j ? Q(i, i) : scale(Q(i, j) + Q(j, i), 0.5);
    return S;
}

} // namespace

const char* to_string(HStrategy s)
{
    switch (s)
    {
    case HStrategy::C1: return "C1";
    case HStrategy::C2: return "C2";
    case HStrategy::C3: return "C3";
    case HStrategy::C4: return "C4";
    }
    return "?";
}

HStrategy parse_h_strategy(const std::string& s)
{
    std::string t = s;
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return std::toupper(ch); });
    if (t == "C1")
        return HStrategy::C1;
    if (t == "C2")
        return HStrategy::C2;
    if (t == "C3")
        return HStrategy::C3;
    if (t == "C4")
        return HStrategy::C4;
    throw Error("unknown h strategy '" + s + "' (expected C1, C2, C3 or C4)");
}

ConstrainedZonotope cz_inclusion(const IntervalMatrix& J, const ConstrainedZonotope& X, const Eigen::MatrixXd& M_bar,
                                 const Eigen::VectorXd& p_bar)
{
    if (static_cast<Eigen::Index>(J.cols()) != X.dim())
        throw DimensionError("cz_inclusion: J has " + std::to_string(J.cols()) + " columns, X has dimension " +
                             std::to_string(X.dim()));
    const Eigen::Index n = static_cast<Eigen::Index>(J.rows());
    const Eigen::MatrixXd Jm = J.mid();
    Eigen::VectorXd P = Eigen::VectorXd::Zero(n);

    if (!is_degenerate(J))
    {
        if (M_bar.rows() != X.dim() || p_bar.size() != X.dim())
            throw DimensionError("cz_inclusion: eliminated form does not match X");
        const IntervalVector m = (J - Jm) * p_bar;
        const Eigen::MatrixXd Jd = J.diam();
        const Eigen::VectorXd row_abs = M_bar.cwiseAbs().rowwise().sum();
        const double grow = 1.0 + 8.0 * static_cast<double>(X.dim() + 2) * 0x1p-53;
        for (Eigen::Index i = 0; i < n; ++i)
        {
            double s = m[static_cast<std::size_t>(i)].diam();
            for (Eigen::Index k = 0; k < X.dim(); ++k)
                s += Jd(i, k) * row_abs(k);
            P(i) = 0.5 * s * grow;
        }
    }

    Eigen::MatrixXd G(n, X.num_generators() + n);
    G.leftCols(X.num_generators()) = Jm * X.G();
    G.rightCols(n) = P.asDiagonal();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(X.num_constraints(), X.num_generators() + n);
    A.leftCols(X.num_generators()) = X.A();
    return {std::move(G), Jm * X.c(), std::move(A), X.b()};
}

ConstrainedZonotope cz_inclusion(const IntervalMatrix& J, const ConstrainedZonotope& X)
{
    if (static_cast<Eigen::Index>(J.cols()) != X.dim())
        throw DimensionError("cz_inclusion: J has " + std::to_string(J.cols()) + " columns, X has dimension " +
                             std::to_string(X.dim()));
    if (is_degenerate(J))
        return cz_inclusion(J, X, X.G(), X.c());
    const EliminationTrail trail = full_trail(X);
    return cz_inclusion(J, X, trail.G0, trail.c0);
}

Eigen::VectorXd select_h_C1(const ConstrainedZonotope& X)
{
    const Eigen::VectorXd h = interval_hull(X).mid();
    if (X.is_zonotope() || is_member(X, h))
        return h;
    throw StrategyError("C1: the interval hull midpoint is not a member of X; use C2 or C3");
}

Eigen::VectorXd select_h_C2(const ConstrainedZonotope& X, const IntervalMatrix& J, const EliminationTrail* trail)
{
    if (static_cast<Eigen::Index>(J.cols()) != X.dim())
        throw DimensionError("C2: J does not match X");
    if (X.is_zonotope())
        return X.c();
    EliminationTrail local;
    if (!trail)
    {
        local = full_trail(X);
        trail = &local;
    }
    const Eigen::Index n = X.dim();
    const Eigen::Index ng = X.num_generators();
    const Eigen::Index nc = X.num_constraints();

    Eigen::VectorXd theta = Eigen::VectorXd::Zero(n);
    const Eigen::MatrixXd Jd = J.diam();
    for (Eigen::Index j = 0; j < n; ++j)
        theta(j) = Jd.col(j).sum();

    LpProblem lp;
    if (theta.maxCoeff() > 0.0)
    {
        // xi, t+, t- with G xi + t+ - t- = offset, so that p_bar = t+ - t-
        lp.cost = Eigen::VectorXd::Zero(ng + 2 * n);
        lp.cost.segment(ng, n) = theta;
        lp.cost.tail(n) = theta;
        lp.eq_matrix = Eigen::MatrixXd::Zero(n + nc, ng + 2 * n);
        lp.eq_matrix.topLeftCorner(n, ng) = X.G();
        lp.eq_matrix.block(0, ng, n, n) = Eigen::MatrixXd::Identity(n, n);
        lp.eq_matrix.block(0, ng + n, n, n) = -Eigen::MatrixXd::Identity(n, n);
        lp.eq_matrix.bottomLeftCorner(nc, ng) = X.A();
        lp.eq_rhs = vcat(trail->offset, X.b());
        lp.lower = vcat(-Eigen::VectorXd::Ones(ng), Eigen::VectorXd::Zero(2 * n));
        lp.upper = vcat(Eigen::VectorXd::Ones(ng), Eigen::VectorXd::Constant(2 * n, kInf));
        const LpSolution s = solve_lp(lp);
        if (!s.optimal())
            throw EmptySetError("C2: X is empty");
        return X.c() + X.G() * s.x.head(ng);
    }

    // every candidate is optimal: take the feasible xi of least 1-norm
    lp.cost = Eigen::VectorXd::Ones(2 * ng);
    lp.eq_matrix = hstack(X.A(), -X.A());
    lp.eq_rhs = X.b();
    lp.lower = Eigen::VectorXd::Zero(2 * ng);
    lp.upper = Eigen::VectorXd::Ones(2 * ng);
    const LpSolution s = solve_lp(lp);
    if (!s.optimal())
        throw EmptySetError("C2: X is empty");
    return X.c() + X.G() * (s.x.head(ng) - s.x.tail(ng));
}

Eigen::VectorXd select_h_C3(const ConstrainedZonotope& X)
{
    if (X.is_zonotope())
        return X.c();
    return closest_point(X, X.c());
}

CenteredSet select_h_C4(const ConstrainedZonotope& X)
{
    if (X.is_zonotope() || is_member(X, X.c()))
        return {X.c(), X, false};
    Eigen::VectorXd h = interval_hull(X).mid();
    if (!is_member(X, h))
        h = closest_point(X, X.c());
    return {h, rescale_with_center(X, h), true};
}

ConstrainedZonotope mean_value_extension(const NonlinearModel& model, const ConstrainedZonotope& X,
                                         const ConstrainedZonotope& W, const Eigen::VectorXd& u, HStrategy strategy,
                                         PropagationInfo* info)
{
    check_inputs(model, X, W, u, "mean_value_extension");
    const IntervalVector Xbox = enclosing_box(X);
    const IntervalVector Wbox = enclosing_box(W);
    const IntervalMatrix J = model.jacobian_x(Xbox, u, Wbox);
    const EliminationTrail trail = full_trail(X);

    Eigen::VectorXd h;
    switch (strategy)
    {
    case HStrategy::C1: h = select_h_C1(X); break;
    case HStrategy::C2: h = select_h_C2(X, J, &trail); break;
    case HStrategy::C3: h = select_h_C3(X); break;
    case HStrategy::C4:
        // the mean value form does not depend on the representation center,
        // so only the C4 point is used
        if (X.is_zonotope() || is_member(X, X.c()))
            h = X.c();
        else
        {
            h = interval_hull(X).mid();
            if (!is_member(X, h))
                h = closest_point(X, X.c());
        }
        break;
    }

    const Eigen::VectorXd hw = member_point(W);
    ConstrainedZonotope Zw = ConstrainedZonotope::point(model.eval(h, u, hw));
    if (model.affine_in_w())
    {
        const Eigen::MatrixXd Bw = model.B_w(h, u);
        Zw = linear_map(Bw, W).translated(model.beta(h, u));
    }
    else if (W.num_generators() > 0)
    {
        const IntervalMatrix Jw = model.jacobian_w(IntervalVector::from_point(h), u, Wbox);
        Zw = minkowski_sum(Zw, cz_inclusion(Jw, W.translated(-hw)));
    }

    if (info)
    {
        info->strategy = strategy;
        info->h = h;
        info->recentred = false;
    }
    return minkowski_sum(cz_inclusion(J, X.translated(-h), trail.G0, trail.c0 - h), Zw);
}

SizeCount first_order_output_size(Eigen::Index n, Eigen::Index m_g, Eigen::Index m_c)
{
    return {m_g * (m_g + 5) / 2 + 2 * n, m_c * (m_c + 5) / 2};
}

ConstrainedZonotope first_order_taylor_extension(const NonlinearModel& model, const ConstrainedZonotope& X,
                                                 const ConstrainedZonotope& W, const Eigen::VectorXd& u,
                                                 HStrategy strategy, PropagationInfo* info, bool split_affine_w)
{
    check_inputs(model, X, W, u, "first_order_taylor_extension");
    const Eigen::Index n = model.n();
    const IntervalVector Xbox = enclosing_box(X);
    const IntervalVector Wbox = enclosing_box(W);

    ConstrainedZonotope Xr = X;
    Eigen::VectorXd hx;
    bool recentred = false;
    std::vector<std::string> warnings;
    switch (strategy)
    {
    case HStrategy::C1: hx = select_h_C1(X); break;
    case HStrategy::C2: hx = select_h_C2(X, model.jacobian_x(Xbox, u, Wbox)); break;
    case HStrategy::C3: hx = select_h_C3(X); break;
    case HStrategy::C4:
        try
        {
            CenteredSet cs = select_h_C4(X);
            hx = std::move(cs.h);
            Xr = std::move(cs.X);
            recentred = cs.recentred;
        }
        catch (const DomainError& e)
        {
            warnings.push_back(std::string("C4 recentering failed, using C3: ") + e.what());
            hx = select_h_C3(X);
        }
        break;
    }
    const Eigen::VectorXd hw = member_point(W);
    const std::vector<IntervalMatrix> Q_full = model.hessians(concat(Xbox, Wbox), u);
    if (static_cast<Eigen::Index>(Q_full.size()) != n)
        throw DimensionError("first_order_taylor_extension: model returned the wrong number of Hessians");
    const bool split = split_affine_w && w_enters_additively(model, hx, Xbox, Wbox, u);

    // expand over X x W, or over X alone with B_w W added exactly
    const ConstrainedZonotope Z = split ? Xr : cartesian_product(Xr, W);
    const Eigen::Index m = Z.dim();
    const Eigen::Index mg = Z.num_generators();
    const Eigen::Index mc = Z.num_constraints();
    const Eigen::VectorXd h = split ? hx : vcat(hx, hw);
    const Eigen::VectorXd p = Z.c() - h;
    const Eigen::MatrixXd& G = Z.G();
    const Eigen::MatrixXd& A = Z.A();
    const Eigen::VectorXd& b = Z.b();

    // linear part
    Eigen::MatrixXd grad(n, m);
    grad.leftCols(X.dim()) = model.jacobian_x_at(hx, u, hw);
    if (!split)
        grad.rightCols(W.dim()) = model.jacobian_w_at(hx, u, hw);
    const Eigen::VectorXd eta_h = split ? model.beta(hx, u) : model.eval(hx, u, hw);
    const ConstrainedZonotope linear{grad * G, eta_h + grad * p, A, b};

    // quadratic remainder in the generator variables
    std::vector<IntervalMatrix> Q;
    Q.reserve(Q_full.size());
    for (const auto& Qq : Q_full)
    {
        if (static_cast<Eigen::Index>(Qq.rows()) != X.dim() + W.dim() ||
            static_cast<Eigen::Index>(Qq.cols()) != X.dim() + W.dim())
            throw DimensionError("first_order_taylor_extension: Hessian has the wrong shape");
        Q.push_back(split ? leading_block(Qq, static_cast<std::size_t>(m)) : Qq);
    }
    const Eigen::Index n_cross = mg * (mg - 1) / 2;
    const Eigen::MatrixXd Gt = G.transpose();
    Eigen::VectorXd c_tilde(n);
    Eigen::MatrixXd G_rem = Eigen::MatrixXd::Zero(n, mg + n_cross + n);
    IntervalMatrix L(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
    for (Eigen::Index q = 0; q < n; ++q)
    {
        const IntervalMatrix& Qq = Q[static_cast<std::size_t>(q)];
        const IntervalMatrix Qt = Gt * (Qq * G);
        const Eigen::MatrixXd mid = Qt.mid();
        const Eigen::MatrixXd rad = Qt.rad();
        c_tilde(q) = 0.5 * mid.trace();
        for (Eigen::Index i = 0; i < mg; ++i)
            G_rem(q, i) = 0.5 * mid(i, i);
        Eigen::Index col = mg;
        for (Eigen::Index i = 0; i < mg; ++i)
            for (Eigen::Index j = i + 1; j < mg; ++j)
                G_rem(q, col++) = mid(i, j) + mid(j, i);
        const double grow = 1.0 + 4.0 * static_cast<double>(mg * mg + 1) * 0x1p-53;
        G_rem(q, mg + n_cross + q) = rad.sum() * grow;

        const IntervalVector Lq = left_multiply(p, symmetrize_half(Qq));
        for (Eigen::Index k = 0; k < m; ++k)
            L(static_cast<std::size_t>(q), static_cast<std::size_t>(k)) = Lq[static_cast<std::size_t>(k)];
    }

    // lifted constraints (A xi)_r (A xi)_s = b_r b_s for r <= s
    const Eigen::Index n_pairs = mc * (mc + 1) / 2;
    Eigen::MatrixXd A_rem = Eigen::MatrixXd::Zero(n_pairs, mg + n_cross + n);
    Eigen::VectorXd b_rem(n_pairs);
    Eigen::Index row = 0;
    for (Eigen::Index r = 0; r < mc; ++r)
    {
        for (Eigen::Index s = r; s < mc; ++s, ++row)
        {
            double diag = 0.0;
            for (Eigen::Index i = 0; i < mg; ++i)
            {
                const double v = A(r, i) * A(s, i);
                A_rem(row, i) = 0.5 * v;
                diag += v;
            }
            Eigen::Index col = mg;
            for (Eigen::Index i = 0; i < mg; ++i)
                for (Eigen::Index j = i + 1; j < mg; ++j)
                    A_rem(row, col++) = A(r, i) * A(s, j) + A(r, j) * A(s, i);
            b_rem(row) = b(r) * b(s) - 0.5 * diag;
        }
    }
    const ConstrainedZonotope quad{std::move(G_rem), c_tilde, std::move(A_rem), std::move(b_rem)};

    // cross term between the center offset and the generators
    const ConstrainedZonotope Y{2.0 * G, p, A, b};
    const ConstrainedZonotope cross = cz_inclusion(L, Y);

    if (info)
    {
        info->strategy = strategy;
        info->h = hx;
        info->recentred = recentred;
        info->warnings = std::move(warnings);
    }
    ConstrainedZonotope out = minkowski_sum(minkowski_sum(linear, quad), cross);
    if (split)
        out = minkowski_sum(out, linear_map(model.B_w(hx, u), W));
    return out;
}

} // namespace czest
