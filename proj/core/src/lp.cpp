#include "czest/lp.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "czest/error.hpp"

namespace czest {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Refactor the tableau from the original data every this many pivots.
constexpr int kRefactorPeriod = 64;
// Consecutive degenerate pivots tolerated before switching to Bland's rule.
constexpr int kDegenerateLimit = 30;

/*
 * Working state. Columns 0..n-1 are structural, n..n+m-1 are artificials with
 * column sigma_i * e_i. T holds B^{-1} [A | diag(sigma)], xb the basic values,
 * x the values of every variable (basic entries mirror xb).
 */
class Simplex
{
public:
    Simplex(const LpProblem& p, const LpTolerances& tol) : p_(p), tol_(tol)
    {
        n_ = p.num_vars();
        m_ = p.num_rows();
        nt_ = n_ + m_;
        lo_.resize(nt_);
        hi_.resize(nt_);
        lo_.head(n_) = p.lower;
        hi_.head(n_) = p.upper;
        lo_.tail(m_).setZero();
        hi_.tail(m_).setConstant(kInf);

        x_ = Eigen::VectorXd::Zero(nt_);
        for (Eigen::Index j = 0; j < n_; ++j)
        {
            if (std::isfinite(lo_(j)))
                x_(j) = lo_(j);
            else if (std::isfinite(hi_(j)))
                x_(j) = hi_(j);
            else
                x_(j) = 0.0;
        }

        sigma_ = Eigen::VectorXd::Ones(m_);
        const Eigen::VectorXd r = p.eq_rhs - p.eq_matrix * x_.head(n_);
        for (Eigen::Index i = 0; i < m_; ++i)
        {
            if (r(i) < 0.0)
                sigma_(i) = -1.0;
            x_(n_ + i) = std::abs(r(i));
        }

        basis_.resize(m_);
        is_basic_.assign(nt_, -1);
        for (Eigen::Index i = 0; i < m_; ++i)
        {
            basis_[i] = n_ + i;
            is_basic_[n_ + i] = static_cast<int>(i);
        }
        T_.resize(m_, nt_);
        T_.leftCols(n_) = sigma_.asDiagonal() * p.eq_matrix;
        T_.rightCols(m_).setIdentity();
    }

    // Runs simplex for `cost` over all nt_ columns. Returns false if unbounded.
    bool run(const Eigen::VectorXd& cost)
    {
        cost_ = cost;
        compute_reduced_costs();
        bool bland = false;
        int degenerate = 0;
        const int cap = 200 * static_cast<int>(nt_ + 10);
        int since_refactor = 0;
        while (true)
        {
            if (iterations_ >= cap)
                throw SolverStalledError("simplex: iteration cap " + std::to_string(cap) + " reached");

            Eigen::Index q = -1;
            double dir = 0.0;
            choose_entering(bland, q, dir);
            if (q < 0)
                return true;

            const Eigen::VectorXd alpha = T_.col(q);
            // Step length limited by the entering variable's own bound range.
            double t_best = dir > 0 ? hi_(q) - x_(q) : x_(q) - lo_(q);
            Eigen::Index leave_row = -1;
            double best_pivot = 0.0;
            for (Eigen::Index i = 0; i < m_; ++i)
            {
                const double a = alpha(i);
                if (std::abs(a) <= tol_.pivot)
                    continue;
                const Eigen::Index bv = basis_[i];
                const double delta = -dir * a;
                double t;
                if (delta < 0.0)
                {
                    if (!std::isfinite(lo_(bv)))
                        continue;
                    t = (x_(bv) - lo_(bv)) / (-delta);
                }
                else
                {
                    if (!std::isfinite(hi_(bv)))
                        continue;
                    t = (hi_(bv) - x_(bv)) / delta;
                }
                t = std::max(t, 0.0);
                bool take = t < t_best;
                if (!take && leave_row >= 0 && t == t_best)
                {
                    if (bland)
                        take = bv < basis_[leave_row];
                    else
                        take = std::abs(a) > best_pivot;
                }
                if (take)
                {
                    t_best = t;
                    leave_row = i;
                    best_pivot = std::abs(a);
                }
            }

            if (!std::isfinite(t_best))
                return false;

            ++iterations_;
            if (t_best <= 1e-12)
            {
                if (++degenerate > kDegenerateLimit)
                    bland = true;
            }
            else
            {
                degenerate = 0;
            }

            // Move.
            x_(q) += dir * t_best;
            for (Eigen::Index i = 0; i < m_; ++i)
                x_(basis_[i]) -= dir * t_best * alpha(i);

            if (leave_row < 0)
            {
                // bound flip
                x_(q) = dir > 0 ? hi_(q) : lo_(q);
                continue;
            }

            const Eigen::Index out = basis_[leave_row];
            const double delta = -dir * alpha(leave_row);
            x_(out) = delta < 0.0 ? lo_(out) : hi_(out);
            pivot(leave_row, q);
            if (++since_refactor >= kRefactorPeriod)
            {
                refactor();
                since_refactor = 0;
            }
        }
    }

    // Recomputes T and basic values from the original data.
    void refactor()
    {
        if (m_ == 0)
            return;
        Eigen::MatrixXd B(m_, m_);
        for (Eigen::Index i = 0; i < m_; ++i)
            B.col(i) = column(basis_[i]);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
        Eigen::MatrixXd full(m_, nt_);
        full.leftCols(n_) = p_.eq_matrix;
        full.rightCols(m_) = sigma_.asDiagonal();
        T_ = lu.solve(full);
        Eigen::VectorXd rhs = p_.eq_rhs;
        for (Eigen::Index j = 0; j < nt_; ++j)
        {
            if (is_basic_[j] < 0 && x_(j) != 0.0)
                rhs -= column(j) * x_(j);
        }
        const Eigen::VectorXd xb = lu.solve(rhs);
        for (Eigen::Index i = 0; i < m_; ++i)
            x_(basis_[i]) = xb(i);
        compute_reduced_costs();
    }

    // Phase-one to phase-two transition: fixes artificials at zero and tries
    // to drive basic artificials out of the basis.
    void retire_artificials()
    {
        for (Eigen::Index i = 0; i < m_; ++i)
            hi_(n_ + i) = 0.0;
        for (Eigen::Index r = 0; r < m_; ++r)
        {
            const Eigen::Index bv = basis_[r];
            if (bv < n_)
                continue;
            Eigen::Index best = -1;
            double best_abs = 1e-7;
            for (Eigen::Index j = 0; j < n_; ++j)
            {
                if (is_basic_[j] >= 0)
                    continue;
                if (std::abs(T_(r, j)) > best_abs)
                {
                    best_abs = std::abs(T_(r, j));
                    best = j;
                }
            }
            if (best >= 0)
            {
                // Degenerate pivot: the artificial leaves at (essentially) zero and
                // the structural variable keeps its current value.
                x_(bv) = 0.0;
                pivot(r, best);
            }
        }
        for (Eigen::Index i = 0; i < m_; ++i)
        {
            if (is_basic_[n_ + i] < 0)
                x_(n_ + i) = 0.0;
        }
        refactor();
    }

    Eigen::VectorXd duals() const
    {
        if (m_ == 0)
            return {};
        Eigen::MatrixXd B(m_, m_);
        Eigen::VectorXd cb(m_);
        for (Eigen::Index i = 0; i < m_; ++i)
        {
            B.col(i) = column(basis_[i]);
            cb(i) = cost_(basis_[i]);
        }
        return B.transpose().partialPivLu().solve(cb);
    }

    const Eigen::VectorXd& x() const { return x_; }
    Eigen::Index n() const { return n_; }
    Eigen::Index m() const { return m_; }
    int iterations() const { return iterations_; }

    double artificial_sum() const
    {
        double s = 0.0;
        for (Eigen::Index i = 0; i < m_; ++i)
            s += std::abs(x_(n_ + i));
        return s;
    }

private:
    Eigen::VectorXd column(Eigen::Index j) const
    {
        if (j < n_)
            return p_.eq_matrix.col(j);
        Eigen::VectorXd e = Eigen::VectorXd::Zero(m_);
        e(j - n_) = sigma_(j - n_);
        return e;
    }

    void compute_reduced_costs()
    {
        Eigen::VectorXd cb(m_);
        for (Eigen::Index i = 0; i < m_; ++i)
            cb(i) = cost_(basis_[i]);
        d_ = cost_ - T_.transpose() * cb;
        for (Eigen::Index i = 0; i < m_; ++i)
            d_(basis_[i]) = 0.0;
    }

    void choose_entering(bool bland, Eigen::Index& q, double& dir) const
    {
        double best = 0.0;
        for (Eigen::Index j = 0; j < nt_; ++j)
        {
            if (is_basic_[j] >= 0)
                continue;
            if (lo_(j) == hi_(j))
                continue;
            const double dj = d_(j);
            double s = 0.0;
            if (dj < -tol_.opt && x_(j) < hi_(j))
                s = 1.0;
            else if (dj > tol_.opt && x_(j) > lo_(j))
                s = -1.0;
            if (s == 0.0)
                continue;
            if (bland)
            {
                q = j;
                dir = s;
                return;
            }
            if (std::abs(dj) > best)
            {
                best = std::abs(dj);
                q = j;
                dir = s;
            }
        }
    }

    void pivot(Eigen::Index r, Eigen::Index q)
    {
        const double piv = T_(r, q);
        T_.row(r) /= piv;
        for (Eigen::Index i = 0; i < m_; ++i)
        {
            if (i == r)
                continue;
            const double f = T_(i, q);
            if (f != 0.0)
                T_.row(i) -= f * T_.row(r);
        }
        const double fd = d_(q);
        if (fd != 0.0)
            d_ -= fd * T_.row(r).transpose();
        d_(q) = 0.0;

        const Eigen::Index out = basis_[r];
        is_basic_[out] = -1;
        basis_[r] = q;
        is_basic_[q] = static_cast<int>(r);
    }

    const LpProblem& p_;
    LpTolerances tol_;
    Eigen::Index n_ = 0, m_ = 0, nt_ = 0;
    Eigen::VectorXd lo_, hi_, x_, sigma_, cost_, d_;
    Eigen::MatrixXd T_;
    std::vector<Eigen::Index> basis_;
    std::vector<int> is_basic_;
    int iterations_ = 0;
};

Eigen::VectorXd phase_one_cost(Eigen::Index n, Eigen::Index m)
{
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n + m);
    c.tail(m).setOnes();
    return c;
}

} // namespace

void LpProblem::validate() const
{
    const Eigen::Index n = cost.size();
    if (lower.size() != n || upper.size() != n)
        throw DimensionError("LpProblem: bound vectors must match cost length");
    if (eq_matrix.rows() != eq_rhs.size() || (eq_matrix.rows() > 0 && eq_matrix.cols() != n))
        throw DimensionError("LpProblem: equality system shape mismatch");
    for (Eigen::Index j = 0; j < n; ++j)
    {
        if (!std::isfinite(cost(j)))
            throw DomainError("LpProblem: non-finite cost entry");
        if (lower(j) > upper(j))
            throw DomainError("LpProblem: lower bound exceeds upper bound at variable " + std::to_string(j));
    }
    if (!eq_matrix.allFinite() || !eq_rhs.allFinite())
        throw DomainError("LpProblem: non-finite equality data");
}

LpSolution solve_feasibility(const LpProblem& p, double threshold, const LpTolerances& tol)
{
    p.validate();
    LpProblem q = p;
    if (q.eq_matrix.rows() == 0)
        q.eq_matrix.resize(0, q.num_vars());
    Simplex s(q, tol);
    s.run(phase_one_cost(s.n(), s.m()));
    s.refactor();
    LpSolution out;
    out.x = s.x().head(s.n());
    out.iterations = s.iterations();
    out.objective = (q.eq_matrix * out.x - q.eq_rhs).lpNorm<1>();
    out.infeasibility = out.objective;
    out.status = out.objective <= threshold ? LpStatus::optimal : LpStatus::infeasible;
    return out;
}

LpSolution solve_lp(const LpProblem& p, const LpTolerances& tol)
{
    p.validate();
    LpProblem q = p;
    if (q.eq_matrix.rows() == 0)
        q.eq_matrix.resize(0, q.num_vars());
    Simplex s(q, tol);
    const Eigen::Index n = s.n();
    const Eigen::Index m = s.m();

    LpSolution out;
    if (m > 0)
    {
        s.run(phase_one_cost(n, m));
        s.refactor();
        out.infeasibility = s.artificial_sum();
        const double scale = 1.0 + q.eq_rhs.lpNorm<Eigen::Infinity>();
        if (out.infeasibility > tol.feas * scale)
        {
            out.status = LpStatus::infeasible;
            out.x = s.x().head(n);
            out.iterations = s.iterations();
            return out;
        }
        s.retire_artificials();
    }

    Eigen::VectorXd cost = Eigen::VectorXd::Zero(n + m);
    cost.head(n) = q.cost;
    const bool bounded = s.run(cost);
    out.iterations = s.iterations();
    if (!bounded)
    {
        out.status = LpStatus::unbounded;
        out.x = s.x().head(n);
        return out;
    }
    s.refactor();
    out.status = LpStatus::optimal;
    out.x = s.x().head(n);
    // Snap into the box; refactoring can leave values a rounding error outside.
    for (Eigen::Index j = 0; j < n; ++j)
        out.x(j) = std::min(std::max(out.x(j), q.lower(j)), q.upper(j));
    out.objective = q.cost.dot(out.x);
    out.duals = m > 0 ? s.duals() : Eigen::VectorXd();
    return out;
}

double dual_objective(const LpProblem& p, const Eigen::VectorXd& duals)
{
    Eigen::VectorXd d = p.cost;
    double value = 0.0;
    if (p.num_rows() > 0)
    {
        d -= p.eq_matrix.transpose() * duals;
        value = p.eq_rhs.dot(duals);
    }
    for (Eigen::Index j = 0; j < d.size(); ++j)
    {
        if (d(j) > 0.0)
            value += d(j) * p.lower(j);
        else if (d(j) < 0.0)
            value += d(j) * p.upper(j);
    }
    return value;
}

const char* to_string(LpStatus s)
{
    switch (s)
    {
    case LpStatus::optimal:
        return "optimal";
    case LpStatus::infeasible:
        return "infeasible";
    case LpStatus::unbounded:
        return "unbounded";
    }
    return "unknown";
}

} // namespace czest
