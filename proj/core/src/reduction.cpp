#include "czest/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "czest/error.hpp"

namespace czest {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kUnitRoundoff = 0x1p-53;
// Bound changes smaller than this do not re-trigger propagation.
constexpr double kProgress = 1e-9;
// Coefficients below this fraction of their row's largest entry are not solved for.
constexpr double kRelPivot = 1e-9;
constexpr double kZeroRow = 1e-12;
// relative size below which an updated constraint row counts as cancelled
constexpr double kCancelled = 1e-9;
// Pivot candidates that get the full width score.
constexpr std::size_t kCandidates = 64;
// Pivots below this fraction of their row's largest entry are not candidates.
constexpr double kCandidatePivot = 1e-3;

/*
 * Worklist interval propagation on A xi = b over the box [lo, hi]. Rows flagged
 * in `dirty` are processed first; any bound change re-flags the rows that
 * touch that variable. Returns false when the box becomes empty.
 */
bool propagate(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, Eigen::VectorXd& lo, Eigen::VectorXd& hi,
               std::vector<char> dirty, int& sweeps)
{
    const Eigen::Index m = A.rows();
    const Eigen::Index ng = A.cols();
    sweeps = 0;
    if (m == 0)
        return true;
    const double slack_factor = 8.0 * static_cast<double>(ng + 4) * kUnitRoundoff;

    std::vector<double> tmin(static_cast<std::size_t>(ng)), tmax(static_cast<std::size_t>(ng));
    bool any = std::find(dirty.begin(), dirty.end(), 1) != dirty.end();
    while (any && sweeps < kMaxSweeps)
    {
        ++sweeps;
        std::vector<char> next(static_cast<std::size_t>(m), 0);
        any = false;
        for (Eigen::Index r = 0; r < m; ++r)
        {
            if (!dirty[r])
                continue;
            double s_lo = 0.0, s_hi = 0.0, mag = std::abs(b(r)), row_max = 0.0;
            for (Eigen::Index k = 0; k < ng; ++k)
            {
                const double a = A(r, k);
                const double p = a * lo(k), q = a * hi(k);
                tmin[k] = std::min(p, q);
                tmax[k] = std::max(p, q);
                s_lo += tmin[k];
                s_hi += tmax[k];
                mag += std::max(std::abs(p), std::abs(q));
                row_max = std::max(row_max, std::abs(a));
            }
            if (row_max < kZeroRow)
                continue;
            const double err = slack_factor * mag;
            for (Eigen::Index j = 0; j < ng; ++j)
            {
                const double a = A(r, j);
                if (std::abs(a) < kRelPivot * row_max)
                    continue;
                const double o_lo = s_lo - tmin[j];
                const double o_hi = s_hi - tmax[j];
                double c_lo, c_hi;
                if (a > 0.0)
                {
                    c_lo = (b(r) - o_hi - err) / a;
                    c_hi = (b(r) - o_lo + err) / a;
                }
                else
                {
                    c_lo = (b(r) - o_lo + err) / a;
                    c_hi = (b(r) - o_hi - err) / a;
                }
                const double pad = kUnitRoundoff * 4.0 * (std::abs(c_lo) + std::abs(c_hi));
                c_lo -= pad;
                c_hi += pad;
                bool changed = false;
                if (c_lo > lo(j))
                {
                    if (c_lo - lo(j) > kProgress)
                        changed = true;
                    lo(j) = c_lo;
                }
                if (c_hi < hi(j))
                {
                    if (hi(j) - c_hi > kProgress)
                        changed = true;
                    hi(j) = c_hi;
                }
                if (lo(j) > hi(j))
                    return false;
                // keep the running sums in step with the new bounds
                const double p = a * lo(j), q = a * hi(j);
                const double nmin = std::min(p, q), nmax = std::max(p, q);
                s_lo += nmin - tmin[j];
                s_hi += nmax - tmax[j];
                tmin[j] = nmin;
                tmax[j] = nmax;
                if (changed)
                {
                    for (Eigen::Index i = 0; i < m; ++i)
                    {
                        if (i != r && A(i, j) != 0.0)
                        {
                            next[i] = 1;
                            any = true;
                        }
                    }
                }
            }
        }
        dirty.swap(next);
    }
    return true;
}

void remove_column(Eigen::MatrixXd& M, Eigen::Index j)
{
    const Eigen::Index cols = M.cols();
    if (j < cols - 1)
        M.middleCols(j, cols - 1 - j) = M.rightCols(cols - 1 - j).eval();
    M.conservativeResize(M.rows(), cols - 1);
}

void remove_row(Eigen::MatrixXd& M, Eigen::Index i)
{
    const Eigen::Index rows = M.rows();
    if (i < rows - 1)
        M.middleRows(i, rows - 1 - i) = M.bottomRows(rows - 1 - i).eval();
    M.conservativeResize(rows - 1, M.cols());
}

void remove_entry(Eigen::VectorXd& v, Eigen::Index i)
{
    const Eigen::Index n = v.size();
    if (i < n - 1)
        v.segment(i, n - 1 - i) = v.tail(n - 1 - i).eval();
    v.conservativeResize(n - 1);
}

// Scales each row of [A b] to unit max-norm in A; numerically zero rows stay as they are.
void normalize_rows(Eigen::MatrixXd& A, Eigen::VectorXd& b)
{
    for (Eigen::Index i = 0; i < A.rows(); ++i)
    {
        const double r = A.cols() > 0 ? A.row(i).cwiseAbs().maxCoeff() : 0.0;
        if (r >= kZeroRow && r != 1.0)
        {
            A.row(i) /= r;
            b(i) /= r;
        }
    }
}

// Removes rows whose max-norm fell below kCancelled times `before` (the scale the
// row had before the last update); what is left of them is rounding noise.
std::size_t drop_cancelled_rows(Eigen::MatrixXd& A, Eigen::VectorXd& b, const Eigen::VectorXd& before,
                                std::vector<char>* dirty)
{
    std::size_t dropped = 0;
    for (Eigen::Index i = A.rows() - 1; i >= 0; --i)
    {
        const double now = A.cols() > 0 ? A.row(i).cwiseAbs().maxCoeff() : 0.0;
        if (now >= kCancelled * before(i))
            continue;
        remove_row(A, i);
        remove_entry(b, i);
        if (dirty)
            dirty->erase(dirty->begin() + i);
        ++dropped;
    }
    return dropped;
}

/*
 * In-place Gauss-Jordan elimination with full pivoting. Pivots are the
 * largest remaining |entry|, ties to the lowest (row, column). Rows left
 * numerically zero are removed; returns their original indices, in
 * decreasing order, and sets `inconsistent` if such a row had a nonzero
 * right-hand side.
 */
std::vector<Eigen::Index> gauss_jordan(Eigen::MatrixXd& A, Eigen::VectorXd& b, bool& inconsistent)
{
    const Eigen::Index m = A.rows();
    const Eigen::Index ng = A.cols();
    // dependence is judged row by row, so rows of very different size are put on one scale
    normalize_rows(A, b);
    const double tol = 1e-10;
    std::vector<char> row_done(static_cast<std::size_t>(m), 0), col_done(static_cast<std::size_t>(ng), 0);
    Eigen::Index done = 0;
    for (; done < m; ++done)
    {
        Eigen::Index pr = -1, pc = -1;
        double best = tol;
        for (Eigen::Index i = 0; i < m; ++i)
        {
            if (row_done[i])
                continue;
            for (Eigen::Index j = 0; j < ng; ++j)
            {
                if (col_done[j])
                    continue;
                const double v = std::abs(A(i, j));
                if (v > best)
                {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        }
        if (pr < 0)
            break;
        row_done[pr] = 1;
        col_done[pc] = 1;
        const double piv = A(pr, pc);
        A.row(pr) /= piv;
        b(pr) /= piv;
        A(pr, pc) = 1.0;
        for (Eigen::Index i = 0; i < m; ++i)
        {
            if (i == pr)
                continue;
            const double f = A(i, pc);
            if (f == 0.0)
                continue;
            A.row(i) -= f * A.row(pr);
            b(i) -= f * b(pr);
            A(i, pc) = 0.0;
        }
    }
    std::vector<Eigen::Index> removed;
    inconsistent = false;
    const double btol = 1e-9 * (1.0 + (b.size() > 0 ? b.cwiseAbs().maxCoeff() : 0.0));
    for (Eigen::Index i = m - 1; i >= 0; --i)
    {
        if (row_done[i])
            continue;
        if (std::abs(b(i)) > btol)
            inconsistent = true;
        remove_row(A, i);
        remove_entry(b, i);
        removed.push_back(i);
    }
    return removed;
}

/*
 * Picks the generator to solve for and the row to solve with. A generator
 * whose range implied by the rows already lies in [-1, 1] is dropped exactly.
 * Otherwise each (row, generator) pair is scored by the total width of the
 * zonotope {c, G - g_j a_r / a_rj} left after the substitution, the
 * remaining constraints ignored. Only the kCandidates best pairs by the cheap
 * upper bound |g_j|_1 (|a_r|_1 / |a_rj| - 1) get the full score.
 */
void choose_pivot(const Eigen::MatrixXd& G, const Eigen::MatrixXd& A, const Eigen::VectorXd& b, Eigen::Index& br,
                  Eigen::Index& bj)
{
    const Eigen::Index m = A.rows();
    const Eigen::Index ng = A.cols();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    br = -1;
    bj = -1;

    Eigen::VectorXd row_abs(m), row_max(m);
    for (Eigen::Index r = 0; r < m; ++r)
    {
        row_abs(r) = A.row(r).cwiseAbs().sum();
        row_max(r) = A.row(r).cwiseAbs().maxCoeff();
    }

    Eigen::VectorXd imp_lo = Eigen::VectorXd::Constant(ng, -kInf);
    Eigen::VectorXd imp_hi = Eigen::VectorXd::Constant(ng, kInf);
    std::vector<Eigen::Index> pivot_row(static_cast<std::size_t>(ng), -1);
    Eigen::VectorXd pivot_rel = Eigen::VectorXd::Zero(ng);
    for (Eigen::Index r = 0; r < m; ++r)
    {
        if (row_max(r) < kZeroRow)
            continue;
        for (Eigen::Index j = 0; j < ng; ++j)
        {
            const double a = std::abs(A(r, j));
            if (a < 1e-6 * row_max(r))
                continue;
            const double center = b(r) / A(r, j);
            const double radius = (row_abs(r) - a) / a;
            imp_lo(j) = std::max(imp_lo(j), center - radius);
            imp_hi(j) = std::min(imp_hi(j), center + radius);
            const double rel = a / row_max(r);
            if (rel > pivot_rel(j))
            {
                pivot_rel(j) = rel;
                pivot_row[static_cast<std::size_t>(j)] = r;
            }
        }
    }

    for (Eigen::Index j = 0; j < ng; ++j)
    {
        const Eigen::Index r = pivot_row[static_cast<std::size_t>(j)];
        if (r >= 0 && std::max(std::abs(imp_lo(j)), std::abs(imp_hi(j))) <= 1.0 + 1e-12)
        {
            bj = j;
            br = r;
            return;
        }
    }

    struct Pair
    {
        double bound;
        Eigen::Index r, j;
    };
    // Dropping row r lets xi_j leave [-1, 1] by up to `excess`; moving the other
    // generators along a_r by the least amount needed shifts x by about excess * |d|_1.
    const Eigen::MatrixXd GA = G * A.transpose();
    const Eigen::VectorXd row_sq = A.rowwise().squaredNorm();
    const Eigen::VectorXd g_abs = G.cwiseAbs().colwise().sum().transpose();
    auto slab = [&](Eigen::Index r, Eigen::Index j) {
        const double a = A(r, j);
        const double rest_sq = row_sq(r) - a * a;
        if (rest_sq <= 1e-24 * row_sq(r))
            return 0.0;
        const double excess = std::abs(b(r) / a) + (row_abs(r) - std::abs(a)) / std::abs(a) - 1.0;
        if (excess <= 0.0)
            return 0.0;
        double shift = 0.0;
        for (Eigen::Index i = 0; i < G.rows(); ++i)
            shift += std::abs(G(i, j) - (GA(i, r) - G(i, j) * a) * a / rest_sq);
        return excess * shift;
    };
    std::vector<Pair> pairs;
    for (Eigen::Index r = 0; r < m; ++r)
    {
        if (row_max(r) < kZeroRow)
            continue;
        for (Eigen::Index j = 0; j < ng; ++j)
        {
            const double a = std::abs(A(r, j));
            if (a < kCandidatePivot * row_max(r))
                continue;
            pairs.push_back({g_abs(j) * (row_abs(r) / a - 1.0) + slab(r, j), r, j});
        }
    }
    if (pairs.empty())
        return;
    const std::size_t keep = std::min(pairs.size(), kCandidates);
    std::partial_sort(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(keep), pairs.end(),
                      [](const Pair& x, const Pair& y) {
                          return x.bound < y.bound || (x.bound == y.bound && (x.r < y.r || (x.r == y.r && x.j < y.j)));
                      });

    double best = kInf;
    for (std::size_t i = 0; i < keep; ++i)
    {
        const auto [ub, r, j] = pairs[i];
        const double inv = 1.0 / A(r, j);
        double width = 0.0;
        for (Eigen::Index k = 0; k < ng; ++k)
        {
            if (k == j)
                continue;
            width += (G.col(k) - (A(r, k) * inv) * G.col(j)).lpNorm<1>();
        }
        width += slab(r, j);
        if (width < best)
        {
            best = width;
            br = r;
            bj = j;
        }
    }
    if (bj < 0)
    {
        br = pairs.front().r;
        bj = pairs.front().j;
    }
}

} // namespace

GeneratorBounds tighten_generator_bounds(const Eigen::MatrixXd& A, const Eigen::VectorXd& b)
{
    if (A.rows() != b.size())
        throw DimensionError("tighten_generator_bounds: A rows and b length differ");
    GeneratorBounds out;
    out.lo = -Eigen::VectorXd::Ones(A.cols());
    out.hi = Eigen::VectorXd::Ones(A.cols());
    std::vector<char> dirty(static_cast<std::size_t>(A.rows()), 1);
    out.empty = !propagate(A, b, out.lo, out.hi, std::move(dirty), out.sweeps);
    return out;
}

ConstrainedZonotope eliminate_constraints(const ConstrainedZonotope& Z, Eigen::Index k, EliminationTrail* trail,
                                          bool record)
{
    if (k < 0 || k > Z.num_constraints())
        throw DimensionError("eliminate_constraints: cannot remove " + std::to_string(k) + " of " +
                             std::to_string(Z.num_constraints()) + " constraints");
    EliminationTrail local;
    EliminationTrail& tr = trail ? *trail : local;
    tr = EliminationTrail{};
    tr.offset = Eigen::VectorXd::Zero(Z.dim());
    if (k == 0)
    {
        tr.G0 = Z.G();
        tr.c0 = Z.c();
        return Z;
    }

    Eigen::MatrixXd G = Z.G();
    Eigen::VectorXd c = Z.c();
    Eigen::MatrixXd A = Z.A();
    Eigen::VectorXd b = Z.b();
    const Eigen::Index n = Z.dim();

    // the reduced form only finds redundant rows; the pivot scores work on the rows as given
    bool inconsistent = false;
    {
        Eigen::MatrixXd A_gj = A;
        Eigen::VectorXd b_gj = b;
        for (const Eigen::Index i : gauss_jordan(A_gj, b_gj, inconsistent))
        {
            remove_row(A, i);
            remove_entry(b, i);
            ++tr.dropped_rows;
        }
    }
    tr.empty = inconsistent;
    normalize_rows(A, b);
    const Eigen::Index keep_rows = Z.num_constraints() - k;

    Eigen::VectorXd lo = -Eigen::VectorXd::Ones(G.cols());
    Eigen::VectorXd hi = Eigen::VectorXd::Ones(G.cols());
    int sweeps = 0;
    if (!propagate(A, b, lo, hi, std::vector<char>(static_cast<std::size_t>(A.rows()), 1), sweeps))
        tr.empty = true;

    auto rescale = [&](Eigen::VectorXd& xi_m) {
        if (tr.empty)
        {
            lo = lo.cwiseMin(hi);
            hi = hi.cwiseMax(lo);
        }
        xi_m = 0.5 * (lo + hi);
        const Eigen::VectorXd xi_r = 0.5 * (hi - lo);
        bool trivial = true;
        for (Eigen::Index j = 0; j < xi_m.size() && trivial; ++j)
            trivial = xi_m(j) == 0.0 && xi_r(j) == 1.0;
        if (!trivial)
        {
            c += G * xi_m;
            b -= A * xi_m;
            G = G * xi_r.asDiagonal();
            const Eigen::VectorXd before = A.cwiseAbs().rowwise().maxCoeff();
            A = A * xi_r.asDiagonal();
            tr.dropped_rows += drop_cancelled_rows(A, b, before, nullptr);
            normalize_rows(A, b);
        }
        lo.setConstant(-1.0);
        hi.setConstant(1.0);
    };

    for (Eigen::Index level = 0; A.rows() > keep_rows; ++level)
    {
        EliminationLevel rec;
        if (record)
            rec.G_bar = G;
        const Eigen::VectorXd c_before = c;
        Eigen::VectorXd xi_m;
        rescale(xi_m);
        if (A.rows() <= keep_rows)
            break;

        Eigen::Index br = -1, bj = -1;
        choose_pivot(G, A, b, br, bj);

        if (br < 0)
        {
            // only numerically zero rows are left: they carry no information
            const double btol = 1e-9 * (1.0 + b.cwiseAbs().maxCoeff());
            if (b.cwiseAbs().maxCoeff() > btol)
                tr.empty = true;
            tr.dropped_rows += static_cast<std::size_t>(A.rows());
            A.resize(0, G.cols());
            b.resize(0);
            break;
        }

        const double piv = A(br, bj);
        const Eigen::VectorXd lam_g = G.col(bj) / piv;
        Eigen::VectorXd lam_a = A.col(bj) / piv;
        lam_a(br) = 0.0;
        const double b_r = b(br);

        if (record)
        {
            rec.xi_m = xi_m;
            rec.Lambda_G = Eigen::MatrixXd::Zero(n, A.rows());
            rec.Lambda_G.col(br) = lam_g;
            rec.b_tilde = b;
            rec.row = br;
            rec.column = bj;
        }
        tr.offset += (c - c_before) + lam_g * b_r;

        const Eigen::RowVectorXd a_r = A.row(br);
        c += lam_g * b_r;
        G.noalias() -= lam_g * a_r;
        b -= lam_a * b_r;
        std::vector<char> dirty(static_cast<std::size_t>(A.rows()), 0);
        const double a_r_max = a_r.cwiseAbs().maxCoeff();
        Eigen::VectorXd before = A.cwiseAbs().rowwise().maxCoeff();
        for (Eigen::Index i = 0; i < A.rows(); ++i)
        {
            if (lam_a(i) != 0.0)
            {
                before(i) += std::abs(lam_a(i)) * a_r_max;
                A.row(i).noalias() -= lam_a(i) * a_r;
                dirty[i] = 1;
            }
        }

        remove_column(G, bj);
        remove_column(A, bj);
        remove_row(A, br);
        remove_entry(b, br);
        remove_entry(lo, bj);
        remove_entry(hi, bj);
        dirty.erase(dirty.begin() + br);
        remove_entry(before, br);
        tr.dropped_rows += drop_cancelled_rows(A, b, before, &dirty);
        normalize_rows(A, b);

        if (!propagate(A, b, lo, hi, std::move(dirty), sweeps))
            tr.empty = true;
        if (record)
            tr.levels.push_back(std::move(rec));
    }

    if (A.rows() > 0)
    {
        Eigen::VectorXd xi_m;
        rescale(xi_m);
    }
    tr.G0 = G;
    tr.c0 = c;
    return {std::move(G), std::move(c), std::move(A), std::move(b)};
}

ConstrainedZonotope to_zonotope(const ConstrainedZonotope& Z, EliminationTrail* trail)
{
    return eliminate_constraints(Z, Z.num_constraints(), trail, trail != nullptr);
}

namespace {

// Sort by norm, keep the largest, box the rest into one column per nonzero row.
Eigen::MatrixXd box_reduce(const Eigen::MatrixXd& L, Eigen::Index target)
{
    const Eigen::Index d = L.rows();
    const Eigen::Index ng = L.cols();
    const Eigen::VectorXd norms = L.colwise().norm().transpose();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(ng));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return norms(a) > norms(b); });

    const Eigen::Index keep = target - d;
    std::vector<char> kept(static_cast<std::size_t>(ng), 0);
    for (Eigen::Index i = 0; i < keep; ++i)
        kept[order[i]] = 1;

    Eigen::VectorXd box = Eigen::VectorXd::Zero(d);
    for (Eigen::Index j = 0; j < ng; ++j)
    {
        if (!kept[j])
            box += L.col(j).cwiseAbs();
    }
    // absorb the rounding of the sums above
    box *= 1.0 + 4.0 * static_cast<double>(ng) * kUnitRoundoff;

    Eigen::Index nbox = 0;
    for (Eigen::Index i = 0; i < d; ++i)
        nbox += box(i) > 0.0 ? 1 : 0;

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, keep + nbox);
    Eigen::Index col = 0;
    for (Eigen::Index j = 0; j < ng; ++j)
    {
        if (kept[j])
            out.col(col++) = L.col(j);
    }
    for (Eigen::Index i = 0; i < d; ++i)
    {
        if (box(i) > 0.0)
            out(i, col++) = box(i);
    }
    return out;
}

/*
 * Merges the surplus columns into a basis T of d kept columns: R xi_R lies in
 * T diag(|T^-1 R| 1) [-1, 1]^d, so scaling T by 1 + |T^-1 R| 1 absorbs them.
 * T is picked greedily by largest residual after projecting out the columns
 * already chosen, on row-normalized data; the surplus is the columns cheapest
 * to express in T. Returns an empty matrix when L has no full-rank basis.
 */
Eigen::MatrixXd parallelotope_reduce(const Eigen::MatrixXd& L, Eigen::Index target)
{
    const Eigen::Index d = L.rows();
    const Eigen::Index ng = L.cols();
    Eigen::VectorXd row_norm = L.rowwise().norm();
    for (Eigen::Index i = 0; i < d; ++i)
        if (row_norm(i) == 0.0)
            return {};
    const Eigen::MatrixXd Ln = row_norm.cwiseInverse().asDiagonal() * L;

    std::vector<Eigen::Index> basis;
    std::vector<char> in_basis(static_cast<std::size_t>(ng), 0);
    Eigen::MatrixXd res = Ln;
    const double floor = 1e-8 * Ln.colwise().norm().maxCoeff();
    for (Eigen::Index t = 0; t < d; ++t)
    {
        Eigen::Index pick = -1;
        double pick_norm = 0.0;
        for (Eigen::Index j = 0; j < ng; ++j)
        {
            if (in_basis[j])
                continue;
            const double v = res.col(j).norm();
            if (v > pick_norm)
            {
                pick_norm = v;
                pick = j;
            }
        }
        if (pick < 0 || pick_norm <= floor)
            return {};
        in_basis[pick] = 1;
        basis.push_back(pick);
        const Eigen::VectorXd q = res.col(pick) / pick_norm;
        res -= q * (q.transpose() * res);
    }

    Eigen::MatrixXd T(d, d);
    for (Eigen::Index k = 0; k < d; ++k)
        T.col(k) = L.col(basis[k]);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(T);
    std::vector<Eigen::Index> rest;
    for (Eigen::Index j = 0; j < ng; ++j)
        if (!in_basis[j])
            rest.push_back(j);
    Eigen::MatrixXd R(d, static_cast<Eigen::Index>(rest.size()));
    for (std::size_t i = 0; i < rest.size(); ++i)
        R.col(static_cast<Eigen::Index>(i)) = L.col(rest[i]);
    const Eigen::MatrixXd M = lu.solve(R);
    if (!M.allFinite())
        return {};

    Eigen::VectorXd t_norm(d);
    for (Eigen::Index k = 0; k < d; ++k)
        t_norm(k) = Ln.col(basis[k]).norm();
    std::vector<std::pair<double, std::size_t>> cost(rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i)
        cost[i] = {M.col(static_cast<Eigen::Index>(i)).cwiseAbs().dot(t_norm), i};
    std::stable_sort(cost.begin(), cost.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    const std::size_t drop_count = static_cast<std::size_t>(ng - target);
    std::vector<char> dropped(static_cast<std::size_t>(ng), 0);
    Eigen::VectorXd scale = Eigen::VectorXd::Ones(d);
    Eigen::VectorXd miss = Eigen::VectorXd::Zero(d);
    for (std::size_t i = 0; i < drop_count; ++i)
    {
        const Eigen::Index col = static_cast<Eigen::Index>(cost[i].second);
        scale += M.col(col).cwiseAbs();
        miss += (R.col(col) - T * M.col(col)).cwiseAbs();
        dropped[rest[cost[i].second]] = 1;
    }
    // the solve is inexact: cover its residual in basis coordinates, then the sums' rounding
    const Eigen::MatrixXd T_inv = lu.inverse();
    scale += T_inv.cwiseAbs() * (2.0 * miss);
    scale *= 1.0 + 8.0 * static_cast<double>(ng + d) * kUnitRoundoff;
    if (!scale.allFinite())
        return {};

    Eigen::MatrixXd out(d, target);
    Eigen::Index col = 0;
    for (Eigen::Index j = 0; j < ng; ++j)
    {
        if (dropped[j])
            continue;
        out.col(col) = L.col(j);
        if (in_basis[j])
        {
            const auto k = std::find(basis.begin(), basis.end(), j) - basis.begin();
            out.col(col) *= scale(k);
        }
        ++col;
    }
    return out;
}

} // namespace

ConstrainedZonotope reduce_generators(const ConstrainedZonotope& Z, Eigen::Index target)
{
    const Eigen::Index n = Z.dim();
    const Eigen::Index nc = Z.num_constraints();
    const Eigen::Index ng = Z.num_generators();
    if (target < n + nc)
        throw DimensionError("reduce_generators: target " + std::to_string(target) + " is below n + n_c = " +
                             std::to_string(n + nc));
    if (ng <= target)
        return Z;
    if (nc == 0)
        return ConstrainedZonotope::zonotope(box_reduce(Z.G(), target), Z.c());

    const Eigen::MatrixXd L = vstack(Z.G(), Z.A());
    Eigen::MatrixXd Lr = parallelotope_reduce(L, target);
    if (Lr.size() == 0)
        Lr = box_reduce(L, target);
    return {Lr.topRows(n), Z.c(), Lr.bottomRows(nc), Z.b()};
}

ConstrainedZonotope reduce(const ConstrainedZonotope& Z, const ReductionConfig& cfg)
{
    ConstrainedZonotope out = Z;
    if (out.num_constraints() > cfg.max_constraints)
        out = eliminate_constraints(out, out.num_constraints() - cfg.max_constraints, nullptr, false);
    if (out.num_generators() > cfg.max_generators)
        out = reduce_generators(out, cfg.max_generators);
    if (out.num_constraints() == 0)
        return out;
    // same set, constraint rows on a common scale
    Eigen::MatrixXd A = out.A();
    Eigen::VectorXd b = out.b();
    normalize_rows(A, b);
    return {out.G(), out.c(), std::move(A), std::move(b)};
}

} // namespace czest
