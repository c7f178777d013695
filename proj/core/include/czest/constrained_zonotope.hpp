#pragma once

#include <Eigen/Dense>

namespace czest {

/**
 * Constrained zonotope {c + G xi : ||xi||_inf <= 1, A xi = b} in CG-rep.
 *
 * With zero constraint rows this is a plain zonotope. A has as many columns
 * as G even when it has no rows.
 */
class ConstrainedZonotope
{
public:
    ConstrainedZonotope() = default;

    /// Throws DimensionError when the four blocks disagree.
    ConstrainedZonotope(Eigen::MatrixXd G, Eigen::VectorXd c, Eigen::MatrixXd A, Eigen::VectorXd b);

    static ConstrainedZonotope zonotope(Eigen::MatrixXd G, Eigen::VectorXd c);
    /// Degenerate set {c} with no generators.
    static ConstrainedZonotope point(Eigen::VectorXd c);
    /// Axis-aligned box [lo, hi] as a zonotope with one generator per non-flat axis.
    static ConstrainedZonotope box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);
    /// ||x - center||_inf <= radius, with n generators.
    static ConstrainedZonotope ball_inf(const Eigen::VectorXd& center, double radius);

    const Eigen::MatrixXd& G() const { return G_; }
    const Eigen::VectorXd& c() const { return c_; }
    const Eigen::MatrixXd& A() const { return A_; }
    const Eigen::VectorXd& b() const { return b_; }

    Eigen::Index dim() const { return c_.size(); }
    Eigen::Index num_generators() const { return G_.cols(); }
    Eigen::Index num_constraints() const { return A_.rows(); }
    bool is_zonotope() const { return A_.rows() == 0; }

    /// Same set shifted by d.
    ConstrainedZonotope translated(const Eigen::VectorXd& d) const;

private:
    Eigen::MatrixXd G_;
    Eigen::VectorXd c_;
    Eigen::MatrixXd A_;
    Eigen::VectorXd b_;
};

/// {R G, R c, A, b}
ConstrainedZonotope linear_map(const Eigen::MatrixXd& R, const ConstrainedZonotope& Z);

/// Z + W in the Minkowski sense.
ConstrainedZonotope minkowski_sum(const ConstrainedZonotope& Z, const ConstrainedZonotope& W);

/// {z in Z : R z in Y}
ConstrainedZonotope generalized_intersect(const ConstrainedZonotope& Z, const Eigen::MatrixXd& R,
                                          const ConstrainedZonotope& Y);

/// Plain intersection Z cap Y (R = I).
ConstrainedZonotope intersect(const ConstrainedZonotope& Z, const ConstrainedZonotope& Y);

/// X x W
ConstrainedZonotope cartesian_product(const ConstrainedZonotope& X, const ConstrainedZonotope& W);

/// Vertically stacks two blocks sharing a column count (helper for CG-rep assembly).
Eigen::MatrixXd vstack(const Eigen::MatrixXd& top, const Eigen::MatrixXd& bottom);
Eigen::MatrixXd hstack(const Eigen::MatrixXd& left, const Eigen::MatrixXd& right);
Eigen::MatrixXd blkdiag(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
Eigen::VectorXd vcat(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

} // namespace czest
