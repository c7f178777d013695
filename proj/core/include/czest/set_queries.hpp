#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "czest/constrained_zonotope.hpp"
#include "czest/interval.hpp"

namespace czest {

/// Default residual tolerance for membership tests.
inline constexpr double kMembershipTol = 1e-8;

/// Smallest box containing Z. Zonotopes are handled in closed form, otherwise
/// 2n LPs are solved. Throws EmptySetError for an empty Z.
IntervalVector interval_hull(const ConstrainedZonotope& Z);

/// interval_hull padded outward by the LP tolerance, for use as a rigorous enclosure.
IntervalVector enclosing_box(const ConstrainedZonotope& Z);

/// True when some xi in B_inf(A, b) gives c + G xi = p, up to a residual
/// 1-norm of tol * max(1, ||p||_inf).
bool is_member(const ConstrainedZonotope& Z, const Eigen::VectorXd& p, double tol = kMembershipTol);

/// True when B_inf(A, b) is empty.
bool is_empty(const ConstrainedZonotope& Z);

/// Point of Z minimizing the 1-norm distance to h.
Eigen::VectorXd closest_point(const ConstrainedZonotope& Z, const Eigen::VectorXd& h);

/// Same set with representation center h (h - c must lie in the range of G).
ConstrainedZonotope rescale_with_center(const ConstrainedZonotope& Z, const Eigen::VectorXd& h);

/// Half the longest edge of the interval hull.
double radius_metric(const ConstrainedZonotope& Z);

/// max d^T x over Z, with the maximizer.
double support(const ConstrainedZonotope& Z, const Eigen::VectorXd& d, Eigen::VectorXd* argmax = nullptr);

/// Deterministic members of Z (not uniformly distributed when constrained).
std::vector<Eigen::VectorXd> sample_members(const ConstrainedZonotope& Z, std::size_t count, std::uint64_t seed);

/// Vertices of a 2-D set in counter-clockwise order, from support points in
/// `directions` evenly spaced directions.
std::vector<Eigen::Vector2d> polygon_2d(const ConstrainedZonotope& Z, int directions = 96);

} // namespace czest
