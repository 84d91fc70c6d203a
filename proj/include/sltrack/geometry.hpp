#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

#include <Eigen/Core>

namespace sltrack {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

using Point = Point2<double>;

/// Tolerance on barycentric coordinates for accepting a point as inside a
/// triangle. Points on a shared edge are accepted by both triangles.
inline constexpr double kInsideTolerance = 1e-12;

class DegenerateTriangleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Barycentric coordinates (theta_1, theta_2, theta_3) of a point with respect
/// to an ordered vertex triple. theta_3 is always defined by subtraction, so
/// the three entries sum to one up to a single rounding.
template <typename Scalar>
struct Barycentric {
  std::array<Scalar, 3> theta{Scalar(1), Scalar(0), Scalar(0)};

  Scalar operator[](std::size_t k) const { return theta[k]; }
  Scalar& operator[](std::size_t k) { return theta[k]; }

  /// Position of the smallest coordinate; ties go to the lowest position.
  std::size_t argmin() const {
    std::size_t k = 0;
    if (theta[1] < theta[k]) k = 1;
    if (theta[2] < theta[k]) k = 2;
    return k;
  }

  Scalar min() const { return theta[argmin()]; }

  bool inside(Scalar tol = Scalar(kInsideTolerance)) const { return min() >= -tol; }

  Scalar sum() const { return theta[0] + theta[1] + theta[2]; }

  template <typename Derived>
  Point2<Scalar> reconstruct(const Eigen::MatrixBase<Derived>& x1,
                             const Eigen::MatrixBase<Derived>& x2,
                             const Eigen::MatrixBase<Derived>& x3) const {
    return theta[0] * x1 + theta[1] * x2 + theta[2] * x3;
  }
};

/// Twice the signed area of (a, b, c); positive for counterclockwise order.
template <typename Scalar>
Scalar orient(const Point2<Scalar>& a, const Point2<Scalar>& b, const Point2<Scalar>& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

/// Positive when d lies strictly inside the circumcircle of the
/// counterclockwise triangle (a, b, c).
template <typename Scalar>
Scalar incircle(const Point2<Scalar>& a, const Point2<Scalar>& b, const Point2<Scalar>& c,
                const Point2<Scalar>& d) {
  const Point2<Scalar> ad = a - d;
  const Point2<Scalar> bd = b - d;
  const Point2<Scalar> cd = c - d;
  const Scalar a2 = ad.squaredNorm();
  const Scalar b2 = bd.squaredNorm();
  const Scalar c2 = cd.squaredNorm();
  return ad.x() * (bd.y() * c2 - b2 * cd.y()) - ad.y() * (bd.x() * c2 - b2 * cd.x()) +
         a2 * (bd.x() * cd.y() - bd.y() * cd.x());
}

/// Closed-form ratios for theta_1 and theta_2 over the common denominator
/// (eta2-eta3)(xi1-xi3) + (xi3-xi2)(eta1-eta3); theta_3 = 1 - theta_1 - theta_2.
/// Throws DegenerateTriangleError when the denominator vanishes.
template <typename Scalar>
Barycentric<Scalar> barycentric(const Point2<Scalar>& x1, const Point2<Scalar>& x2,
                                const Point2<Scalar>& x3, const Point2<Scalar>& p) {
  const Scalar d23_eta = x2.y() - x3.y();
  const Scalar d32_xi = x3.x() - x2.x();
  const Scalar denom = d23_eta * (x1.x() - x3.x()) + d32_xi * (x1.y() - x3.y());
  if (denom == Scalar(0)) throw DegenerateTriangleError("barycentric: degenerate triangle");
  const Scalar dxi = p.x() - x3.x();
  const Scalar deta = p.y() - x3.y();
  Barycentric<Scalar> b;
  b.theta[0] = (d23_eta * dxi + d32_xi * deta) / denom;
  b.theta[1] = ((x3.y() - x1.y()) * dxi + (x1.x() - x3.x()) * deta) / denom;
  b.theta[2] = Scalar(1) - b.theta[0] - b.theta[1];
  return b;
}

}  // namespace sltrack
