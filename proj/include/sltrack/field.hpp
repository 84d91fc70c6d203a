#pragma once

#include <functional>

#include "sltrack/geometry.hpp"

namespace sltrack {

/// Advecting velocity f(x, t) with declared Lipschitz constants in space (lx)
/// and time (lt).
struct VectorField {
  enum class Kind { kRotating, kConstant, kZero, kCustom };

  Kind kind = Kind::kZero;
  double c0 = 0.0;  // spatial frequency, rad per unit length
  double c1 = 0.0;  // temporal frequency, rad per unit time
  Point velocity = Point::Zero();
  std::function<Point(const Point&, double)> custom;
  double lx = 0.0;
  double lt = 0.0;

  /// (cos(c0 |x| + c1 t), sin(c0 |x| + c1 t)): unit norm everywhere, with
  /// lx = c0 and lt = c1.
  static VectorField rotating(double c0, double c1);
  static VectorField constant(const Point& v);
  static VectorField zero();
  static VectorField from_function(std::function<Point(const Point&, double)> f, double lx,
                                   double lt);

  Point operator()(const Point& x, double t) const;
};

inline Point eval_field(const VectorField& field, const Point& x, double t) { return field(x, t); }

}  // namespace sltrack
