#include "sltrack/field.hpp"

#include <cmath>

namespace sltrack {

VectorField VectorField::rotating(double c0, double c1) {
  VectorField f;
  f.kind = Kind::kRotating;
  f.c0 = c0;
  f.c1 = c1;
  f.lx = c0;
  f.lt = c1;
  return f;
}

VectorField VectorField::constant(const Point& v) {
  VectorField f;
  f.kind = Kind::kConstant;
  f.velocity = v;
  return f;
}

VectorField VectorField::zero() { return {}; }

VectorField VectorField::from_function(std::function<Point(const Point&, double)> fn, double lx,
                                       double lt) {
  VectorField f;
  f.kind = Kind::kCustom;
  f.custom = std::move(fn);
  f.lx = lx;
  f.lt = lt;
  return f;
}

Point VectorField::operator()(const Point& x, double t) const {
  switch (kind) {
    case Kind::kRotating: {
      const double phase = c0 * x.norm() + c1 * t;
      return {std::cos(phase), std::sin(phase)};
    }
    case Kind::kConstant: return velocity;
    case Kind::kZero: return Point::Zero();
    case Kind::kCustom: return custom(x, t);
  }
  return Point::Zero();
}

}  // namespace sltrack
