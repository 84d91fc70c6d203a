#pragma once

#include <functional>
#include <iostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sltrack/field.hpp"
#include "sltrack/location.hpp"
#include "sltrack/mesh.hpp"

namespace sltrack {

/// Time at which the velocity is sampled when tracking a foot from t_{n+1}
/// back to t_n.
enum class TimeLevel {
  kCurrent,  // f(x_i, t_n)
  kNext,     // f(x_i, t_{n+1})
};

/// Feet of the characteristics q_i = x_i - dt f(x_i, t) for every node, with
/// t = n dt or (n + 1) dt per the time level.
void euler_feet(const Triangulation& mesh, const VectorField& field, int n, double dt,
                std::span<Point> out, TimeLevel level = TimeLevel::kCurrent);
std::vector<Point> euler_feet(const Triangulation& mesh, const VectorField& field, int n,
                              double dt, TimeLevel level = TimeLevel::kCurrent);

class OutsideInterpolationError : public std::logic_error {
 public:
  OutsideInterpolationError() : std::logic_error("p1_interpolate: query is outside the mesh") {}
};

/// Linear interpolation of nodal values inside the located triangle. Weights
/// are clamped to [0, 1] and renormalised, and the result is clamped to the
/// range of the three vertex values, so the output never leaves that range.
double p1_interpolate(std::span<const double> values, const LocationResult& loc,
                      const Triangulation& mesh);

/// Samples u0 at every node.
std::vector<double> sample_nodes(const Triangulation& mesh,
                                 const std::function<double(const Point&)>& u0);

/// exp(-|x|^2 / (2 sigma^2)).
std::function<double(const Point&)> gaussian(double sigma = 0.1);

/// ceil(T / dt), treating quotients within 1e-9 (relative) of an integer as
/// that integer.
int time_step_count(double t_final, double dt);

struct SLState {
  std::vector<double> values;
  int time_index = 0;
  double dt = 0.0;
  double dx = 0.0;
  double courant = 0.0;  // max|f| dt / dx, declared for unit-norm fields
};

struct SLProfile {
  int steps = 0;
  double query_seconds = 0.0;
  double locate_seconds = 0.0;
  double interp_seconds = 0.0;
  std::vector<LocateStats> per_step;
  bool stability_violated = false;  // lx * dt >= 1

  double total_seconds() const { return query_seconds + locate_seconds + interp_seconds; }
  double location_fraction() const {
    const double total = total_seconds();
    return total > 0.0 ? locate_seconds / total : 0.0;
  }
  LocateStats totals() const;
  /// Same as totals(), restricted to steps [first, steps).
  LocateStats totals_from(int first) const;
};

struct SLOptions {
  TimeLevel time_level = TimeLevel::kCurrent;
  /// Keep a copy of V every this many steps (plus V^0 and the final state);
  /// 0 keeps none.
  int snapshot_every = 0;
  /// Speed used for the recorded Courant number.
  double speed = 1.0;
  /// Receives the stability warning; null silences it.
  std::ostream* warnings = &std::clog;
  std::function<void(const SLState&, const LocateStats&)> on_step;
};

struct SLRun {
  SLState state;
  std::vector<SLState> snapshots;
  SLProfile profile;
};

/// Semi-Lagrangian advection: ceil(T / dt) steps of Euler foot tracking,
/// batch location with the given locator, and P1 interpolation. Nodes whose
/// foot is outside the mesh keep their previous value.
SLRun sl_advect(const Triangulation& mesh, PointLocator& locator, const VectorField& field,
                std::vector<double> u0, double dt, double t_final, const SLOptions& options = {});

/// "node,x,y,value" rows, header first, node indices 0-based.
std::string snapshot_csv(const Triangulation& mesh, const SLState& state);

}  // namespace sltrack
