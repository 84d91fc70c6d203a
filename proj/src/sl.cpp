#include "sltrack/sl.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace sltrack {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void euler_feet(const Triangulation& mesh, const VectorField& field, int n, double dt,
                std::span<Point> out, TimeLevel level) {
  const double t = (level == TimeLevel::kCurrent ? n : n + 1) * dt;
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Point& x = mesh.vertices[i];
    out[i] = x - dt * field(x, t);
  }
}

std::vector<Point> euler_feet(const Triangulation& mesh, const VectorField& field, int n,
                              double dt, TimeLevel level) {
  std::vector<Point> feet(mesh.vertices.size());
  euler_feet(mesh, field, n, dt, feet, level);
  return feet;
}

double p1_interpolate(std::span<const double> values, const LocationResult& loc,
                      const Triangulation& mesh) {
  if (!loc.inside()) throw OutsideInterpolationError();
  const auto& tri = mesh.triangles[loc.triangle];
  double w[3];
  double wsum = 0.0;
  for (int k = 0; k < 3; ++k) {
    w[k] = std::clamp(loc.coords[k], 0.0, 1.0);
    wsum += w[k];
  }
  const double v0 = values[tri[0]];
  const double v1 = values[tri[1]];
  const double v2 = values[tri[2]];
  const double value = (w[0] * v0 + w[1] * v1 + w[2] * v2) / wsum;
  return std::clamp(value, std::min({v0, v1, v2}), std::max({v0, v1, v2}));
}

std::vector<double> sample_nodes(const Triangulation& mesh,
                                 const std::function<double(const Point&)>& u0) {
  std::vector<double> values(mesh.vertices.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = u0(mesh.vertices[i]);
  return values;
}

std::function<double(const Point&)> gaussian(double sigma) {
  return [s2 = 2.0 * sigma * sigma](const Point& x) { return std::exp(-x.squaredNorm() / s2); };
}

int time_step_count(double t_final, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(t_final >= 0.0)) throw std::invalid_argument("final time must be non-negative");
  const double q = t_final / dt;
  const double r = std::round(q);
  if (std::abs(q - r) <= 1e-9 * std::max(1.0, r)) return static_cast<int>(r);
  return static_cast<int>(std::ceil(q));
}

LocateStats SLProfile::totals() const { return totals_from(0); }

LocateStats SLProfile::totals_from(int first) const {
  LocateStats sum;
  for (std::size_t n = static_cast<std::size_t>(std::max(first, 0)); n < per_step.size(); ++n)
    sum += per_step[n];
  return sum;
}

SLRun sl_advect(const Triangulation& mesh, PointLocator& locator, const VectorField& field,
                std::vector<double> u0, double dt, double t_final, const SLOptions& options) {
  const std::size_t n_nodes = mesh.vertices.size();
  if (u0.size() != n_nodes)
    throw std::invalid_argument("sl_advect: initial data must have one value per node");

  SLRun run;
  run.profile.steps = time_step_count(t_final, dt);
  run.profile.stability_violated = field.lx * dt >= 1.0;
  if (run.profile.stability_violated && options.warnings)
    *options.warnings << "warning: L_x * dt = " << field.lx * dt
                      << " >= 1; characteristics of neighbouring nodes may cross\n";

  SLState& state = run.state;
  state.values = std::move(u0);
  state.dt = dt;
  state.dx = mesh.space_scale;
  state.courant = options.speed * dt / mesh.space_scale;
  if (options.snapshot_every > 0) run.snapshots.push_back(state);

  std::vector<Point> feet(n_nodes);
  std::vector<LocationResult> located(n_nodes);
  std::vector<double> next(n_nodes);
  run.profile.per_step.reserve(run.profile.steps);
  for (int n = 0; n < run.profile.steps; ++n) {
    auto t0 = Clock::now();
    euler_feet(mesh, field, n, dt, feet, options.time_level);
    run.profile.query_seconds += seconds_since(t0);

    t0 = Clock::now();
    const LocateStats stats = locator.locate(feet, located);
    run.profile.locate_seconds += seconds_since(t0);

    t0 = Clock::now();
    for (std::size_t i = 0; i < n_nodes; ++i)
      next[i] = located[i].inside() ? p1_interpolate(state.values, located[i], mesh) : state.values[i];
    state.values.swap(next);
    state.time_index = n + 1;
    run.profile.interp_seconds += seconds_since(t0);

    run.profile.per_step.push_back(stats);
    if (options.on_step) options.on_step(state, stats);
    if (options.snapshot_every > 0 &&
        (state.time_index % options.snapshot_every == 0 || n + 1 == run.profile.steps))
      run.snapshots.push_back(state);
  }
  return run;
}

std::string snapshot_csv(const Triangulation& mesh, const SLState& state) {
  std::ostringstream os;
  os.precision(17);
  os << "node,x,y,value\n";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
    os << i << ',' << mesh.vertices[i].x() << ',' << mesh.vertices[i].y() << ',' << state.values[i]
       << '\n';
  return os.str();
}

}  // namespace sltrack
