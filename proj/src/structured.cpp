#include "sltrack/structured.hpp"

#include <algorithm>
#include <cmath>

#include "sltrack/mesh_gen.hpp"

namespace sltrack {

StructuredGrid::StructuredGrid(int cells) : M(cells), dx(1.0 / cells), mesh(generate_courant_mesh(cells)) {}

LocationResult direct_locate(const StructuredGrid& grid, const Point& p) {
  LocationResult r;
  const double xi = p.x() + 0.5;
  const double eta = p.y() + 0.5;
  if (!(xi >= 0.0 && xi <= 1.0 && eta >= 0.0 && eta <= 1.0)) return r;
  const int l = std::min(static_cast<int>(std::floor(xi / grid.dx)), grid.M - 1);
  const int m = std::min(static_cast<int>(std::floor(eta / grid.dx)), grid.M - 1);
  const Index cell = 2 * (grid.M * m + l);
  r.triangle = (xi - l * grid.dx < eta - m * grid.dx) ? cell : cell + 1;
  r.coords = barycentric_coords(grid.mesh, r.triangle, p);
  r.status = LocationStatus::kInside;
  return r;
}

LocateStats StructuredLocator::locate(std::span<const Point> queries, std::span<LocationResult> out) {
  LocateStats stats;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    out[i] = direct_locate(grid_, queries[i]);
    stats.record(out[i]);
  }
  return stats;
}

}  // namespace sltrack
