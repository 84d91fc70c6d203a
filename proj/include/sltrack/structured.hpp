#pragma once

#include "sltrack/location.hpp"
#include "sltrack/mesh.hpp"

namespace sltrack {

/// Courant triangulation of [-1/2, 1/2]^2 with M cells per side.
struct StructuredGrid {
  explicit StructuredGrid(int M);

  int M;
  double dx;
  Triangulation mesh;
};

/// Constant-time location on the Courant triangulation: cell (l, m) from two
/// floors (clamped to M - 1 on the top/right boundary), then the diagonal
/// test picks triangle 2(M m + l) when the x-fraction is strictly below the
/// y-fraction and 2(M m + l) + 1 otherwise. Returns the barycentric
/// coordinates as well. Outside for points not in the closed square.
LocationResult direct_locate(const StructuredGrid& grid, const Point& p);

class StructuredLocator final : public PointLocator {
 public:
  explicit StructuredLocator(const StructuredGrid& grid) : grid_(grid) {}

  std::string name() const override { return "structured"; }
  LocateStats locate(std::span<const Point> queries, std::span<LocationResult> out) override;
  std::size_t storage_bytes() const override { return 0; }

 private:
  const StructuredGrid& grid_;
};

}  // namespace sltrack
