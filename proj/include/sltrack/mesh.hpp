#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sltrack/geometry.hpp"

namespace sltrack {

/// Vertex and triangle indices. 32-bit to match the 4-byte integer storage model.
using Index = std::int32_t;

/// Neighbor entry for an edge on the mesh boundary.
inline constexpr Index kNoNeighbor = -1;

using TriangleVertices = std::array<Index, 3>;
using TriangleNeighbors = std::array<Index, 3>;

/// Counterclockwise triangulation of a planar domain.
///
/// neighbors[j][k] is the triangle sharing the edge opposite vertex
/// triangles[j][k], or kNoNeighbor on the boundary.
struct Triangulation {
  std::vector<Point> vertices;
  std::vector<TriangleVertices> triangles;
  std::vector<TriangleNeighbors> neighbors;
  double space_scale = 0.0;

  Index num_vertices() const { return static_cast<Index>(vertices.size()); }
  Index num_triangles() const { return static_cast<Index>(triangles.size()); }

  const Point& vertex(Index tri, int k) const { return vertices[triangles[tri][k]]; }
};

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an edge is shared by more than two triangles.
class NonManifoldEdgeError : public MeshError {
 public:
  NonManifoldEdgeError(Index tri, Index a, Index b);
  Index triangle;
  Index v0, v1;
};

/// Neighbor table under the opposite-vertex convention.
/// Throws NonManifoldEdgeError naming the first triangle that adds a third
/// owner to an edge.
std::vector<TriangleNeighbors> compute_neighbors(std::span<const TriangleVertices> triangles,
                                                 Index num_vertices);

/// Assembles a triangulation from raw arrays: rejects out-of-range or repeated
/// vertex indices and zero-area triangles, flips clockwise triangles, and
/// computes neighbors.
Triangulation make_triangulation(std::vector<Point> vertices,
                                 std::vector<TriangleVertices> triangles, double space_scale);

/// Barycentric coordinates of p with respect to triangle tri.
Barycentric<double> barycentric_coords(const Triangulation& mesh, Index tri, const Point& p);

double triangle_area(const Triangulation& mesh, Index tri);

/// Compressed incidence lists: for vertex v, the triangles
/// items[offsets[v] .. offsets[v+1]) in ascending order.
struct Adjacency {
  std::vector<Index> offsets;
  std::vector<Index> items;

  std::span<const Index> operator[](Index v) const {
    return {items.data() + offsets[v], items.data() + offsets[v + 1]};
  }
};

Adjacency vertex_triangles(const Triangulation& mesh);

/// Edge-adjacent vertices of each vertex, ascending.
Adjacency vertex_neighbors(const Triangulation& mesh);

/// Exhaustive scan; the first triangle (ascending index) that accepts p, or
/// kNoNeighbor.
Index scan_locate(const Triangulation& mesh, const Point& p);

/// Bytes for vertex coordinates plus triangle vertex indices, under the fixed
/// 4-byte integer / 8-byte double model. Shared by every locator.
std::size_t mesh_storage_bytes(const Triangulation& mesh);

// ---------------------------------------------------------------------------
// validation

enum class ViolationKind {
  kVertexIndexRange,
  kRepeatedVertex,
  kOrientation,
  kNeighborIndexRange,
  kNeighborSymmetry,
  kOppositeVertex,
  kBoundarySentinel,
  kNonManifoldEdge,
  kSpaceScale,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<Index> indices;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  std::string to_string() const;
};

ValidationReport validate(const Triangulation& mesh);

}  // namespace sltrack
