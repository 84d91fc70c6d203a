#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "sltrack/location.hpp"
#include "sltrack/mesh.hpp"

namespace sltrack {

/// Closed axis-aligned rectangle.
struct Rect {
  double xmin, ymin, xmax, ymax;

  bool contains(const Point& p) const {
    return p.x() >= xmin && p.x() <= xmax && p.y() >= ymin && p.y() <= ymax;
  }
  Point centre() const { return {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}; }
};

/// Closed-set triangle/rectangle intersection by separating axes: the two
/// rectangle axes and the three edge normals. Touching counts as intersecting.
bool intersects(const Rect& r, const Point& a, const Point& b, const Point& c);

enum class LeafRule : std::uint8_t {
  kInternal,
  kFewTriangles,  // 1 <= n_t <= q triangles and no vertex
  kSingleVertex,  // exactly one vertex, any number of triangles
  kEmpty,         // no triangle
};

struct QuadNode {
  Rect rect;
  Index first_child = kNoNeighbor;  // children are stored contiguously: SW, SE, NW, NE
  Index first_triangle = 0;         // leaves: slice of the shared triangle-index pool
  Index num_triangles = 0;
  LeafRule rule = LeafRule::kInternal;
  std::uint8_t depth = 0;

  bool leaf() const { return first_child == kNoNeighbor; }
};

class QuadtreeDepthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultQuadtreeQ = 7;
inline constexpr int kDefaultQuadtreeDepthCap = 64;

/// Rectangle-subdivision index over a triangulation. A quad stops splitting
/// once it intersects between 1 and q triangles and holds no vertex, holds
/// exactly one vertex, or intersects no triangle. Leaf triangle lists are in
/// ascending index order. Vertex lists exist only during construction.
class Quadtree {
 public:
  static Quadtree build(const Triangulation& mesh, int q = kDefaultQuadtreeQ,
                        int depth_cap = kDefaultQuadtreeDepthCap);

  /// Descends to the leaf holding p (SW, SE, NW, NE priority on shared sides)
  /// and tests its triangles in order.
  LocationResult locate(const Triangulation& mesh, const Point& p,
                        LocateStats* stats = nullptr) const;

  int q() const { return q_; }
  int depth() const { return depth_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t leaf_count() const;
  std::size_t leaf_index_count() const { return pool_.size(); }

  /// 4 doubles + 4 pointers per node, plus one 4-byte index per stored leaf
  /// triangle, independent of the host's actual sizes.
  std::size_t storage_bytes() const;

  std::span<const QuadNode> nodes() const { return nodes_; }
  std::span<const Index> triangles(const QuadNode& leaf) const {
    return {pool_.data() + leaf.first_triangle, static_cast<std::size_t>(leaf.num_triangles)};
  }

 private:
  struct Builder;

  std::vector<QuadNode> nodes_;
  std::vector<Index> pool_;
  int q_ = kDefaultQuadtreeQ;
  int depth_ = 0;
};

inline Quadtree build_quadtree(const Triangulation& mesh, int q = kDefaultQuadtreeQ) {
  return Quadtree::build(mesh, q);
}
inline LocationResult qt_locate(const Quadtree& tree, const Point& p, const Triangulation& mesh) {
  return tree.locate(mesh, p);
}
inline int qt_depth(const Quadtree& tree) { return tree.depth(); }
inline std::size_t qt_storage_bytes(const Quadtree& tree) { return tree.storage_bytes(); }

class QuadtreeLocator final : public PointLocator {
 public:
  QuadtreeLocator(const Triangulation& mesh, int q = kDefaultQuadtreeQ)
      : mesh_(mesh), tree_(Quadtree::build(mesh, q)) {}

  std::string name() const override { return "quadtree"; }
  LocateStats locate(std::span<const Point> queries, std::span<LocationResult> out) override;
  std::size_t storage_bytes() const override { return tree_.storage_bytes(); }

  const Quadtree& tree() const { return tree_; }

 private:
  const Triangulation& mesh_;
  Quadtree tree_;
};

}  // namespace sltrack
