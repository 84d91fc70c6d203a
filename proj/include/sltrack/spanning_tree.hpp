#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sltrack/mesh.hpp"

namespace sltrack {

/// Breadth-first parent forest over mesh vertices. The root is its own parent
/// and every parent precedes its child in order.
struct SpanningTree {
  Index root = 0;
  std::vector<Index> parents;
  std::vector<Index> order;
};

/// Mutable per-node state of the barycentric-walk locator: the start triangle
/// for every node, plus the spanning tree needed by strategy C.
struct WalkContext {
  std::vector<Index> initial_triangles;
  std::vector<Index> parents;
  std::vector<Index> traversal_order;

  bool has_spanning_tree() const { return !parents.empty(); }
};

class DisconnectedMeshError : public MeshError {
 public:
  explicit DisconnectedMeshError(std::vector<Index> unreached);
  std::vector<Index> unreached;
};

/// BFS over the vertex-adjacency graph from the vertex closest to the centre
/// of the mesh bounding box (ties to the lowest index). Neighbors are visited
/// in ascending index order.
SpanningTree build_spanning_tree(const Triangulation& mesh);

/// One uniformly random incident triangle per vertex. Throws MeshError for a
/// vertex with no incident triangle.
std::vector<Index> assign_initial_triangles(const Triangulation& mesh, std::uint64_t seed);

WalkContext make_walk_context(const Triangulation& mesh, std::uint64_t seed,
                              bool with_spanning_tree);

}  // namespace sltrack
