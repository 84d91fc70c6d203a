#include "sltrack/spanning_tree.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/Geometry>

#include "sltrack/random.hpp"

namespace sltrack {

DisconnectedMeshError::DisconnectedMeshError(std::vector<Index> nodes)
    : MeshError([&] {
        std::string msg = "mesh is disconnected: " + std::to_string(nodes.size()) +
                          " node(s) unreachable from the root (";
        for (std::size_t i = 0; i < nodes.size() && i < 10; ++i)
          msg += (i ? "," : "") + std::to_string(nodes[i]);
        return msg + (nodes.size() > 10 ? ",...)" : ")");
      }()),
      unreached(std::move(nodes)) {}

SpanningTree build_spanning_tree(const Triangulation& mesh) {
  const Index n = mesh.num_vertices();
  if (n == 0) throw MeshError("build_spanning_tree: empty mesh");

  Eigen::AlignedBox2d box;
  for (const auto& v : mesh.vertices) box.extend(v);
  const Point centre = box.center();
  SpanningTree tree;
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i) {
    const double d = (mesh.vertices[i] - centre).squaredNorm();
    if (d < best) {
      best = d;
      tree.root = i;
    }
  }

  const Adjacency adj = vertex_neighbors(mesh);
  tree.parents.assign(n, kNoNeighbor);
  tree.order.reserve(n);
  tree.parents[tree.root] = tree.root;
  tree.order.push_back(tree.root);
  for (std::size_t head = 0; head < tree.order.size(); ++head) {
    const Index u = tree.order[head];
    for (Index w : adj[u])
      if (tree.parents[w] == kNoNeighbor) {
        tree.parents[w] = u;
        tree.order.push_back(w);
      }
  }
  if (static_cast<Index>(tree.order.size()) != n) {
    std::vector<Index> unreached;
    for (Index i = 0; i < n; ++i)
      if (tree.parents[i] == kNoNeighbor) unreached.push_back(i);
    throw DisconnectedMeshError(std::move(unreached));
  }
  return tree;
}

std::vector<Index> assign_initial_triangles(const Triangulation& mesh, std::uint64_t seed) {
  const Adjacency incident = vertex_triangles(mesh);
  Rng rng(seed);
  std::vector<Index> start(mesh.vertices.size());
  for (Index i = 0; i < mesh.num_vertices(); ++i) {
    const auto tris = incident[i];
    if (tris.empty()) throw MeshError("vertex " + std::to_string(i) + " has no incident triangle");
    start[i] = tris[rng.below(tris.size())];
  }
  return start;
}

WalkContext make_walk_context(const Triangulation& mesh, std::uint64_t seed,
                              bool with_spanning_tree) {
  WalkContext ctx;
  ctx.initial_triangles = assign_initial_triangles(mesh, seed);
  if (with_spanning_tree) {
    auto tree = build_spanning_tree(mesh);
    ctx.parents = std::move(tree.parents);
    ctx.traversal_order = std::move(tree.order);
  }
  return ctx;
}

}  // namespace sltrack
