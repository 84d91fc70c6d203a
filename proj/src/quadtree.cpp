#include "sltrack/quadtree.hpp"

#include <algorithm>
#include <string>

namespace sltrack {

bool intersects(const Rect& r, const Point& a, const Point& b, const Point& c) {
  if (std::max({a.x(), b.x(), c.x()}) < r.xmin || std::min({a.x(), b.x(), c.x()}) > r.xmax ||
      std::max({a.y(), b.y(), c.y()}) < r.ymin || std::min({a.y(), b.y(), c.y()}) > r.ymax)
    return false;
  const Point corners[4] = {{r.xmin, r.ymin}, {r.xmax, r.ymin}, {r.xmax, r.ymax}, {r.xmin, r.ymax}};
  // Orientation-independent: a corner is "inside" an edge when it lies on the
  // same side as the opposite vertex (or on the edge line).
  const Point* tri[3] = {&a, &b, &c};
  for (int k = 0; k < 3; ++k) {
    const Point& p = *tri[k];
    const Point& q = *tri[(k + 1) % 3];
    const Point& o = *tri[(k + 2) % 3];
    const double side = orient(p, q, o);
    bool separated = true;
    for (const auto& corner : corners) {
      const double s = orient(p, q, corner);
      if (side > 0 ? s >= 0.0 : s <= 0.0) {
        separated = false;
        break;
      }
    }
    if (separated) return false;
  }
  return true;
}

struct Quadtree::Builder {
  const Triangulation& mesh;
  Quadtree& tree;
  int depth_cap;

  void split(Index node, std::vector<Index> tris, std::vector<Index> verts) {
    // Copy: nodes_ may reallocate while children are built.
    const Rect rect = tree.nodes_[node].rect;
    const int depth = tree.nodes_[node].depth;
    tree.depth_ = std::max(tree.depth_, depth);

    LeafRule rule = LeafRule::kInternal;
    if (tris.empty())
      rule = LeafRule::kEmpty;
    else if (verts.size() == 1)
      rule = LeafRule::kSingleVertex;
    else if (verts.empty() && static_cast<int>(tris.size()) <= tree.q_)
      rule = LeafRule::kFewTriangles;

    if (rule != LeafRule::kInternal) {
      auto& leaf = tree.nodes_[node];
      leaf.rule = rule;
      leaf.first_triangle = static_cast<Index>(tree.pool_.size());
      leaf.num_triangles = static_cast<Index>(tris.size());
      tree.pool_.insert(tree.pool_.end(), tris.begin(), tris.end());
      return;
    }
    if (depth >= depth_cap)
      throw QuadtreeDepthError("quadtree depth cap " + std::to_string(depth_cap) +
                               " exceeded (duplicate or near-coincident vertices?)");

    const Point c = rect.centre();
    const Rect quads[4] = {{rect.xmin, rect.ymin, c.x(), c.y()},
                           {c.x(), rect.ymin, rect.xmax, c.y()},
                           {rect.xmin, c.y(), c.x(), rect.ymax},
                           {c.x(), c.y(), rect.xmax, rect.ymax}};
    const Index first = static_cast<Index>(tree.nodes_.size());
    tree.nodes_[node].first_child = first;
    for (int k = 0; k < 4; ++k) {
      QuadNode child;
      child.rect = quads[k];
      child.depth = static_cast<std::uint8_t>(depth + 1);
      tree.nodes_.push_back(child);
    }
    for (int k = 0; k < 4; ++k) {
      std::vector<Index> sub_tris;
      std::vector<Index> sub_verts;
      for (Index t : tris)
        if (intersects(quads[k], mesh.vertex(t, 0), mesh.vertex(t, 1), mesh.vertex(t, 2)))
          sub_tris.push_back(t);
      for (Index v : verts)
        if (quads[k].contains(mesh.vertices[v])) sub_verts.push_back(v);
      split(first + k, std::move(sub_tris), std::move(sub_verts));
    }
  }
};

Quadtree Quadtree::build(const Triangulation& mesh, int q, int depth_cap) {
  if (q < 2) throw std::invalid_argument("quadtree: q must be >= 2");
  Quadtree tree;
  tree.q_ = q;
  Rect root{0.0, 0.0, 0.0, 0.0};
  if (!mesh.vertices.empty()) {
    root = {mesh.vertices[0].x(), mesh.vertices[0].y(), mesh.vertices[0].x(), mesh.vertices[0].y()};
    for (const auto& v : mesh.vertices) {
      root.xmin = std::min(root.xmin, v.x());
      root.ymin = std::min(root.ymin, v.y());
      root.xmax = std::max(root.xmax, v.x());
      root.ymax = std::max(root.ymax, v.y());
    }
  }
  QuadNode node;
  node.rect = root;
  tree.nodes_.push_back(node);

  std::vector<Index> tris(mesh.triangles.size());
  for (Index j = 0; j < mesh.num_triangles(); ++j) tris[j] = j;
  std::vector<Index> verts(mesh.vertices.size());
  for (Index i = 0; i < mesh.num_vertices(); ++i) verts[i] = i;
  Builder{mesh, tree, depth_cap}.split(0, std::move(tris), std::move(verts));
  return tree;
}

LocationResult Quadtree::locate(const Triangulation& mesh, const Point& p,
                                LocateStats* stats) const {
  LocationResult result;
  if (!nodes_[0].rect.contains(p)) return result;
  const QuadNode* node = &nodes_[0];
  std::int64_t visits = 1;
  while (!node->leaf()) {
    const Point c = node->rect.centre();
    const int k = (p.x() > c.x() ? 1 : 0) + (p.y() > c.y() ? 2 : 0);
    node = &nodes_[node->first_child + k];
    ++visits;
  }
  std::int64_t tests = 0;
  for (Index t : triangles(*node)) {
    ++tests;
    const auto b = barycentric_coords(mesh, t, p);
    if (b.inside()) {
      result.triangle = t;
      result.coords = b;
      result.status = LocationStatus::kInside;
      break;
    }
  }
  if (stats) {
    stats->node_visits += visits;
    stats->triangle_tests += tests;
  }
  return result;
}

std::size_t Quadtree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const QuadNode& n) { return n.leaf(); }));
}

std::size_t Quadtree::storage_bytes() const {
  return nodes_.size() * (4 * 8 + 4 * 8) + pool_.size() * 4;
}

LocateStats QuadtreeLocator::locate(std::span<const Point> queries, std::span<LocationResult> out) {
  LocateStats stats;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    out[i] = tree_.locate(mesh_, queries[i], &stats);
    stats.record(out[i]);
  }
  return stats;
}

}  // namespace sltrack
