#include "sltrack/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace sltrack {

namespace {

std::uint64_t edge_key(Index a, Index b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

// Edge opposite local vertex k.
std::pair<Index, Index> opposite_edge(const TriangleVertices& t, int k) {
  return {t[(k + 1) % 3], t[(k + 2) % 3]};
}

bool has_vertex(const TriangleVertices& t, Index v) {
  return t[0] == v || t[1] == v || t[2] == v;
}

std::string join(std::span<const Index> ids) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? "," : "") << ids[i];
  return os.str();
}

}  // namespace

NonManifoldEdgeError::NonManifoldEdgeError(Index tri, Index a, Index b)
    : MeshError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                ") is shared by more than two triangles (third owner: triangle " +
                std::to_string(tri) + ")"),
      triangle(tri),
      v0(a),
      v1(b) {}

std::vector<TriangleNeighbors> compute_neighbors(std::span<const TriangleVertices> triangles,
                                                 Index num_vertices) {
  struct Owner {
    Index tri;
    int local;
    bool paired;
  };
  std::vector<TriangleNeighbors> nb(triangles.size(), {kNoNeighbor, kNoNeighbor, kNoNeighbor});
  std::unordered_map<std::uint64_t, Owner> owners;
  owners.reserve(triangles.size() * 2);
  for (Index j = 0; j < static_cast<Index>(triangles.size()); ++j) {
    for (int k = 0; k < 3; ++k) {
      auto [a, b] = opposite_edge(triangles[j], k);
      if (a < 0 || b < 0 || a >= num_vertices || b >= num_vertices)
        throw MeshError("triangle " + std::to_string(j) + " references an invalid vertex");
      auto [it, fresh] = owners.try_emplace(edge_key(a, b), Owner{j, k, false});
      if (fresh) continue;
      Owner& first = it->second;
      if (first.paired) throw NonManifoldEdgeError(j, std::min(a, b), std::max(a, b));
      first.paired = true;
      nb[first.tri][first.local] = j;
      nb[j][k] = first.tri;
    }
  }
  return nb;
}

Triangulation make_triangulation(std::vector<Point> vertices,
                                 std::vector<TriangleVertices> triangles, double space_scale) {
  const auto n = static_cast<Index>(vertices.size());
  for (std::size_t j = 0; j < triangles.size(); ++j) {
    auto& t = triangles[j];
    for (Index v : t)
      if (v < 0 || v >= n)
        throw MeshError("triangle " + std::to_string(j) + ": vertex index " + std::to_string(v) +
                        " out of range [0," + std::to_string(n) + ")");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw MeshError("triangle " + std::to_string(j) + ": repeated vertex index");
    const double o = orient(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
    if (o == 0.0) throw MeshError("triangle " + std::to_string(j) + ": zero area");
    if (o < 0.0) std::swap(t[1], t[2]);
  }
  Triangulation mesh;
  mesh.neighbors = compute_neighbors(triangles, n);
  mesh.vertices = std::move(vertices);
  mesh.triangles = std::move(triangles);
  mesh.space_scale = space_scale;
  return mesh;
}

Barycentric<double> barycentric_coords(const Triangulation& mesh, Index tri, const Point& p) {
  const auto& t = mesh.triangles[tri];
  return barycentric(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]], p);
}

double triangle_area(const Triangulation& mesh, Index tri) {
  const auto& t = mesh.triangles[tri];
  return 0.5 * orient(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
}

Adjacency vertex_triangles(const Triangulation& mesh) {
  Adjacency adj;
  adj.offsets.assign(mesh.vertices.size() + 1, 0);
  for (const auto& t : mesh.triangles)
    for (Index v : t) ++adj.offsets[v + 1];
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) adj.offsets[v + 1] += adj.offsets[v];
  adj.items.resize(adj.offsets.back());
  std::vector<Index> fill(adj.offsets.begin(), adj.offsets.end() - 1);
  for (Index j = 0; j < mesh.num_triangles(); ++j)
    for (Index v : mesh.triangles[j]) adj.items[fill[v]++] = j;
  return adj;
}

Adjacency vertex_neighbors(const Triangulation& mesh) {
  std::vector<std::vector<Index>> lists(mesh.vertices.size());
  for (const auto& t : mesh.triangles)
    for (int k = 0; k < 3; ++k) {
      lists[t[k]].push_back(t[(k + 1) % 3]);
      lists[t[k]].push_back(t[(k + 2) % 3]);
    }
  Adjacency adj;
  adj.offsets.reserve(lists.size() + 1);
  adj.offsets.push_back(0);
  for (auto& l : lists) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    adj.items.insert(adj.items.end(), l.begin(), l.end());
    adj.offsets.push_back(static_cast<Index>(adj.items.size()));
  }
  return adj;
}

Index scan_locate(const Triangulation& mesh, const Point& p) {
  for (Index j = 0; j < mesh.num_triangles(); ++j)
    if (barycentric_coords(mesh, j, p).inside()) return j;
  return kNoNeighbor;
}

std::size_t mesh_storage_bytes(const Triangulation& mesh) {
  return mesh.vertices.size() * 2 * 8 + mesh.triangles.size() * 3 * 4;
}

// ---------------------------------------------------------------------------

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kVertexIndexRange: return "vertex-index-range";
    case ViolationKind::kRepeatedVertex: return "repeated-vertex";
    case ViolationKind::kOrientation: return "orientation";
    case ViolationKind::kNeighborIndexRange: return "neighbor-index-range";
    case ViolationKind::kNeighborSymmetry: return "neighbor-symmetry";
    case ViolationKind::kOppositeVertex: return "opposite-vertex";
    case ViolationKind::kBoundarySentinel: return "boundary-sentinel";
    case ViolationKind::kNonManifoldEdge: return "non-manifold-edge";
    case ViolationKind::kSpaceScale: return "space-scale";
  }
  return "unknown";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : violations)
    os << sltrack::to_string(v.kind) << " [" << join(v.indices) << "]: " << v.message << '\n';
  return os.str();
}

ValidationReport validate(const Triangulation& mesh) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::vector<Index> ids, std::string msg) {
    report.violations.push_back({kind, std::move(ids), std::move(msg)});
  };

  if (!(mesh.space_scale > 0.0) || !std::isfinite(mesh.space_scale))
    add(ViolationKind::kSpaceScale, {}, "space scale must be positive and finite");

  const Index n = mesh.num_vertices();
  const Index nt = mesh.num_triangles();
  std::vector<char> usable(nt, 1);
  for (Index j = 0; j < nt; ++j) {
    const auto& t = mesh.triangles[j];
    bool range_ok = true;
    for (Index v : t)
      if (v < 0 || v >= n) {
        add(ViolationKind::kVertexIndexRange, {j, v}, "vertex index out of range");
        range_ok = false;
      }
    if (!range_ok) {
      usable[j] = 0;
      continue;
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      add(ViolationKind::kRepeatedVertex, {j}, "triangle repeats a vertex");
      usable[j] = 0;
      continue;
    }
    if (!(orient(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]) > 0.0))
      add(ViolationKind::kOrientation, {j}, "triangle is not strictly counterclockwise");
  }

  std::unordered_map<std::uint64_t, std::vector<Index>> edge_owners;
  for (Index j = 0; j < nt; ++j) {
    if (!usable[j]) continue;
    for (int k = 0; k < 3; ++k) {
      auto [a, b] = opposite_edge(mesh.triangles[j], k);
      edge_owners[edge_key(a, b)].push_back(j);
    }
  }
  for (const auto& [key, owners] : edge_owners)
    if (owners.size() > 2)
      add(ViolationKind::kNonManifoldEdge, owners, "edge shared by more than two triangles");

  if (mesh.neighbors.size() != mesh.triangles.size()) {
    add(ViolationKind::kNeighborIndexRange, {},
        "neighbor table has " + std::to_string(mesh.neighbors.size()) + " rows for " +
            std::to_string(nt) + " triangles");
    return report;
  }

  for (Index j = 0; j < nt; ++j) {
    if (!usable[j]) continue;
    for (int k = 0; k < 3; ++k) {
      const Index nb = mesh.neighbors[j][k];
      auto [a, b] = opposite_edge(mesh.triangles[j], k);
      const auto& owners = edge_owners[edge_key(a, b)];
      if (nb == kNoNeighbor) {
        if (owners.size() > 1)
          add(ViolationKind::kBoundarySentinel, {j, k},
              "boundary sentinel on an edge shared with another triangle");
        continue;
      }
      if (nb < 0 || nb >= nt) {
        add(ViolationKind::kNeighborIndexRange, {j, nb}, "neighbor index out of range");
        continue;
      }
      if (!usable[nb] || !has_vertex(mesh.triangles[nb], a) || !has_vertex(mesh.triangles[nb], b) ||
          nb == j) {
        add(ViolationKind::kOppositeVertex, {j, nb},
            "neighbor does not share the edge opposite local vertex " + std::to_string(k));
        continue;
      }
      const auto& back = mesh.neighbors[nb];
      if (back[0] != j && back[1] != j && back[2] != j)
        add(ViolationKind::kNeighborSymmetry, {j, nb},
            "triangle " + std::to_string(j) + " lists " + std::to_string(nb) +
                " as neighbor but not vice versa");
    }
  }
  return report;
}

}  // namespace sltrack
