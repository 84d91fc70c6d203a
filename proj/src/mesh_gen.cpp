#include "sltrack/mesh_gen.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "sltrack/random.hpp"

namespace sltrack {

Triangulation generate_courant_mesh(int M) {
  if (M < 1) throw std::invalid_argument("generate_courant_mesh: M must be >= 1");
  const int side = M + 1;
  std::vector<Point> vertices;
  vertices.reserve(static_cast<std::size_t>(side) * side);
  for (int m = 0; m < side; ++m)
    for (int l = 0; l < side; ++l)
      vertices.emplace_back(static_cast<double>(l) / M - 0.5, static_cast<double>(m) / M - 0.5);

  std::vector<TriangleVertices> triangles;
  triangles.reserve(2 * static_cast<std::size_t>(M) * M);
  for (int m = 0; m < M; ++m)
    for (int l = 0; l < M; ++l) {
      const Index sw = m * side + l;
      const Index se = sw + 1;
      const Index nw = sw + side;
      const Index ne = nw + 1;
      triangles.push_back({sw, ne, nw});
      triangles.push_back({sw, se, ne});
    }
  return make_triangulation(std::move(vertices), std::move(triangles), 1.0 / M);
}

namespace {

// Incremental Delaunay builder over a square hull. Every triangle is stored
// counterclockwise with neighbors under the opposite-vertex convention.
class DelaunayBuilder {
 public:
  explicit DelaunayBuilder(std::vector<Point> corners) : vertices_(std::move(corners)) {
    tv_.push_back({0, 1, 2});
    tv_.push_back({0, 2, 3});
    tn_.push_back({kNoNeighbor, 1, kNoNeighbor});
    tn_.push_back({kNoNeighbor, kNoNeighbor, 0});
  }

  void insert(const Point& p) {
    auto [t, on_edge, duplicate] = locate(p);
    if (duplicate) return;
    const Index pv = static_cast<Index>(vertices_.size());
    vertices_.push_back(p);
    if (on_edge < 0)
      split_triangle(t, pv);
    else
      split_edge(t, on_edge, pv);
    while (!stack_.empty()) {
      const Index tri = stack_.back();
      stack_.pop_back();
      legalize(tri, pv);
    }
  }

  Triangulation finish(double space_scale) && {
    Triangulation mesh;
    mesh.vertices = std::move(vertices_);
    mesh.triangles = std::move(tv_);
    mesh.neighbors = std::move(tn_);
    mesh.space_scale = space_scale;
    return mesh;
  }

 private:
  struct Located {
    Index tri;
    int on_edge;  // local index of the vertex opposite the edge holding p, or -1
    bool duplicate;
  };

  const Point& v(Index tri, int k) const { return vertices_[tv_[tri][k]]; }

  Located locate(const Point& p) {
    Index t = last_;
    for (;;) {
      int zero = -1;
      int zeros = 0;
      int move = -1;
      for (int k = 0; k < 3; ++k) {
        const double o = orient(v(t, (k + 1) % 3), v(t, (k + 2) % 3), p);
        if (o < 0.0 && tn_[t][k] != kNoNeighbor) {
          move = k;
          break;
        }
        if (o == 0.0) {
          zero = k;
          ++zeros;
        }
      }
      if (move >= 0) {
        t = tn_[t][move];
        continue;
      }
      last_ = t;
      if (zeros >= 2) return {t, -1, true};
      return {t, zero, false};
    }
  }

  void relink(Index tri, Index from, Index to) {
    if (tri == kNoNeighbor) return;
    for (auto& n : tn_[tri])
      if (n == from) {
        n = to;
        return;
      }
  }

  Index add(TriangleVertices t, TriangleNeighbors n) {
    tv_.push_back(t);
    tn_.push_back(n);
    return static_cast<Index>(tv_.size() - 1);
  }

  void split_triangle(Index t, Index p) {
    const auto [a, b, c] = tv_[t];
    const auto [na, nb, nc] = tn_[t];
    const Index t1 = static_cast<Index>(tv_.size());
    const Index t2 = t1 + 1;
    tv_[t] = {p, b, c};
    tn_[t] = {na, t1, t2};
    add({p, c, a}, {nb, t2, t});
    add({p, a, b}, {nc, t, t1});
    relink(nb, t, t1);
    relink(nc, t, t2);
    stack_.insert(stack_.end(), {t, t1, t2});
    last_ = t;
  }

  void split_edge(Index t, int k, Index p) {
    const Index a = tv_[t][k];
    const Index b = tv_[t][(k + 1) % 3];
    const Index c = tv_[t][(k + 2) % 3];
    const Index n = tn_[t][k];
    const Index opp_b = tn_[t][(k + 1) % 3];
    const Index opp_c = tn_[t][(k + 2) % 3];

    const Index t1 = static_cast<Index>(tv_.size());
    if (n == kNoNeighbor) {
      tv_[t] = {p, a, b};
      tn_[t] = {opp_c, kNoNeighbor, t1};
      add({p, c, a}, {opp_b, t, kNoNeighbor});
      relink(opp_b, t, t1);
      stack_.insert(stack_.end(), {t, t1});
      last_ = t;
      return;
    }
    int m = 0;
    while (tn_[n][m] != t) ++m;
    const Index d = tv_[n][m];
    const Index n_opp_c = tn_[n][(m + 1) % 3];  // n = (d, c, b): opposite c is edge (b, d)
    const Index n_opp_b = tn_[n][(m + 2) % 3];  // opposite b is edge (d, c)

    const Index n1 = t1 + 1;
    tv_[t] = {p, a, b};
    tn_[t] = {opp_c, n1, t1};
    add({p, c, a}, {opp_b, t, n});
    tv_[n] = {p, d, c};
    tn_[n] = {n_opp_b, t1, n1};
    add({p, b, d}, {n_opp_c, n, t});
    relink(opp_b, t, t1);
    relink(n_opp_c, n, n1);
    stack_.insert(stack_.end(), {t, t1, n, n1});
    last_ = t;
  }

  // tri has p as a vertex; flip the edge opposite p if the triangle across it
  // has its apex strictly inside tri's circumcircle.
  void legalize(Index tri, Index p) {
    int k = 0;
    while (tv_[tri][k] != p) ++k;
    const Index n = tn_[tri][k];
    if (n == kNoNeighbor) return;
    int m = 0;
    while (tn_[n][m] != tri) ++m;
    const Index u = tv_[tri][(k + 1) % 3];
    const Index w = tv_[tri][(k + 2) % 3];
    const Index d = tv_[n][m];
    if (incircle(vertices_[p], vertices_[u], vertices_[w], vertices_[d]) <= 0.0) return;

    const Index a1 = tn_[tri][(k + 1) % 3];  // edge (w, p)
    const Index a2 = tn_[tri][(k + 2) % 3];  // edge (p, u)
    // n is (d, w, u) starting at position m.
    const Index b1 = tn_[n][(m + 2) % 3];  // edge (d, w)
    const Index b2 = tn_[n][(m + 1) % 3];  // edge (u, d)
    tv_[tri] = {p, u, d};
    tn_[tri] = {b2, n, a2};
    tv_[n] = {p, d, w};
    tn_[n] = {b1, a1, tri};
    relink(b2, n, tri);
    relink(a1, tri, n);
    stack_.push_back(tri);
    stack_.push_back(n);
  }

  std::vector<Point> vertices_;
  std::vector<TriangleVertices> tv_;
  std::vector<TriangleNeighbors> tn_;
  std::vector<Index> stack_;
  Index last_ = 0;
};

}  // namespace

Triangulation generate_random_delaunay(int n_points, std::uint64_t seed) {
  if (n_points < 3) throw std::invalid_argument("generate_random_delaunay: n_points must be >= 3");
  DelaunayBuilder builder({Point(-0.5, -0.5), Point(0.5, -0.5), Point(0.5, 0.5), Point(-0.5, 0.5)});
  Rng rng(seed);
  for (int i = 0; i < n_points; ++i) {
    const double x = rng.uniform(-0.5, 0.5);
    const double y = rng.uniform(-0.5, 0.5);
    builder.insert(Point(x, y));
  }
  auto mesh = std::move(builder).finish(0.0);
  mesh.space_scale = 1.0 / std::sqrt(static_cast<double>(mesh.vertices.size()));
  return mesh;
}

}  // namespace sltrack
