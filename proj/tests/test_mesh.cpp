#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "sltrack/mesh.hpp"
#include "sltrack/mesh_gen.hpp"
#include "sltrack/mesh_io.hpp"
#include "sltrack/random.hpp"
#include "sltrack/spanning_tree.hpp"

using namespace sltrack;

namespace {

const char* kSquareNode = "4 2 0 0\n1 0 0\n2 1 0\n3 1 1\n4 0 1\n";
const char* kSquareEle = "2 3 0\n1 1 2 4\n2 2 3 4\n";

}  // namespace

TEST_CASE("barycentric: hand-solved triangle and special points") {
  const Point a(0, 0), b(2, 0), c(0, 2);
  const auto t = barycentric(a, b, c, Point(0.5, 0.5));
  CHECK(t[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(t[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(t[2] == doctest::Approx(0.25).epsilon(1e-15));

  const auto v = barycentric(a, b, c, a);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == 0.0);
  CHECK(v[2] == 0.0);

  const Point x1(0.3, -0.2), x2(1.7, 0.4), x3(-0.5, 1.1);
  const auto g = barycentric(x1, x2, x3, Point((x1 + x2 + x3) / 3.0));
  for (int k = 0; k < 3; ++k) CHECK(std::abs(g[k] - 1.0 / 3.0) <= 1e-14);
}

TEST_CASE("barycentric: degenerate triangle throws") {
  CHECK_THROWS_AS(barycentric(Point(0, 0), Point(1, 1), Point(2, 2), Point(0.5, 0)),
                  DegenerateTriangleError);
}

TEST_CASE("barycentric: agrees with a linear solve, sums to one, reconstructs, is affine invariant") {
  Rng rng(7);
  Eigen::Matrix2d A;
  A << 1.3, -0.4, 0.7, 2.1;
  const Point shift(0.25, -3.0);
  for (int i = 0; i < 2000; ++i) {
    Point x[3];
    for (auto& p : x) p = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    if (std::abs(orient(x[0], x[1], x[2])) < 0.05) continue;  // keep conditioning sane
    const Point p(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
    const auto th = barycentric(x[0], x[1], x[2], p);
    const auto ref = oracle::solve_barycentric(x[0], x[1], x[2], p);
    const double dx = (x[1] - x[0]).norm();
    for (int k = 0; k < 3; ++k) CHECK(std::abs(th[k] - ref[k]) <= 1e-9);
    CHECK(std::abs(th.sum() - 1.0) <= 1e-12);
    CHECK((th.reconstruct(x[0], x[1], x[2]) - p).norm() <= 1e-12 * std::max(dx, 1.0) * 10);

    const auto moved = barycentric(Point(A * x[0] + shift), Point(A * x[1] + shift),
                                   Point(A * x[2] + shift), Point(A * p + shift));
    for (int k = 0; k < 3; ++k) CHECK(std::abs(moved[k] - th[k]) <= 1e-10);
  }
}

TEST_CASE("load: single triangle has only boundary neighbours") {
  const auto m = load_triangle_format("3 2 0 0\n1 0 0\n2 1 0\n3 0 1\n", "1 3 0\n1 1 2 3\n");
  CHECK(m.num_vertices() == 3);
  CHECK(m.num_triangles() == 1);
  for (auto n : m.neighbors[0]) CHECK(n == kNoNeighbor);
  CHECK(validate(m).ok());
}

TEST_CASE("load: two triangles share the edge opposite vertex 1") {
  const auto m = load_triangle_format(kSquareNode, kSquareEle);
  REQUIRE(m.num_triangles() == 2);
  CHECK(m.neighbors[0] == TriangleNeighbors{1, kNoNeighbor, kNoNeighbor});
  CHECK(m.neighbors[1] == TriangleNeighbors{kNoNeighbor, 0, kNoNeighbor});
  CHECK(m.space_scale == doctest::Approx(0.5));
  CHECK(validate(m).ok());
}

TEST_CASE("load: zero-based files, comments and extra columns") {
  const auto m = load_triangle_format(
      "# header comment\n4 2 1 1\n0 0 0 9.5 1\n1 1 0 9.5 1\n2 1 1 9.5 1\n3 0 1 9.5 1\n",
      "2 3 1\n0 0 1 3 7  # trailing\n1 1 2 3 7\n");
  CHECK(m.triangles[0] == TriangleVertices{0, 1, 3});
  CHECK(validate(m).ok());
}

TEST_CASE("load: clockwise elements are reoriented") {
  const auto m = load_triangle_format(kSquareNode, "2 3 0\n1 1 4 2\n2 2 4 3\n");
  for (Index t = 0; t < 2; ++t) CHECK(triangle_area(m, t) > 0.0);
  CHECK(validate(m).ok());
}

TEST_CASE("load: errors carry the offending line") {
  SUBCASE("vertex out of range") {
    try {
      load_triangle_format(kSquareNode, "2 3 0\n1 1 2 4\n2 2 3 5\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.file == ".ele");
      CHECK(e.line == 3);
    }
  }
  SUBCASE("malformed header") {
    CHECK_THROWS_AS(load_triangle_format("four 2 0 0\n", kSquareEle), ParseError);
  }
  SUBCASE("zero area") {
    try {
      load_triangle_format("3 2 0 0\n1 0 0\n2 1 1\n3 2 2\n", "1 3 0\n1 1 2 3\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 2);
    }
  }
  SUBCASE("non-manifold edge") {
    try {
      load_triangle_format("5 2 0 0\n1 0 0\n2 1 0\n3 0 1\n4 1 1\n5 0 -1\n",
                           "4 3 0\n1 1 2 3\n2 2 4 3\n3 1 5 2\n4 1 2 4\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line >= 2);
    }
  }
}

TEST_CASE("write/load round trip is exact") {
  const auto m = generate_random_delaunay(50, 3);
  const auto r = load_triangle_format(write_node(m), write_ele(m));
  CHECK(r.vertices == m.vertices);
  CHECK(r.triangles == m.triangles);
  CHECK(r.neighbors == m.neighbors);
}

TEST_CASE("courant mesh: sizes, areas, labels") {
  const auto m1 = generate_courant_mesh(1);
  CHECK(m1.num_vertices() == 4);
  CHECK(m1.num_triangles() == 2);
  int interior = 0;
  for (const auto& nb : m1.neighbors)
    for (auto n : nb) interior += n != kNoNeighbor;
  CHECK(interior == 2);  // one edge, seen from both sides

  const auto m2 = generate_courant_mesh(2);
  CHECK(m2.num_vertices() == 9);
  CHECK(m2.num_triangles() == 8);
  const Point p(-0.4, -0.3);
  const auto s = oracle::scan(m2, p);
  REQUIRE(s.unique());
  CHECK(s.strict[0] == 0);  // label 1 counted from one

  const auto m8 = generate_courant_mesh(8);
  for (Index t = 0; t < m8.num_triangles(); ++t)
    CHECK(triangle_area(m8, t) == doctest::Approx(0.5 / 64).epsilon(1e-12));
  CHECK(validate(m8).ok());
  CHECK_THROWS(generate_courant_mesh(0));
}

TEST_CASE("random delaunay: tiny instance matches brute force") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    const auto m = generate_random_delaunay(3, seed);
    CHECK(m.num_vertices() == 7);
    const auto ref = oracle::brute_force_delaunay(m.vertices);
    CHECK(oracle::sorted_triangles(m) == ref);
    CHECK(m.num_triangles() == static_cast<Index>(ref.size()));
  }
}

TEST_CASE("random delaunay: empty circumcircles up to 200 points, valid, deterministic") {
  for (int n : {10, 50, 200}) {
    const auto m = generate_random_delaunay(n, 11 + n);
    CHECK(m.num_vertices() == n + 4);
    CHECK(validate(m).ok());
    CHECK(oracle::max_circumcircle_intrusion(m) <= 1e-12);
    // Euler: a triangulated convex square with 4 hull vertices.
    CHECK(m.num_triangles() == 2 * m.num_vertices() - 2 - 4);
  }
  const auto a = generate_random_delaunay(300, 9);
  const auto b = generate_random_delaunay(300, 9);
  CHECK(a.vertices == b.vertices);
  CHECK(a.triangles == b.triangles);
}

TEST_CASE("validate: reports corrupted neighbours and clockwise triangles") {
  auto m = generate_courant_mesh(4);
  CHECK(validate(m).ok());

  auto bad = m;
  Index t = 5;
  int k = 0;
  while (bad.neighbors[t][k] == kNoNeighbor) ++k;
  const Index other = bad.neighbors[t][k];
  bad.neighbors[t][k] = other == 0 ? 1 : 0;
  const auto rep = validate(bad);
  REQUIRE(rep.has(ViolationKind::kNeighborSymmetry));
  bool names_both = false;
  for (const auto& v : rep.violations)
    if (v.kind == ViolationKind::kNeighborSymmetry &&
        std::find(v.indices.begin(), v.indices.end(), t) != v.indices.end())
      names_both = true;
  CHECK(names_both);

  auto cw = m;
  std::swap(cw.triangles[3][1], cw.triangles[3][2]);
  CHECK(validate(cw).has(ViolationKind::kOrientation));
}

TEST_CASE("spanning tree: courant M=2 rooted at the centre") {
  const auto m = generate_courant_mesh(2);
  const auto tree = build_spanning_tree(m);
  CHECK(m.vertices[tree.root] == Point(0, 0));
  CHECK(tree.order.front() == tree.root);
  const auto ring = vertex_neighbors(m);
  std::vector<int> pos(m.num_vertices());
  for (std::size_t i = 0; i < tree.order.size(); ++i) pos[tree.order[i]] = static_cast<int>(i);
  int roots = 0;
  for (Index i = 0; i < m.num_vertices(); ++i) {
    const Index p = tree.parents[i];
    if (p == i) {
      ++roots;
      continue;
    }
    CHECK(pos[p] < pos[i]);
    const auto nb = ring[i];
    CHECK(std::find(nb.begin(), nb.end(), p) != nb.end());
    const bool near_root = p == tree.root || tree.parents[p] == tree.root;
    CHECK(near_root);
  }
  CHECK(roots == 1);
}

TEST_CASE("spanning tree: single triangle and random meshes") {
  const auto one = load_triangle_format("3 2 0 0\n1 0 0\n2 1 0\n3 0 1\n", "1 3 0\n1 1 2 3\n");
  const auto t1 = build_spanning_tree(one);
  CHECK(t1.parents == std::vector<Index>(3, t1.root));
  CHECK(t1.order.size() == 3);

  const auto m = generate_random_delaunay(500, 4);
  const auto tree = build_spanning_tree(m);
  CHECK(std::count_if(tree.parents.begin(), tree.parents.end(),
                      [&, i = 0](Index p) mutable { return p == i++; }) == 1);
  std::vector<Index> sorted = tree.order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Index> all(m.num_vertices());
  std::iota(all.begin(), all.end(), 0);
  CHECK(sorted == all);
}

TEST_CASE("spanning tree: disconnected mesh names unreached nodes") {
  const auto m = load_triangle_format("6 2 0 0\n1 0 0\n2 1 0\n3 0 1\n4 5 5\n5 6 5\n6 5 6\n",
                                      "2 3 0\n1 1 2 3\n2 4 5 6\n");
  try {
    build_spanning_tree(m);
    FAIL("expected DisconnectedMeshError");
  } catch (const DisconnectedMeshError& e) {
    CHECK(e.unreached.size() == 3);
  }
}

TEST_CASE("initial triangles: incident, single-candidate, deterministic") {
  const auto one = load_triangle_format("3 2 0 0\n1 0 0\n2 1 0\n3 0 1\n", "1 3 0\n1 1 2 3\n");
  CHECK(assign_initial_triangles(one, 5) == std::vector<Index>{0, 0, 0});

  const auto m = generate_random_delaunay(400, 8);
  const auto a = assign_initial_triangles(m, 42);
  CHECK(a == assign_initial_triangles(m, 42));
  for (Index i = 0; i < m.num_vertices(); ++i) {
    const auto& t = m.triangles[a[i]];
    CHECK(std::find(t.begin(), t.end(), i) != t.end());
  }
}
