#include <doctest.h>

#include "oracles.hpp"
#include "sltrack/mesh_gen.hpp"
#include "sltrack/mesh_io.hpp"
#include "sltrack/random.hpp"
#include "sltrack/sl.hpp"
#include "sltrack/walk.hpp"

using namespace sltrack;

namespace {

const char* kSquareNode = "4 2 0 0\n1 0 0\n2 1 0\n3 1 1\n4 0 1\n";
const char* kSquareEle = "2 3 0\n1 1 2 4\n2 2 3 4\n";

std::vector<Point> random_points(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> out(n);
  for (auto& p : out) p = {rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
  return out;
}

}  // namespace

TEST_CASE("walk_from: trivial, one-step and outside cases") {
  const auto m = load_triangle_format(kSquareNode, kSquareEle);
  const Point c0 = (m.vertex(0, 0) + m.vertex(0, 1) + m.vertex(0, 2)) / 3.0;
  const Point c1 = (m.vertex(1, 0) + m.vertex(1, 1) + m.vertex(1, 2)) / 3.0;

  auto r = walk_from(m, 0, c0);
  CHECK(r.inside());
  CHECK(r.steps == 0);
  CHECK(r.triangle == 0);

  r = walk_from(m, 0, c1);
  CHECK(r.inside());
  CHECK(r.steps == 1);
  CHECK(r.triangle == 1);
  CHECK((r.coords.reconstruct(m.vertex(1, 0), m.vertex(1, 1), m.vertex(1, 2)) - c1).norm() <= 1e-12);

  r = walk_from(m, 0, Point(-0.5, 0.3));
  CHECK_FALSE(r.inside());
  CHECK_FALSE(r.fallback);
}

TEST_CASE("walk_from: any start reaches the scan's unique container") {
  const auto m = generate_random_delaunay(3000, 5);
  Rng rng(17);
  const auto pts = random_points(3000, 23);
  for (const auto& p : pts) {
    const Index start = static_cast<Index>(rng.below(m.num_triangles()));
    const auto r = walk_from(m, start, p);
    REQUIRE(r.inside());
    CHECK_FALSE(r.fallback);
    CHECK(r.coords.min() >= -1e-12);
    const auto s = oracle::scan(m, p);
    if (s.unique()) CHECK(r.triangle == s.strict[0]);
    const Point rec = r.coords.reconstruct(m.vertex(r.triangle, 0), m.vertex(r.triangle, 1),
                                           m.vertex(r.triangle, 2));
    CHECK((rec - p).norm() <= 1e-12 * m.space_scale);
  }
}

TEST_CASE("walk_from: a cycling walk on a non-Delaunay mesh falls back to the scan") {
  const auto m = load_triangle_files(SLTRACK_TEST_DATA "/cycling");
  REQUIRE(validate(m).ok());
  const Point p(0.14688656735630412, -0.091847265659544708);
  const auto r = walk_from(m, 0, p);
  CHECK(r.fallback);
  REQUIRE(r.inside());
  const auto s = oracle::scan(m, p);
  REQUIRE(s.unique());
  CHECK(r.triangle == s.strict[0]);
  CHECK(r.steps == 4 * m.num_triangles());

  WalkOptions tight;
  tight.max_steps = 3;
  const auto t = walk_from(m, 0, p, tight);
  CHECK(t.fallback);
  CHECK(t.triangle == s.strict[0]);
}

TEST_CASE("batch: strategy B is a fixed point for repeated query sets") {
  const auto m = generate_random_delaunay(2000, 6);
  auto ctx = make_walk_context(m, 3, false);
  const auto q = random_points(static_cast<std::size_t>(m.num_vertices()), 4);
  std::vector<LocationResult> out(q.size());
  const auto first = point_location_bw(m, ctx, q, WalkStrategy::kB, out);
  CHECK(first.total_steps > 0);
  const auto second = point_location_bw(m, ctx, q, WalkStrategy::kB, out);
  CHECK(second.total_steps == 0);
  CHECK(second.inside == first.inside);
}

TEST_CASE("batch: strategy A never moves its start triangles") {
  const auto m = generate_random_delaunay(500, 6);
  auto ctx = make_walk_context(m, 3, false);
  const auto before = ctx.initial_triangles;
  std::vector<LocationResult> out(m.vertices.size());
  point_location_bw(m, ctx, random_points(out.size(), 1), WalkStrategy::kA, out);
  CHECK(ctx.initial_triangles == before);
}

TEST_CASE("batch: node positions as queries reach an incident triangle") {
  const auto m = generate_random_delaunay(4000, 8);
  for (auto s : {WalkStrategy::kA, WalkStrategy::kB, WalkStrategy::kC}) {
    auto ctx = make_walk_context(m, 1, s == WalkStrategy::kC);
    std::vector<LocationResult> out(m.vertices.size());
    const auto stats = point_location_bw(m, ctx, m.vertices, s, out);
    CHECK(stats.inside == m.num_vertices());
    for (Index i = 0; i < m.num_vertices(); ++i) {
      const auto& t = m.triangles[out[i].triangle];
      CHECK(std::find(t.begin(), t.end(), i) != t.end());
    }
    if (s == WalkStrategy::kA) CHECK(stats.total_steps == 0);
  }
}

TEST_CASE("batch: strategy C starts from the parent's final triangle") {
  const auto m = generate_random_delaunay(800, 2);
  auto ctx = make_walk_context(m, 5, true);
  const auto q = euler_feet(m, VectorField::rotating(6.283185307179586, 6.283185307179586), 0,
                            3 * m.space_scale);
  std::vector<LocationResult> out(q.size());
  point_location_bw(m, ctx, q, WalkStrategy::kC, out);
  for (Index i = 0; i < m.num_vertices(); ++i)
    if (out[i].inside()) CHECK(ctx.initial_triangles[i] == out[i].triangle);
  // Replaying each node from its parent's answer reproduces the step counts.
  for (Index i : ctx.traversal_order) {
    if (!out[i].inside()) continue;
    const Index parent = ctx.parents[i];
    if (parent == i || !out[parent].inside()) continue;
    const auto r = walk_from(m, out[parent].triangle, q[i]);
    CHECK(r.triangle == out[i].triangle);
    CHECK(r.steps == out[i].steps);
  }

  auto no_tree = make_walk_context(m, 5, false);
  CHECK_THROWS_AS(point_location_bw(m, no_tree, q, WalkStrategy::kC, out), MissingSpanningTreeError);
}

TEST_CASE("batch: outside queries keep the previous start triangle") {
  const auto m = generate_courant_mesh(6);
  auto ctx = make_walk_context(m, 9, true);
  std::vector<Point> q(m.vertices.size(), Point(5, 5));
  const auto before = ctx.initial_triangles;
  std::vector<LocationResult> out(q.size());
  for (auto s : {WalkStrategy::kB, WalkStrategy::kC}) {
    const auto stats = point_location_bw(m, ctx, q, s, out);
    CHECK(stats.outside == m.num_vertices());
    CHECK(stats.mean_steps() == 0.0);
    CHECK(ctx.initial_triangles == before);
  }
}

TEST_CASE("batch: threaded A and B match the serial sweep") {
  const auto m = generate_random_delaunay(6000, 12);
  const auto q = random_points(m.vertices.size(), 77);
  for (auto s : {WalkStrategy::kA, WalkStrategy::kB}) {
    auto serial_ctx = make_walk_context(m, 3, false);
    auto threaded_ctx = serial_ctx;
    std::vector<LocationResult> a(q.size()), b(q.size());
    BatchOptions opts;
    opts.threads = 4;
    for (int rep = 0; rep < 2; ++rep) {
      const auto sa = point_location_bw(m, serial_ctx, q, s, a);
      const auto sb = point_location_bw(m, threaded_ctx, q, s, b, opts);
      CHECK(sa.total_steps == sb.total_steps);
      CHECK(sa.max_steps == sb.max_steps);
      for (std::size_t i = 0; i < q.size(); ++i) CHECK(a[i].triangle == b[i].triangle);
    }
    CHECK(serial_ctx.initial_triangles == threaded_ctx.initial_triangles);
  }
}

TEST_CASE("storage accounting") {
  const auto one = load_triangle_format("3 2 0 0\n1 0 0\n2 1 0\n3 0 1\n", "1 3 0\n1 1 2 3\n");
  CHECK(walk_storage_bytes(one, WalkStrategy::kA) == 24);
  const auto m = generate_random_delaunay(1000, 1);
  const auto n = static_cast<std::size_t>(m.num_vertices());
  CHECK(walk_storage_bytes(m, WalkStrategy::kC) - walk_storage_bytes(m, WalkStrategy::kB) == 4 * n);
  CHECK(walk_storage_bytes(m, WalkStrategy::kA) == walk_storage_bytes(m, WalkStrategy::kB));
  CHECK(walk_storage_bytes(m, WalkStrategy::kB) == 12 * static_cast<std::size_t>(m.num_triangles()) + 4 * n);
}
