#include <doctest.h>

#include <sstream>

#include "sltrack/bench.hpp"
#include "sltrack/mesh_gen.hpp"
#include "sltrack/walk.hpp"

using namespace sltrack;

namespace {

BenchConfig random_config(int n_points) {
  BenchConfig c;
  c.mesh.kind = MeshSource::Kind::kRandom;
  c.mesh.n_points = n_points;
  c.mesh.seed = 3;
  return c;
}

// Drops the timing columns so two reports can be compared exactly.
std::string without_timings(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    for (std::size_t i = 0; i < f.size(); ++i)
      if (i < 26 || i > 29) out += f[i] + ",";
    out += "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("config parsing and conflicts") {
  CHECK(parse_locator("walk-c") == LocatorKind::kWalkC);
  CHECK(to_string(LocatorKind::kQuadtree) == "quadtree");
  CHECK_THROWS_AS(parse_locator("kd-tree"), ConfigError);
  CHECK(parse_workload("fixed-distance") == Workload::kFixedDistance);

  auto c = random_config(100);
  c.locators = {LocatorKind::kStructured};
  CHECK_THROWS_AS(c.check(), ConfigError);
  c.locators = {LocatorKind::kWalkC};
  c.courant = -1;
  CHECK_THROWS_AS(c.check(), ConfigError);
  c.courant = 0;
  CHECK_NOTHROW(c.check());

  BenchConfig s;
  s.mesh.kind = MeshSource::Kind::kCourant;
  s.mesh.m = 8;
  s.locators = {LocatorKind::kStructured, LocatorKind::kWalkC};
  CHECK_NOTHROW(s.check());
}

TEST_CASE("bench_locate: one row per locator, deterministic counts") {
  auto c = random_config(1500);
  c.locators = {LocatorKind::kQuadtree, LocatorKind::kWalkA, LocatorKind::kWalkB, LocatorKind::kWalkC};
  c.t_final = 0.2;
  const auto a = bench_locate(c);
  REQUIRE(a.rows.size() == 4);
  for (const auto& r : a.rows) {
    CHECK(r.n == 1504);
    CHECK(r.fallbacks == 0);
    CHECK(r.steps == time_step_count(0.2, r.dt));
    CHECK(r.queries == r.n * r.steps);
  }
  CHECK(a.rows[0].tests_per_query >= 1.0);
  CHECK(a.rows[0].qt_depth > 0);
  CHECK(a.rows[3].locator_bytes - a.rows[2].locator_bytes == 4 * 1504);
  CHECK(without_timings(a.to_csv()) == without_timings(bench_locate(c).to_csv()));
}

TEST_CASE("bench_locate: workloads") {
  auto c = random_config(1000);
  c.locators = {LocatorKind::kWalkA};
  c.workload = Workload::kFixedDistance;
  c.distance = 0.0;
  auto r = bench_locate(c).rows.at(0);
  CHECK(r.steps == 1);
  CHECK(r.mean_changes == 0.0);

  c.workload = Workload::kRandomPoints;
  r = bench_locate(c).rows.at(0);
  CHECK(r.outside == 0);
  CHECK(r.mean_changes > 1.0);

  c.workload = Workload::kCharacteristicFeet;
  c.courant = 0.0;
  r = bench_locate(c).rows.at(0);
  CHECK(r.steps == 1);
  CHECK(r.mean_changes == 0.0);
}

TEST_CASE("bench_locate: structured needs a Courant mesh, walk-c needs a connected one") {
  BenchConfig s;
  s.mesh.kind = MeshSource::Kind::kCourant;
  s.mesh.m = 16;
  s.locators = {LocatorKind::kStructured, LocatorKind::kWalkC};
  s.t_final = 0.25;
  const auto rows = bench_locate(s).rows;
  CHECK(rows.at(0).locator == "structured");
  CHECK(rows.at(0).mean_changes == 0.0);
  CHECK(rows.at(0).locator_bytes == 0);
}

TEST_CASE("bench_storage rows") {
  const auto rep = bench_storage({500, 2000}, 1, 7);
  REQUIRE(rep.rows.size() == 2);
  for (const auto& r : rep.rows) {
    CHECK(r.walk_c_bytes - r.walk_ab_bytes == 4 * r.n);
    CHECK(r.ratio == doctest::Approx(double(r.quadtree_bytes + r.mesh_bytes) /
                                     double(r.walk_c_bytes + r.mesh_bytes)));
    CHECK(r.ratio > 1.5);
  }
  CHECK(rep.rows[0].n == 500);
}

TEST_CASE("bench_storage: bytes per node stay flat across a sweep") {
  const auto rep = bench_storage({1000, 4000, 16000}, 1, 7);
  auto flat = [&](auto bytes) {
    double lo = 1e300, hi = 0;
    for (const auto& r : rep.rows) {
      const double per = static_cast<double>(bytes(r)) / r.n;
      lo = std::min(lo, per);
      hi = std::max(hi, per);
    }
    return hi / lo < 1.25;
  };
  CHECK(flat([](const StorageRow& r) { return r.quadtree_bytes; }));
  CHECK(flat([](const StorageRow& r) { return r.walk_c_bytes; }));
}

TEST_CASE("bench_sl_profile: one row per locator, B has no changes after step one for C1 = 0") {
  auto c = random_config(1000);
  c.locators = {LocatorKind::kWalkA, LocatorKind::kWalkB};
  c.c1 = 0.0;
  const auto rep = bench_sl_profile(c);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[1].changes_after_first == 0);
  CHECK(rep.rows[0].changes_after_first > 0);
  for (const auto& r : rep.rows) {
    CHECK(r.locate_fraction > 0.0);
    CHECK(r.locate_fraction < 1.0);
  }
}

TEST_CASE("merge_csv") {
  CHECK(merge_csv({"a,b\n1,2\n", "a,b\n3,4\n"}) == "a,b\n1,2\n3,4\n");
  CHECK_THROWS_AS(merge_csv({"a,b\n1,2\n", "a,c\n3,4\n"}), ConfigError);
}
