#include "sltrack/bench.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sltrack/mesh_gen.hpp"
#include "sltrack/mesh_io.hpp"
#include "sltrack/quadtree.hpp"
#include "sltrack/random.hpp"
#include "sltrack/spanning_tree.hpp"
#include "sltrack/walk.hpp"

namespace sltrack {

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

template <typename Int>
std::string num_int(Int v) {
  return std::to_string(v);
}

std::string join_fields(std::initializer_list<std::string> fields) {
  std::string out;
  bool first = true;
  for (const auto& f : fields) {
    if (!first) out += ',';
    out += f;
    first = false;
  }
  return out;
}

std::uint64_t workload_seed(std::uint64_t seed, int step) {
  return seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(step) + 1;
}

}  // namespace

std::string MeshSource::describe() const {
  switch (kind) {
    case Kind::kFile: return "file(" + path.string() + ")";
    case Kind::kCourant: return "courant(m=" + std::to_string(m) + ")";
    case Kind::kRandom:
      return "random(n=" + std::to_string(n_points) + ";seed=" + std::to_string(seed) + ")";
  }
  return "?";
}

std::string to_string(LocatorKind kind) {
  switch (kind) {
    case LocatorKind::kQuadtree: return "quadtree";
    case LocatorKind::kWalkA: return "walk-a";
    case LocatorKind::kWalkB: return "walk-b";
    case LocatorKind::kWalkC: return "walk-c";
    case LocatorKind::kStructured: return "structured";
  }
  return "?";
}

LocatorKind parse_locator(const std::string& name) {
  for (auto k : {LocatorKind::kQuadtree, LocatorKind::kWalkA, LocatorKind::kWalkB,
                 LocatorKind::kWalkC, LocatorKind::kStructured})
    if (to_string(k) == name) return k;
  throw ConfigError("unknown locator '" + name + "'");
}

std::string to_string(Workload w) {
  switch (w) {
    case Workload::kCharacteristicFeet: return "characteristic-feet";
    case Workload::kRandomPoints: return "random-points";
    case Workload::kFixedDistance: return "fixed-distance";
  }
  return "?";
}

Workload parse_workload(const std::string& name) {
  for (auto w : {Workload::kCharacteristicFeet, Workload::kRandomPoints, Workload::kFixedDistance})
    if (to_string(w) == name) return w;
  throw ConfigError("unknown workload '" + name + "'");
}

void BenchConfig::check() const {
  if (locators.empty()) throw ConfigError("no locator requested");
  if (reps < 1) throw ConfigError("--reps must be >= 1");
  if (!(courant >= 0.0)) throw ConfigError("--courant must be >= 0");
  if (!(t_final > 0.0)) throw ConfigError("--t-final must be positive");
  if (!(distance >= 0.0)) throw ConfigError("--distance must be >= 0");
  if (q < 2) throw ConfigError("--q must be >= 2");
  if (threads < 1) throw ConfigError("thread count must be >= 1");
  switch (mesh.kind) {
    case MeshSource::Kind::kCourant:
      if (mesh.m < 1) throw ConfigError("--m must be >= 1");
      break;
    case MeshSource::Kind::kRandom:
      if (mesh.n_points < 3) throw ConfigError("--n-points must be >= 3");
      break;
    case MeshSource::Kind::kFile:
      if (mesh.path.empty()) throw ConfigError("--mesh requires a path");
      break;
  }
  for (auto k : locators)
    if (k == LocatorKind::kStructured && mesh.kind != MeshSource::Kind::kCourant)
      throw ConfigError("the structured locator requires a Courant mesh (--m)");
}

// ---------------------------------------------------------------------------

std::string LocateRow::csv_header() {
  return "mesh,N,N_t,locator,workload,alpha,C0,C1,dt,distance,steps,reps,queries,outside,"
         "mean_changes,max_changes,mean_changes_after_first,changes_after_first,fallbacks,"
         "tests_per_query,visits_per_query,qt_depth,qt_nodes,qt_leaf_indices,locator_bytes,"
         "mesh_bytes,query_s,locate_s,interp_s,locate_fraction,threads,seed";
}

std::string LocateRow::csv_line() const {
  return join_fields({mesh, num_int(n), num_int(n_t), locator, workload, num(alpha), num(c0),
                      num(c1), num(dt), num(distance), num_int(steps), num_int(reps),
                      num_int(queries), num_int(outside), num(mean_changes),
                      num_int(max_changes), num(mean_changes_after_first),
                      num_int(changes_after_first), num_int(fallbacks), num(tests_per_query),
                      num(visits_per_query), num_int(qt_depth), num_int(qt_nodes),
                      num_int(qt_leaf_indices), num_int(locator_bytes), num_int(mesh_bytes),
                      num(query_seconds), num(locate_seconds), num(interp_seconds),
                      num(locate_fraction), num_int(threads), num_int(seed)});
}

std::string StorageRow::csv_header() {
  return "mesh,N,N_t,mesh_bytes,quadtree_bytes,qt_nodes,qt_leaf_indices,qt_depth,walk_ab_bytes,"
         "walk_c_bytes,ratio,ratio_locator_only";
}

std::string StorageRow::csv_line() const {
  return join_fields({mesh, num_int(n), num_int(n_t), num_int(mesh_bytes),
                      num_int(quadtree_bytes), num_int(qt_nodes), num_int(qt_leaf_indices),
                      num_int(qt_depth), num_int(walk_ab_bytes), num_int(walk_c_bytes),
                      num(ratio), num(ratio_locator_only)});
}

// ---------------------------------------------------------------------------

Triangulation make_mesh(const MeshSource& source) {
  switch (source.kind) {
    case MeshSource::Kind::kFile: return load_triangle_files(source.path);
    case MeshSource::Kind::kCourant: return generate_courant_mesh(source.m);
    case MeshSource::Kind::kRandom: return generate_random_delaunay(source.n_points, source.seed);
  }
  throw ConfigError("unknown mesh source");
}

std::unique_ptr<PointLocator> make_locator(LocatorKind kind, const Triangulation& mesh,
                                           const BenchConfig& config, const StructuredGrid* grid) {
  BatchOptions batch;
  batch.threads = config.threads;
  switch (kind) {
    case LocatorKind::kQuadtree: return std::make_unique<QuadtreeLocator>(mesh, config.q);
    case LocatorKind::kWalkA:
      return std::make_unique<WalkLocator>(mesh, make_walk_context(mesh, config.seed, false),
                                           WalkStrategy::kA, batch);
    case LocatorKind::kWalkB:
      return std::make_unique<WalkLocator>(mesh, make_walk_context(mesh, config.seed, false),
                                           WalkStrategy::kB, batch);
    case LocatorKind::kWalkC:
      return std::make_unique<WalkLocator>(mesh, make_walk_context(mesh, config.seed, true),
                                           WalkStrategy::kC, batch);
    case LocatorKind::kStructured:
      if (!grid) throw ConfigError("the structured locator requires a Courant mesh (--m)");
      return std::make_unique<StructuredLocator>(*grid);
  }
  throw ConfigError("unknown locator");
}

std::vector<Point> make_workload(const Triangulation& mesh, const BenchConfig& config, int step,
                                 double dt) {
  switch (config.workload) {
    case Workload::kCharacteristicFeet:
      return euler_feet(mesh, VectorField::rotating(config.c0, config.c1), step, dt,
                        config.time_level);
    case Workload::kRandomPoints: {
      Eigen::Vector2d lo = mesh.vertices.front();
      Eigen::Vector2d hi = lo;
      for (const auto& v : mesh.vertices) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
      }
      Rng rng(workload_seed(config.seed, step));
      std::vector<Point> pts(mesh.vertices.size());
      for (auto& p : pts) {
        const double x = rng.uniform(lo.x(), hi.x());
        const double y = rng.uniform(lo.y(), hi.y());
        p = Point(x, y);
      }
      return pts;
    }
    case Workload::kFixedDistance: {
      Rng rng(workload_seed(config.seed, step));
      std::vector<Point> pts(mesh.vertices.size());
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const double angle = 2.0 * std::numbers::pi * rng.uniform();
        pts[i] = mesh.vertices[i] + config.distance * Point(std::cos(angle), std::sin(angle));
      }
      return pts;
    }
  }
  return {};
}

namespace {

struct RunPlan {
  double dt = 0.0;
  int steps = 1;
};

RunPlan plan(const Triangulation& mesh, const BenchConfig& config) {
  RunPlan p;
  if (config.workload != Workload::kCharacteristicFeet) return p;
  p.dt = config.courant * mesh.space_scale;
  // A zero Courant number still runs one step: every foot is its own node.
  p.steps = p.dt > 0.0 ? time_step_count(config.t_final, p.dt) : 1;
  return p;
}

LocateRow base_row(const Triangulation& mesh, const BenchConfig& config, LocatorKind kind,
                   const PointLocator& locator) {
  LocateRow row;
  row.mesh = config.mesh.describe();
  row.n = mesh.num_vertices();
  row.n_t = mesh.num_triangles();
  row.locator = to_string(kind);
  row.alpha = config.courant;
  row.c0 = config.c0;
  row.c1 = config.c1;
  row.reps = config.reps;
  row.locator_bytes = static_cast<std::int64_t>(locator.storage_bytes());
  row.mesh_bytes = static_cast<std::int64_t>(mesh_storage_bytes(mesh));
  row.threads = (kind == LocatorKind::kWalkA || kind == LocatorKind::kWalkB) ? config.threads : 1;
  row.seed = config.seed;
  if (const auto* qt = dynamic_cast<const QuadtreeLocator*>(&locator)) {
    row.qt_depth = qt->tree().depth();
    row.qt_nodes = static_cast<std::int64_t>(qt->tree().node_count());
    row.qt_leaf_indices = static_cast<std::int64_t>(qt->tree().leaf_index_count());
  }
  return row;
}

void fill_counts(LocateRow& row, const LocateStats& all, const LocateStats& after_first) {
  row.queries = all.queries;
  row.outside = all.outside;
  row.mean_changes = all.mean_steps();
  row.max_changes = all.max_steps;
  row.mean_changes_after_first = after_first.mean_steps();
  row.changes_after_first = after_first.total_steps;
  row.fallbacks = all.fallbacks;
  if (all.queries > 0) {
    row.tests_per_query = static_cast<double>(all.triangle_tests) / all.queries;
    row.visits_per_query = static_cast<double>(all.node_visits) / all.queries;
  }
}

}  // namespace

BenchReport bench_locate(const BenchConfig& config) {
  config.check();
  const Triangulation mesh = make_mesh(config.mesh);
  std::optional<StructuredGrid> grid;
  if (config.mesh.kind == MeshSource::Kind::kCourant) grid.emplace(config.mesh.m);
  const RunPlan run = plan(mesh, config);

  // Workloads are independent of the locator; build them once.
  std::vector<std::vector<Point>> batches;
  batches.reserve(run.steps);
  for (int n = 0; n < run.steps; ++n) batches.push_back(make_workload(mesh, config, n, run.dt));

  BenchReport report;
  std::vector<LocationResult> out(mesh.vertices.size());
  for (LocatorKind kind : config.locators) {
    LocateRow row;
    double locate_seconds = 0.0;
    for (int rep = 0; rep < config.reps; ++rep) {
      auto locator = make_locator(kind, mesh, config, grid ? &*grid : nullptr);
      LocateStats all;
      LocateStats after_first;
      for (int n = 0; n < run.steps; ++n) {
        const auto t0 = Clock::now();
        const LocateStats s = locator->locate(batches[n], out);
        locate_seconds += std::chrono::duration<double>(Clock::now() - t0).count();
        all += s;
        if (n > 0) after_first += s;
      }
      if (rep == 0) {
        row = base_row(mesh, config, kind, *locator);
        fill_counts(row, all, after_first);
      }
    }
    row.workload = to_string(config.workload);
    row.dt = run.dt;
    row.distance = config.workload == Workload::kFixedDistance ? config.distance : 0.0;
    row.steps = run.steps;
    row.locate_seconds = locate_seconds / (config.reps * run.steps);
    report.rows.push_back(std::move(row));
  }
  return report;
}

StorageReport bench_storage(const std::vector<int>& sizes, std::uint64_t seed, int q) {
  StorageReport report;
  for (int n : sizes) {
    if (n < 7) throw ConfigError("storage sweep sizes must be >= 7 nodes");
    MeshSource source;
    source.kind = MeshSource::Kind::kRandom;
    source.n_points = n - 4;
    source.seed = seed;
    const Triangulation mesh = make_mesh(source);
    const Quadtree tree = Quadtree::build(mesh, q);
    StorageRow row;
    row.mesh = source.describe();
    row.n = mesh.num_vertices();
    row.n_t = mesh.num_triangles();
    row.mesh_bytes = static_cast<std::int64_t>(mesh_storage_bytes(mesh));
    row.quadtree_bytes = static_cast<std::int64_t>(tree.storage_bytes());
    row.qt_nodes = static_cast<std::int64_t>(tree.node_count());
    row.qt_leaf_indices = static_cast<std::int64_t>(tree.leaf_index_count());
    row.qt_depth = tree.depth();
    row.walk_ab_bytes = static_cast<std::int64_t>(walk_storage_bytes(mesh, WalkStrategy::kB));
    row.walk_c_bytes = static_cast<std::int64_t>(walk_storage_bytes(mesh, WalkStrategy::kC));
    row.ratio = static_cast<double>(row.quadtree_bytes + row.mesh_bytes) /
                static_cast<double>(row.walk_c_bytes + row.mesh_bytes);
    row.ratio_locator_only =
        static_cast<double>(row.quadtree_bytes) / static_cast<double>(row.walk_c_bytes);
    report.rows.push_back(std::move(row));
  }
  return report;
}

BenchReport bench_sl_profile(const BenchConfig& config) {
  config.check();
  if (config.workload != Workload::kCharacteristicFeet)
    throw ConfigError("the SL profile needs the characteristic-feet workload");
  if (!(config.courant > 0.0)) throw ConfigError("the SL profile needs a positive Courant number");
  const Triangulation mesh = make_mesh(config.mesh);
  std::optional<StructuredGrid> grid;
  if (config.mesh.kind == MeshSource::Kind::kCourant) grid.emplace(config.mesh.m);
  const double dt = config.courant * mesh.space_scale;
  const auto field = VectorField::rotating(config.c0, config.c1);
  const auto u0 = sample_nodes(mesh, gaussian());

  SLOptions options;
  options.time_level = config.time_level;
  options.warnings = nullptr;

  BenchReport report;
  for (LocatorKind kind : config.locators) {
    LocateRow row;
    double query = 0.0, locate = 0.0, interp = 0.0, fraction = 0.0;
    int steps = 0;
    for (int rep = 0; rep < config.reps; ++rep) {
      auto locator = make_locator(kind, mesh, config, grid ? &*grid : nullptr);
      const SLRun run = sl_advect(mesh, *locator, field, u0, dt, config.t_final, options);
      steps = run.profile.steps;
      query += run.profile.query_seconds;
      locate += run.profile.locate_seconds;
      interp += run.profile.interp_seconds;
      fraction += run.profile.location_fraction();
      if (rep == 0) {
        row = base_row(mesh, config, kind, *locator);
        fill_counts(row, run.profile.totals(), run.profile.totals_from(1));
      }
    }
    const double per = 1.0 / (config.reps * std::max(steps, 1));
    row.workload = to_string(Workload::kCharacteristicFeet);
    row.dt = dt;
    row.steps = steps;
    row.query_seconds = query * per;
    row.locate_seconds = locate * per;
    row.interp_seconds = interp * per;
    row.locate_fraction = fraction / config.reps;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string merge_csv(const std::vector<std::string>& texts) {
  std::string header;
  std::string body;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto& text = texts[i];
    const auto eol = text.find('\n');
    const std::string h = text.substr(0, eol);
    if (h.empty()) throw ConfigError("CSV input " + std::to_string(i + 1) + " has no header");
    if (header.empty())
      header = h;
    else if (h != header)
      throw ConfigError("CSV input " + std::to_string(i + 1) + " has a different header");
    if (eol == std::string::npos) continue;
    std::string rest = text.substr(eol + 1);
    if (!rest.empty() && rest.back() != '\n') rest += '\n';
    body += rest;
  }
  return header + "\n" + body;
}

}  // namespace sltrack
