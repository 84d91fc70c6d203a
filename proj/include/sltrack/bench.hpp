#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sltrack/location.hpp"
#include "sltrack/mesh.hpp"
#include "sltrack/sl.hpp"
#include "sltrack/structured.hpp"

namespace sltrack {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct MeshSource {
  enum class Kind { kFile, kCourant, kRandom };

  Kind kind = Kind::kRandom;
  std::filesystem::path path;  // kFile: .node/.ele prefix
  int m = 0;                   // kCourant
  int n_points = 0;            // kRandom
  std::uint64_t seed = 1;      // kRandom

  std::string describe() const;
};

enum class LocatorKind { kQuadtree, kWalkA, kWalkB, kWalkC, kStructured };

std::string to_string(LocatorKind kind);
LocatorKind parse_locator(const std::string& name);

enum class Workload {
  kCharacteristicFeet,  // Euler feet of the configured field over ceil(T/dt) steps
  kRandomPoints,        // N uniform points in the mesh bounding box per step
  kFixedDistance,       // per node, a point at distance d in a random direction
};

std::string to_string(Workload w);
Workload parse_workload(const std::string& name);

struct BenchConfig {
  MeshSource mesh;
  std::vector<LocatorKind> locators{LocatorKind::kWalkB};
  int q = 7;
  double c0 = 6.283185307179586;
  double c1 = 6.283185307179586;
  double courant = 5.0;  // dt = courant * dx
  double t_final = 1.0;
  Workload workload = Workload::kCharacteristicFeet;
  double distance = 0.0;  // fixed-distance workload, absolute length
  int reps = 1;
  std::uint64_t seed = 1;  // start triangles and random workloads
  int threads = 1;
  TimeLevel time_level = TimeLevel::kCurrent;

  void check() const;
};

/// One row per (mesh, locator, parameter set). Counts are exact; time
/// columns are per time step, averaged over repetitions.
struct LocateRow {
  std::string mesh;
  std::int64_t n = 0;
  std::int64_t n_t = 0;
  std::string locator;
  std::string workload;
  double alpha = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
  double dt = 0.0;
  double distance = 0.0;
  int steps = 0;
  int reps = 0;
  std::int64_t queries = 0;
  std::int64_t outside = 0;
  double mean_changes = 0.0;
  int max_changes = 0;
  double mean_changes_after_first = 0.0;
  std::int64_t changes_after_first = 0;
  std::int64_t fallbacks = 0;
  double tests_per_query = 0.0;
  double visits_per_query = 0.0;
  int qt_depth = 0;
  std::int64_t qt_nodes = 0;
  std::int64_t qt_leaf_indices = 0;
  std::int64_t locator_bytes = 0;
  std::int64_t mesh_bytes = 0;
  double query_seconds = 0.0;
  double locate_seconds = 0.0;
  double interp_seconds = 0.0;
  double locate_fraction = 0.0;
  int threads = 1;
  std::uint64_t seed = 0;

  static std::string csv_header();
  std::string csv_line() const;
};

struct StorageRow {
  std::string mesh;
  std::int64_t n = 0;
  std::int64_t n_t = 0;
  std::int64_t mesh_bytes = 0;
  std::int64_t quadtree_bytes = 0;
  std::int64_t qt_nodes = 0;
  std::int64_t qt_leaf_indices = 0;
  int qt_depth = 0;
  std::int64_t walk_ab_bytes = 0;
  std::int64_t walk_c_bytes = 0;
  double ratio = 0.0;               // (quadtree + mesh) / (walk-C + mesh)
  double ratio_locator_only = 0.0;  // quadtree / walk-C

  static std::string csv_header();
  std::string csv_line() const;
};

template <typename Row>
struct Report {
  std::vector<Row> rows;

  std::string to_csv() const {
    std::string out = Row::csv_header() + "\n";
    for (const auto& r : rows) out += r.csv_line() + "\n";
    return out;
  }
};

using BenchReport = Report<LocateRow>;
using StorageReport = Report<StorageRow>;

Triangulation make_mesh(const MeshSource& source);

/// Builds the requested locator over mesh. grid is required for kStructured
/// and must describe the same mesh.
std::unique_ptr<PointLocator> make_locator(LocatorKind kind, const Triangulation& mesh,
                                           const BenchConfig& config,
                                           const StructuredGrid* grid = nullptr);

/// Query workload for one step of a run.
std::vector<Point> make_workload(const Triangulation& mesh, const BenchConfig& config, int step,
                                 double dt);

BenchReport bench_locate(const BenchConfig& config);

/// Random-Delaunay meshes with the given total node counts.
StorageReport bench_storage(const std::vector<int>& sizes, std::uint64_t seed, int q = 7);

/// Runs sl_advect once per locator and repetition with a Gaussian initial
/// datum; locate_fraction is the mean over repetitions.
BenchReport bench_sl_profile(const BenchConfig& config);

/// Concatenates CSV texts that share a header line.
std::string merge_csv(const std::vector<std::string>& texts);

}  // namespace sltrack
