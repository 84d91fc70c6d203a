#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "sltrack/mesh.hpp"

namespace sltrack {

enum class LocationStatus { kInside, kOutside };

/// Enclosing triangle and barycentric coordinates of one query.
struct LocationResult {
  Index triangle = kNoNeighbor;
  Barycentric<double> coords;
  int steps = 0;  // element changes
  LocationStatus status = LocationStatus::kOutside;
  bool fallback = false;  // answered by the exhaustive scan

  bool inside() const { return status == LocationStatus::kInside; }
};

/// Per-batch counters. Step statistics cover inside queries only.
struct LocateStats {
  std::int64_t queries = 0;
  std::int64_t inside = 0;
  std::int64_t outside = 0;
  std::int64_t total_steps = 0;
  int max_steps = 0;
  std::int64_t fallbacks = 0;
  std::int64_t triangle_tests = 0;
  std::int64_t node_visits = 0;

  double mean_steps() const { return inside ? static_cast<double>(total_steps) / inside : 0.0; }

  void record(const LocationResult& r) {
    ++queries;
    if (r.fallback) ++fallbacks;
    if (!r.inside()) {
      ++outside;
      return;
    }
    ++inside;
    total_steps += r.steps;
    if (r.steps > max_steps) max_steps = r.steps;
  }

  LocateStats& operator+=(const LocateStats& o) {
    queries += o.queries;
    inside += o.inside;
    outside += o.outside;
    total_steps += o.total_steps;
    if (o.max_steps > max_steps) max_steps = o.max_steps;
    fallbacks += o.fallbacks;
    triangle_tests += o.triangle_tests;
    node_visits += o.node_visits;
    return *this;
  }
};

/// Batch point locator over a fixed mesh. Locators may carry state from one
/// batch to the next (walk strategies B and C).
class PointLocator {
 public:
  virtual ~PointLocator() = default;

  virtual std::string name() const = 0;

  /// out.size() must equal queries.size(); out[i] answers queries[i].
  virtual LocateStats locate(std::span<const Point> queries, std::span<LocationResult> out) = 0;

  /// Locator-specific bytes, excluding mesh vertices and triangles.
  virtual std::size_t storage_bytes() const = 0;
};

}  // namespace sltrack
