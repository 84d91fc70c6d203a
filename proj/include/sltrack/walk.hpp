#pragma once

#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "sltrack/location.hpp"
#include "sltrack/mesh.hpp"
#include "sltrack/spanning_tree.hpp"

namespace sltrack {

/// Choice of start triangle for each node's walk.
enum class WalkStrategy {
  kA,  // the node's own incident triangle, fixed for the whole run
  kB,  // the triangle found for the same node at the previous time step
  kC,  // the triangle just found for the node's spanning-tree parent
};

std::string_view to_string(WalkStrategy s);

struct WalkOptions {
  /// Element changes allowed before falling back to an exhaustive scan;
  /// 0 selects 4 * N_t.
  int max_steps = 0;
};

/// Barycentric walk from start toward p: while some coordinate is below
/// -kInsideTolerance, cross the edge opposite the most negative one (lowest
/// position on ties). Reaching a boundary edge reports Outside.
LocationResult walk_from(const Triangulation& mesh, Index start, const Point& p,
                         const WalkOptions& options = {});

class MissingSpanningTreeError : public std::invalid_argument {
 public:
  MissingSpanningTreeError()
      : std::invalid_argument("walk strategy C requires a spanning tree in the walk context") {}
};

struct BatchOptions {
  WalkOptions walk;
  /// Worker threads for strategies A and B; strategy C always runs in
  /// spanning-tree order on the calling thread.
  int threads = 1;
};

/// Locates queries[i] for every node i (one query per node) and updates the
/// context's start triangles as the strategy requires. Outside queries leave
/// the node's start triangle unchanged. out.size() == queries.size() == N.
LocateStats point_location_bw(const Triangulation& mesh, WalkContext& ctx,
                              std::span<const Point> queries, WalkStrategy strategy,
                              std::span<LocationResult> out, const BatchOptions& options = {});

/// Neighbor table (3 N_t ints) + start triangles (N ints) + parents for
/// strategy C (N ints), at 4 bytes per integer.
std::size_t walk_storage_bytes(const Triangulation& mesh, WalkStrategy strategy);

class WalkLocator final : public PointLocator {
 public:
  WalkLocator(const Triangulation& mesh, WalkContext ctx, WalkStrategy strategy,
              BatchOptions options = {});

  std::string name() const override;
  LocateStats locate(std::span<const Point> queries, std::span<LocationResult> out) override;
  std::size_t storage_bytes() const override { return walk_storage_bytes(mesh_, strategy_); }

  WalkStrategy strategy() const { return strategy_; }
  const WalkContext& context() const { return ctx_; }

 private:
  const Triangulation& mesh_;
  WalkContext ctx_;
  WalkStrategy strategy_;
  BatchOptions options_;
};

}  // namespace sltrack
