#include "sltrack/walk.hpp"

#include <algorithm>
#include <thread>

namespace sltrack {

std::string_view to_string(WalkStrategy s) {
  switch (s) {
    case WalkStrategy::kA: return "walk-a";
    case WalkStrategy::kB: return "walk-b";
    case WalkStrategy::kC: return "walk-c";
  }
  return "walk-?";
}

LocationResult walk_from(const Triangulation& mesh, Index start, const Point& p,
                         const WalkOptions& options) {
  const int cap = options.max_steps > 0 ? options.max_steps : 4 * mesh.num_triangles();
  LocationResult r;
  Index t = start;
  for (;;) {
    const auto b = barycentric_coords(mesh, t, p);
    const auto k = b.argmin();
    if (b[k] >= -kInsideTolerance) {
      r.triangle = t;
      r.coords = b;
      r.status = LocationStatus::kInside;
      return r;
    }
    const Index next = mesh.neighbors[t][k];
    if (next == kNoNeighbor) {
      r.triangle = t;
      r.coords = b;
      r.status = LocationStatus::kOutside;
      return r;
    }
    if (r.steps >= cap) break;
    t = next;
    ++r.steps;
  }
  r.fallback = true;
  r.triangle = scan_locate(mesh, p);
  if (r.triangle != kNoNeighbor) {
    r.coords = barycentric_coords(mesh, r.triangle, p);
    r.status = LocationStatus::kInside;
  }
  return r;
}

namespace {

LocateStats sweep(const Triangulation& mesh, std::span<const Index> starts,
                  std::span<const Point> queries, std::span<LocationResult> out, std::size_t begin,
                  std::size_t end, const WalkOptions& options) {
  LocateStats stats;
  for (std::size_t i = begin; i < end; ++i) {
    out[i] = walk_from(mesh, starts[i], queries[i], options);
    stats.record(out[i]);
  }
  return stats;
}

}  // namespace

LocateStats point_location_bw(const Triangulation& mesh, WalkContext& ctx,
                              std::span<const Point> queries, WalkStrategy strategy,
                              std::span<LocationResult> out, const BatchOptions& options) {
  const std::size_t n = ctx.initial_triangles.size();
  if (queries.size() != n || out.size() != n)
    throw std::invalid_argument("point_location_bw: expected one query and one output per node");

  LocateStats stats;
  if (strategy == WalkStrategy::kC) {
    if (!ctx.has_spanning_tree()) throw MissingSpanningTreeError();
    auto& start = ctx.initial_triangles;
    for (Index i : ctx.traversal_order) {
      out[i] = walk_from(mesh, start[ctx.parents[i]], queries[i], options.walk);
      stats.record(out[i]);
      if (out[i].inside()) start[i] = out[i].triangle;
    }
    return stats;
  }

  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(n / 1024) + 1));
  if (threads == 1) {
    stats = sweep(mesh, ctx.initial_triangles, queries, out, 0, n, options.walk);
  } else {
    std::vector<LocateStats> partial(threads);
    {
      std::vector<std::jthread> pool;
      for (int w = 0; w < threads; ++w) {
        const std::size_t b = n * w / threads;
        const std::size_t e = n * (w + 1) / threads;
        pool.emplace_back([&, w, b, e] {
          partial[w] = sweep(mesh, ctx.initial_triangles, queries, out, b, e, options.walk);
        });
      }
    }
    for (const auto& s : partial) stats += s;
  }
  if (strategy == WalkStrategy::kB)
    for (std::size_t i = 0; i < n; ++i)
      if (out[i].inside()) ctx.initial_triangles[i] = out[i].triangle;
  return stats;
}

std::size_t walk_storage_bytes(const Triangulation& mesh, WalkStrategy strategy) {
  const std::size_t n = mesh.vertices.size();
  std::size_t bytes = mesh.triangles.size() * 3 * 4 + n * 4;
  if (strategy == WalkStrategy::kC) bytes += n * 4;
  return bytes;
}

WalkLocator::WalkLocator(const Triangulation& mesh, WalkContext ctx, WalkStrategy strategy,
                         BatchOptions options)
    : mesh_(mesh), ctx_(std::move(ctx)), strategy_(strategy), options_(options) {
  if (strategy_ == WalkStrategy::kC && !ctx_.has_spanning_tree()) throw MissingSpanningTreeError();
}

std::string WalkLocator::name() const { return std::string(to_string(strategy_)); }

LocateStats WalkLocator::locate(std::span<const Point> queries, std::span<LocationResult> out) {
  return point_location_bw(mesh_, ctx_, queries, strategy_, out, options_);
}

}  // namespace sltrack
