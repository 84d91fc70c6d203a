#pragma once

#include <cstdint>

#include "sltrack/mesh.hpp"

namespace sltrack {

/// Uniform M x M lattice on [-1/2, 1/2]^2, each cell split along its SW-NE
/// diagonal. Vertex (l, m) has index m*(M+1) + l. Cell (l, m) owns triangles
/// 2(M m + l), the upper-left half where the x-fraction is below the
/// y-fraction, and 2(M m + l) + 1, the lower-right half. space_scale = 1/M.
Triangulation generate_courant_mesh(int M);

/// Delaunay triangulation of the four corners of [-1/2, 1/2]^2 followed by
/// n_points uniform samples from Rng(seed), built by incremental insertion
/// with Lawson edge flips. Exact duplicates of earlier points are dropped.
/// space_scale = 1/sqrt(N).
Triangulation generate_random_delaunay(int n_points, std::uint64_t seed);

}  // namespace sltrack
