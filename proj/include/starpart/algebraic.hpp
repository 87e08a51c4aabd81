#pragma once

#include <cstdint>
#include <vector>

#include "starpart/hypergraph.hpp"
#include "starpart/types.hpp"

namespace starpart {

// Per-restart scalar coordinates on the bipartite graph's vertices. The
// relaxation update averages each coordinate with the degree-weighted mean
// of its neighbors, so every value stays inside its restart's initial
// [min, max] range; the bounds are kept for asserting exactly that.
struct AlgebraicCoordinates {
  std::vector<std::vector<double>> coords;  // [restart][vertex]
  std::vector<double> init_min;             // per restart
  std::vector<double> init_max;

  int restarts() const { return static_cast<int>(coords.size()); }
};

AlgebraicCoordinates algebraic_init(NodeId num_vertices, int restarts,
                                    std::uint64_t seed);

// One Jacobi relaxation step: every new coordinate reads only old ones, so
// the parallel and serial variants produce bit-identical results. Vertices
// without neighbors keep their coordinate.
void algebraic_sweep_serial(const BipartiteGraph& g, const std::vector<double>& from,
                            std::vector<double>& to);
void algebraic_sweep(const BipartiteGraph& g, const std::vector<double>& from,
                     std::vector<double>& to);

// Similarity wrapper over converged coordinates: distance is Euclidean
// across restarts, score rescales it into [0, 1] (identical coordinates
// score 1, maximally distant ones 0).
struct AlgebraicSimilarity {
  std::vector<std::vector<double>> coords;  // [restart][vertex]

  int restarts() const { return static_cast<int>(coords.size()); }
  double distance(NodeId u, NodeId v) const;
  double score(NodeId u, NodeId v) const;
};

// Runs `restarts` independent relaxations for `iterations` steps each and
// packages the result. Restart r draws its own seed stream.
AlgebraicSimilarity algebraic_distance(const BipartiteGraph& g, int restarts,
                                       int iterations, std::uint64_t seed);

inline constexpr int kAlgebraicRestarts = 10;
inline constexpr int kAlgebraicIterations = 20;

}  // namespace starpart
