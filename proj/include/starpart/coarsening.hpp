#pragma once

#include <cstdint>
#include <vector>

#include "starpart/embedding.hpp"
#include "starpart/hypergraph.hpp"
#include "starpart/matching.hpp"
#include "starpart/types.hpp"

namespace starpart {

enum class CoarseningMode {
  logn,    // contract a whole matching per level
  nlevel,  // contract exactly one pair per level
};

enum class ScorerKind {
  heavy_edge,  // classical: random visit order, shared-edge rating only
  embedding,   // similarity-ordered visits, rating scaled by embedding dots
};

struct CoarseningConfig {
  Weight weight_tolerance = 0;  // 0 picks default_weight_tolerance(h, k)
  CoarseningMode mode = CoarseningMode::logn;
  NodeId stop_node_count = 0;  // 0 picks default_stop_node_count(k)
  int max_levels = 0;          // 0 = no explicit cap
  ScorerKind scorer = ScorerKind::embedding;
  std::uint64_t seed = 0;  // drives the heavy-edge visit order
};

// Keeps roughly eight coarse nodes per part available at the coarsest level.
Weight default_weight_tolerance(const Hypergraph& h, PartId k);
// Leaves enough coarse nodes for a balanced k-way initial solution.
NodeId default_stop_node_count(PartId k);

// Shared-edge rating: sum of w_e / (|e|-1) over edges holding both nodes.
double heavy_edge_score(const Hypergraph& h, NodeId u, NodeId v);

// Weight-normalized dot with the best neighbor; nodes without a distinct
// neighbor get -infinity and are visited last. Serial and parallel variants
// agree bitwise.
std::vector<double> visit_order_scores_serial(const Hypergraph& h,
                                              const EmbeddingTable& eps);
std::vector<double> visit_order_scores(const Hypergraph& h,
                                       const EmbeddingTable& eps);

// Pair rating: weight-normalized embedding dot times the shared-edge
// rating. The dot is deliberately left unnormalized, so magnitudes carry
// signal; negative scores are legal and rank below positive ones.
double embedding_score(const Hypergraph& h, const EmbeddingTable& eps, NodeId u,
                       NodeId v);

// Greedy matching pass: visit nodes by decreasing order score and match
// each unmatched node with its best-rated unmatched neighbor, subject to
// the strict weight guard w_u + w_v < weight_tolerance. All ties break by
// ascending node id, making the result a pure function of its inputs.
Matching match_level(const Hypergraph& h, const EmbeddingTable& eps,
                     const CoarseningConfig& cfg);

struct Level {
  Hypergraph coarse;
  ContractionMap map;         // previous level's ids -> coarse ids
  ContractionMap cumulative;  // original ids -> coarse ids
  EmbeddingTable coarse_embedding;  // empty under the heavy-edge scorer
};

struct LevelHierarchy {
  std::vector<Level> levels;

  bool empty() const { return levels.empty(); }
  const Hypergraph& coarsest(const Hypergraph& original) const {
    return levels.empty() ? original : levels.back().coarse;
  }
};

// Multilevel driver: match and contract until the hypergraph is small
// enough, a level stops shrinking (whole-matching mode also stops below 5%
// reduction), or max_levels is hit. Coarse embeddings are interpolated from
// the original table via the cumulative map at every level.
LevelHierarchy coarsen(const Hypergraph& h, const EmbeddingTable& eps,
                       const CoarseningConfig& cfg);

}  // namespace starpart
