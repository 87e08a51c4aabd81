#pragma once

#include <cstdint>
#include <vector>

#include "starpart/algebraic.hpp"
#include "starpart/embedding.hpp"
#include "starpart/hypergraph.hpp"
#include "starpart/types.hpp"

namespace starpart {

struct SamplePair {
  NodeId u = kNone;
  NodeId v = kNone;
  double target = 0.0;  // in [0, 1]
};

// Labeled vertex pairs over a bipartite graph. The first positive_count
// entries are the structural positives (edges and co-neighbor pairs); the
// tail holds sampled negatives, which trainers replace every epoch.
struct SampleSet {
  std::vector<SamplePair> pairs;
  std::size_t positive_count = 0;
};

struct TrainConfig {
  int dims = 100;
  int epochs = 20;
  double learning_rate = 0.1;
  int negatives_per_positive = 5;
};

// Positives: every bipartite edge, plus same-side pairs sharing a neighbor
// (one sampled pair per incidence, so the count stays linear). All targets
// are 1. Negatives: uniform unrelated pairs at the configured ratio.
SampleSet fobe_samples(const BipartiteGraph& g, int negatives_per_positive,
                       std::uint64_t seed);

// Same pair structure, but each positive carries an algebraic target:
// a co-neighbor pair (u,v) scores the best min(s(u,x), s(v,x)) over shared
// neighbors x, and an edge pair scores the best such value reachable
// through either endpoint's neighborhood.
SampleSet hobe_scores(const BipartiteGraph& g, const AlgebraicSimilarity& sim,
                      int negatives_per_positive, std::uint64_t seed);

// Edge-pair target kernels behind hobe_scores, exposed for benchmarking;
// both fill `target` for each (u, v) in `pairs` and agree bit-for-bit.
void hobe_edge_targets_serial(const BipartiteGraph& g,
                              const AlgebraicSimilarity& sim,
                              std::vector<SamplePair>& pairs);
void hobe_edge_targets(const BipartiteGraph& g, const AlgebraicSimilarity& sim,
                       std::vector<SamplePair>& pairs);

// Per-pair losses over the dot product z, exposed for gradient checks.
double fobe_pair_loss(double z, double target);
double fobe_pair_dldz(double z, double target);
double hobe_pair_loss(double z, double target);
double hobe_pair_dldz(double z, double target);

// SGD trainers over all bipartite vertices; the returned table keeps only
// the left side (the hypergraph's nodes). Passing the graph lets the
// trainer resample the negative tail each epoch; without it the initial
// negatives are reused. Deterministic for a fixed seed.
EmbeddingTable fobe_train(const SampleSet& samples, const BipartiteGraph& g,
                          const TrainConfig& config, std::uint64_t seed);
EmbeddingTable hobe_train(const SampleSet& samples, const BipartiteGraph& g,
                          const TrainConfig& config, std::uint64_t seed);

}  // namespace starpart
