#include "starpart/coarsening.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "starpart/rng.hpp"

namespace starpart {

Weight default_weight_tolerance(const Hypergraph& h, PartId k) {
  const Weight total = h.total_node_weight();
  const Weight per_slot = (total + 8 * k - 1) / (8 * k);  // ceil
  return std::max<Weight>(4, per_slot);
}

NodeId default_stop_node_count(PartId k) {
  return std::max<NodeId>(60, 15 * k);
}

double heavy_edge_score(const Hypergraph& h, NodeId u, NodeId v) {
  double score = 0.0;
  for (EdgeId e : h.edges_of(u)) {
    const auto pins = h.pins(e);
    if (std::binary_search(pins.begin(), pins.end(), v))
      score += static_cast<double>(h.edge_weight(e)) / (pins.size() - 1);
  }
  return score;
}

namespace {

constexpr double kUnordered = -std::numeric_limits<double>::infinity();

double best_neighbor_dot(const Hypergraph& h, const EmbeddingTable& eps,
                         NodeId u) {
  double best = kUnordered;
  for (EdgeId e : h.edges_of(u))
    for (NodeId v : h.pins(e)) {
      if (v == u) continue;
      const double value =
          eps.dot(u, v) /
          (static_cast<double>(h.node_weight(u)) * h.node_weight(v));
      best = std::max(best, value);
    }
  return best;
}

}  // namespace

std::vector<double> visit_order_scores_serial(const Hypergraph& h,
                                              const EmbeddingTable& eps) {
  std::vector<double> scores(static_cast<std::size_t>(h.num_nodes()));
  for (NodeId u = 0; u < h.num_nodes(); ++u)
    scores[u] = best_neighbor_dot(h, eps, u);
  return scores;
}

std::vector<double> visit_order_scores(const Hypergraph& h,
                                       const EmbeddingTable& eps) {
  std::vector<double> scores(static_cast<std::size_t>(h.num_nodes()));
  const NodeId n = h.num_nodes();
#pragma omp parallel for schedule(dynamic, 128)
  for (NodeId u = 0; u < n; ++u) scores[u] = best_neighbor_dot(h, eps, u);
  return scores;
}

double embedding_score(const Hypergraph& h, const EmbeddingTable& eps, NodeId u,
                       NodeId v) {
  const double normalized_dot =
      eps.dot(u, v) /
      (static_cast<double>(h.node_weight(u)) * h.node_weight(v));
  return normalized_dot * heavy_edge_score(h, u, v);
}

namespace {

// Visit order per scorer: similarity-ranked for embeddings (descending,
// ids ascending on ties), seeded shuffle for heavy-edge.
std::vector<NodeId> visit_order(const Hypergraph& h, const EmbeddingTable& eps,
                                const CoarseningConfig& cfg) {
  std::vector<NodeId> order(static_cast<std::size_t>(h.num_nodes()));
  std::iota(order.begin(), order.end(), NodeId{0});
  if (cfg.scorer == ScorerKind::heavy_edge) {
    Rng rng(cfg.seed);
    shuffle(order, rng);
    return order;
  }
  const std::vector<double> scores = visit_order_scores(h, eps);
  std::stable_sort(order.begin(), order.end(), [&scores](NodeId a, NodeId b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  return order;
}

Weight resolved_tolerance(const Hypergraph& h, const CoarseningConfig& cfg) {
  if (cfg.weight_tolerance > 0) return cfg.weight_tolerance;
  return default_weight_tolerance(h, 2);
}

// Shared-edge ratings of every neighbor of u, accumulated in one sweep.
// `touched` comes back sorted ascending so tie-breaks stay id-ordered.
void rate_neighbors(const Hypergraph& h, NodeId u, std::vector<double>& rating,
                    std::vector<NodeId>& touched) {
  touched.clear();
  for (EdgeId e : h.edges_of(u)) {
    const double value =
        static_cast<double>(h.edge_weight(e)) / (h.edge_size(e) - 1);
    for (NodeId v : h.pins(e)) {
      if (v == u) continue;
      if (rating[v] == 0.0) touched.push_back(v);
      rating[v] += value;
    }
  }
  std::sort(touched.begin(), touched.end());
}

// One greedy selection per Algorithm semantics: strict > keeps the lowest
// id among score ties, the weight guard is strict.
NodeId select_partner(const Hypergraph& h, const EmbeddingTable& eps,
                      const CoarseningConfig& cfg, const Matching& m, NodeId u,
                      Weight tolerance, std::vector<double>& rating,
                      std::vector<NodeId>& touched) {
  rate_neighbors(h, u, rating, touched);
  NodeId partner = kNone;
  double best = -std::numeric_limits<double>::infinity();
  for (NodeId v : touched) {
    const double shared = rating[v];
    rating[v] = 0.0;  // reset for the next call
    if (m.matched(v)) continue;
    if (h.node_weight(u) + h.node_weight(v) >= tolerance) continue;
    double score = shared;
    if (cfg.scorer == ScorerKind::embedding)
      score *= eps.dot(u, v) /
               (static_cast<double>(h.node_weight(u)) * h.node_weight(v));
    if (score > best) {
      best = score;
      partner = v;
    }
  }
  return partner;
}

void check_embedding(const Hypergraph& h, const EmbeddingTable& eps,
                     const CoarseningConfig& cfg) {
  if (cfg.scorer == ScorerKind::embedding && eps.num_nodes() != h.num_nodes())
    throw std::invalid_argument("embedding table does not cover the hypergraph");
}

}  // namespace

Matching match_level(const Hypergraph& h, const EmbeddingTable& eps,
                     const CoarseningConfig& cfg) {
  check_embedding(h, eps, cfg);
  const Weight tolerance = resolved_tolerance(h, cfg);
  Matching m(h.num_nodes());
  std::vector<double> rating(static_cast<std::size_t>(h.num_nodes()), 0.0);
  std::vector<NodeId> touched;
  for (NodeId u : visit_order(h, eps, cfg)) {
    if (m.matched(u)) continue;
    const NodeId partner =
        select_partner(h, eps, cfg, m, u, tolerance, rating, touched);
    if (partner == kNone) continue;
    m.partner[u] = partner;
    m.partner[partner] = u;
  }
  return m;
}

namespace {

// Single-pair variant for one-pair-per-level mode: the best-ordered node
// with any feasible partner contributes the level's only contraction.
Matching match_single(const Hypergraph& h, const EmbeddingTable& eps,
                      const CoarseningConfig& cfg) {
  check_embedding(h, eps, cfg);
  const Weight tolerance = resolved_tolerance(h, cfg);
  Matching m(h.num_nodes());
  std::vector<double> rating(static_cast<std::size_t>(h.num_nodes()), 0.0);
  std::vector<NodeId> touched;
  for (NodeId u : visit_order(h, eps, cfg)) {
    const NodeId partner =
        select_partner(h, eps, cfg, m, u, tolerance, rating, touched);
    if (partner == kNone) continue;
    m.partner[u] = partner;
    m.partner[partner] = u;
    return m;
  }
  return m;
}

}  // namespace

LevelHierarchy coarsen(const Hypergraph& h, const EmbeddingTable& eps,
                       const CoarseningConfig& cfg) {
  check_embedding(h, eps, cfg);
  const NodeId stop =
      cfg.stop_node_count > 0 ? cfg.stop_node_count : default_stop_node_count(2);

  LevelHierarchy out;
  ContractionMap cumulative(static_cast<std::size_t>(h.num_nodes()));
  std::iota(cumulative.begin(), cumulative.end(), NodeId{0});

  const Hypergraph* current = &h;
  const EmbeddingTable* current_eps = &eps;
  while (current->num_nodes() > stop) {
    if (cfg.max_levels > 0 &&
        static_cast<int>(out.levels.size()) >= cfg.max_levels)
      break;
    CoarseningConfig level_cfg = cfg;
    level_cfg.seed = derive_seed(cfg.seed, out.levels.size());
    const Matching m = cfg.mode == CoarseningMode::logn
                           ? match_level(*current, *current_eps, level_cfg)
                           : match_single(*current, *current_eps, level_cfg);
    const std::size_t pairs = m.pair_count();
    if (pairs == 0) break;
    // Whole-matching mode also stops once a level barely shrinks.
    if (cfg.mode == CoarseningMode::logn &&
        pairs * 20 < static_cast<std::size_t>(current->num_nodes()))
      break;

    ContractionResult r = contract(*current, m);
    Level level;
    level.coarse = std::move(r.coarse);
    level.map = std::move(r.map);
    level.cumulative.resize(cumulative.size());
    for (std::size_t v = 0; v < cumulative.size(); ++v)
      level.cumulative[v] = level.map[cumulative[v]];
    cumulative = level.cumulative;
    if (cfg.scorer == ScorerKind::embedding)
      level.coarse_embedding =
          interpolate_coarse(eps, level.cumulative, level.coarse.num_nodes());
    out.levels.push_back(std::move(level));
    current = &out.levels.back().coarse;
    current_eps = &out.levels.back().coarse_embedding;
  }
  return out;
}

}  // namespace starpart
