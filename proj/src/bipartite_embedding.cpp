#include "starpart/bipartite_embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "starpart/rng.hpp"

namespace starpart {
namespace {

bool adjacent(const BipartiteGraph& g, NodeId a, NodeId b) {
  const auto nb = g.neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

bool share_neighbor(const BipartiteGraph& g, NodeId a, NodeId b) {
  const auto na = g.neighbors(a);
  const auto nb = g.neighbors(b);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < na.size() && j < nb.size()) {
    if (na[i] < nb[j])
      ++i;
    else if (na[i] > nb[j])
      ++j;
    else
      return true;
  }
  return false;
}

// Best min(s(u,x), s(v,x)) over shared neighbors x; -1 when none exist.
double alpha_score(const BipartiteGraph& g, const AlgebraicSimilarity& sim,
                   NodeId u, NodeId v) {
  const auto nu = g.neighbors(u);
  const auto nv = g.neighbors(v);
  double best = -1.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < nu.size() && j < nv.size()) {
    if (nu[i] < nv[j]) {
      ++i;
    } else if (nu[i] > nv[j]) {
      ++j;
    } else {
      const NodeId x = nu[i];
      best = std::max(best, std::min(sim.score(u, x), sim.score(v, x)));
      ++i;
      ++j;
    }
  }
  return best;
}

double edge_pair_target(const BipartiteGraph& g, const AlgebraicSimilarity& sim,
                        NodeId u, NodeId v) {
  double best = -1.0;
  for (NodeId x : g.neighbors(v)) best = std::max(best, alpha_score(g, sim, u, x));
  for (NodeId x : g.neighbors(u)) best = std::max(best, alpha_score(g, sim, x, v));
  // u itself sits in the first sweep, so a real value always exists.
  return std::clamp(best, 0.0, 1.0);
}

// Every bipartite edge once (left endpoint first).
std::vector<SamplePair> edge_pairs(const BipartiteGraph& g) {
  std::vector<SamplePair> pairs;
  for (NodeId u = 0; u < g.left_count; ++u)
    for (NodeId v : g.neighbors(u)) pairs.push_back({u, v, 1.0});
  return pairs;
}

// Same-side pairs sharing a neighbor: for each vertex x, one sampled pair
// out of Γ(x) per incidence, keeping the total linear in the pin count.
std::vector<SamplePair> co_neighbor_pairs(const BipartiteGraph& g, Rng& rng) {
  std::vector<SamplePair> pairs;
  for (NodeId x = 0; x < g.total_vertices(); ++x) {
    const auto nb = g.neighbors(x);
    if (nb.size() < 2) continue;
    for (std::size_t draw = 0; draw < nb.size(); ++draw) {
      const NodeId a = nb[rng.below(nb.size())];
      const NodeId b = nb[rng.below(nb.size())];
      if (a == b) continue;
      pairs.push_back({a, b, 1.0});
    }
  }
  return pairs;
}

// Uniform pairs that are neither adjacent nor co-neighbors. Gives up on a
// draw after a bounded number of rejections, so dense toy graphs where
// every pair is related cannot loop forever.
void append_negatives(const BipartiteGraph& g, std::size_t count, Rng& rng,
                      std::vector<SamplePair>& out) {
  const NodeId n = g.total_vertices();
  if (n < 2) return;
  for (std::size_t i = 0; i < count; ++i) {
    for (int attempt = 0; attempt < 60; ++attempt) {
      const NodeId a = static_cast<NodeId>(rng.below(n));
      const NodeId b = static_cast<NodeId>(rng.below(n));
      if (a == b || adjacent(g, a, b) || share_neighbor(g, a, b)) continue;
      out.push_back({a, b, 0.0});
      break;
    }
  }
}

std::size_t negative_budget(std::size_t positives, int ratio) {
  return positives * static_cast<std::size_t>(std::max(ratio, 0));
}

}  // namespace

SampleSet fobe_samples(const BipartiteGraph& g, int negatives_per_positive,
                       std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0));
  SampleSet set;
  set.pairs = edge_pairs(g);
  const auto co = co_neighbor_pairs(g, rng);
  set.pairs.insert(set.pairs.end(), co.begin(), co.end());
  set.positive_count = set.pairs.size();
  append_negatives(g, negative_budget(set.positive_count, negatives_per_positive),
                   rng, set.pairs);
  return set;
}

void hobe_edge_targets_serial(const BipartiteGraph& g,
                              const AlgebraicSimilarity& sim,
                              std::vector<SamplePair>& pairs) {
  for (auto& p : pairs) p.target = edge_pair_target(g, sim, p.u, p.v);
}

void hobe_edge_targets(const BipartiteGraph& g, const AlgebraicSimilarity& sim,
                       std::vector<SamplePair>& pairs) {
  const std::int64_t n = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i)
    pairs[i].target = edge_pair_target(g, sim, pairs[i].u, pairs[i].v);
}

SampleSet hobe_scores(const BipartiteGraph& g, const AlgebraicSimilarity& sim,
                      int negatives_per_positive, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0));
  SampleSet set;
  set.pairs = edge_pairs(g);
  hobe_edge_targets(g, sim, set.pairs);
  for (auto& p : co_neighbor_pairs(g, rng)) {
    p.target = std::clamp(alpha_score(g, sim, p.u, p.v), 0.0, 1.0);
    set.pairs.push_back(p);
  }
  set.positive_count = set.pairs.size();
  append_negatives(g, negative_budget(set.positive_count, negatives_per_positive),
                   rng, set.pairs);
  return set;
}

double fobe_pair_loss(double z, double target) {
  const double sg = 1.0 / (1.0 + std::exp(-z));
  const double clamped = std::clamp(sg, 1e-12, 1.0 - 1e-12);
  const double log_target = target > 0.0 ? std::log(target) : 0.0;
  return clamped * (log_target - std::log(clamped));
}

double fobe_pair_dldz(double z, double target) {
  const double sg = 1.0 / (1.0 + std::exp(-z));
  const double clamped = std::clamp(sg, 1e-12, 1.0 - 1e-12);
  const double slope = sg * (1.0 - sg);
  const double log_target = target > 0.0 ? std::log(target) : 0.0;
  return slope * (log_target - std::log(clamped) - 1.0);
}

double hobe_pair_loss(double z, double target) {
  const double r = target - std::max(0.0, z);
  return r * r;
}

double hobe_pair_dldz(double z, double target) {
  if (z <= 0.0) return 0.0;
  return 2.0 * (z - target);
}

namespace {

EmbeddingTable train_impl(const SampleSet& samples, const BipartiteGraph& g,
                          const TrainConfig& config, std::uint64_t seed,
                          double (*dldz)(double, double)) {
  if (samples.pairs.empty() || samples.positive_count == 0)
    throw std::invalid_argument("training needs a nonempty sample set");
  if (config.dims < 1) throw std::invalid_argument("dims must be >= 1");

  const NodeId num_vertices = g.total_vertices();
  EmbeddingTable table(num_vertices, config.dims);
  Rng init_rng(derive_seed(seed, 0));
  const double scale = 0.5 / config.dims;
  for (auto& value : table.values) value = init_rng.uniform(-scale, scale);

  SampleSet work = samples;
  const std::size_t negatives =
      negative_budget(work.positive_count, config.negatives_per_positive);
  std::vector<std::size_t> order;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    if (epoch > 0) {
      // Fresh negatives every epoch; the provided tail serves as epoch 0.
      Rng neg_rng(derive_seed(seed, 1000 + static_cast<std::uint64_t>(epoch)));
      work.pairs.resize(work.positive_count);
      append_negatives(g, negatives, neg_rng, work.pairs);
    }
    order.resize(work.pairs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng order_rng(derive_seed(seed, 2000 + static_cast<std::uint64_t>(epoch)));
    shuffle(order, order_rng);

    for (std::size_t idx : order) {
      const SamplePair& p = work.pairs[idx];
      const double z = table.dot(p.u, p.v);
      const double gz = dldz(z, p.target);
      if (gz == 0.0) continue;
      const double step = config.learning_rate * gz;
      auto eu = table.vec(p.u);
      auto ev = table.vec(p.v);
      for (int d = 0; d < config.dims; ++d) {
        const double du = step * ev[d];
        const double dv = step * eu[d];
        eu[d] -= du;
        ev[d] -= dv;
      }
    }
  }

  EmbeddingTable out(g.left_count, config.dims);
  std::copy(table.values.begin(),
            table.values.begin() +
                static_cast<std::size_t>(g.left_count) * config.dims,
            out.values.begin());
  return out;
}

}  // namespace

EmbeddingTable fobe_train(const SampleSet& samples, const BipartiteGraph& g,
                          const TrainConfig& config, std::uint64_t seed) {
  return train_impl(samples, g, config, seed, fobe_pair_dldz);
}

EmbeddingTable hobe_train(const SampleSet& samples, const BipartiteGraph& g,
                          const TrainConfig& config, std::uint64_t seed) {
  return train_impl(samples, g, config, seed, hobe_pair_dldz);
}

}  // namespace starpart
