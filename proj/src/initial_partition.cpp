#include "starpart/initial_partition.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "starpart/rng.hpp"

namespace starpart {
namespace {

// Lightest part, ids breaking ties; optionally only parts that can absorb
// `extra` within `bound`.
PartId lightest_part(const std::vector<Weight>& part_weight, Weight extra,
                     double bound, bool respect_bound) {
  PartId best = kNone;
  for (PartId p = 0; p < static_cast<PartId>(part_weight.size()); ++p) {
    if (respect_bound &&
        static_cast<double>(part_weight[p] + extra) > bound)
      continue;
    if (best == kNone || part_weight[p] < part_weight[best]) best = p;
  }
  return best;
}

}  // namespace

PartitionAssignment random_balanced(const Hypergraph& h, PartId k, double alpha,
                                    std::uint64_t seed) {
  const double bound = balance_bound(h, k, alpha);
  std::vector<NodeId> order(static_cast<std::size_t>(h.num_nodes()));
  std::iota(order.begin(), order.end(), NodeId{0});
  Rng rng(seed);
  shuffle(order, rng);

  PartitionAssignment p;
  p.k = k;
  p.label.assign(static_cast<std::size_t>(h.num_nodes()), 0);
  p.part_weight.assign(static_cast<std::size_t>(k), 0);
  for (NodeId v : order) {
    PartId target = lightest_part(p.part_weight, h.node_weight(v), bound, true);
    if (target == kNone)
      target = lightest_part(p.part_weight, 0, bound, false);
    p.label[v] = target;
    p.part_weight[target] += h.node_weight(v);
  }
  return p;
}

namespace {

// Connectivity increase of putting v into part p, over assigned pins only:
// each already-touched edge that does not yet reach p pays its weight.
Weight growth_delta(const Hypergraph& h,
                    const std::vector<std::vector<int>>& pins_in_part, NodeId v,
                    PartId p) {
  Weight delta = 0;
  for (EdgeId e : h.edges_of(v)) {
    const auto& counts = pins_in_part[e];
    bool touched = false;
    for (int c : counts)
      if (c > 0) {
        touched = true;
        break;
      }
    if (touched && counts[p] == 0) delta += h.edge_weight(e);
  }
  return delta;
}

}  // namespace

PartitionAssignment greedy_growth(const Hypergraph& h, PartId k, double alpha,
                                  std::uint64_t seed) {
  const double bound = balance_bound(h, k, alpha);
  const NodeId n = h.num_nodes();
  std::vector<PartId> label(static_cast<std::size_t>(n), kNone);
  std::vector<Weight> part_weight(static_cast<std::size_t>(k), 0);
  std::vector<std::vector<int>> pins_in_part(
      static_cast<std::size_t>(h.num_edges()),
      std::vector<int>(static_cast<std::size_t>(k), 0));

  auto place = [&](NodeId v, PartId p) {
    label[v] = p;
    part_weight[p] += h.node_weight(v);
    for (EdgeId e : h.edges_of(v)) ++pins_in_part[e][p];
  };

  // Seed parts with distinct random nodes (short parts stay empty when
  // k exceeds the node count).
  std::vector<NodeId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), NodeId{0});
  Rng rng(seed);
  shuffle(order, rng);
  for (PartId p = 0; p < k && p < static_cast<PartId>(n); ++p)
    place(order[p], p);

  // Grow the lightest part that still has an absorbable frontier node.
  for (;;) {
    bool progressed = false;
    std::vector<PartId> parts(static_cast<std::size_t>(k));
    std::iota(parts.begin(), parts.end(), PartId{0});
    std::sort(parts.begin(), parts.end(), [&](PartId a, PartId b) {
      if (part_weight[a] != part_weight[b]) return part_weight[a] < part_weight[b];
      return a < b;
    });
    for (PartId p : parts) {
      NodeId best = kNone;
      Weight best_delta = 0;
      for (NodeId v = 0; v < n; ++v) {
        if (label[v] != kNone) continue;
        if (static_cast<double>(part_weight[p] + h.node_weight(v)) > bound)
          continue;
        // Frontier only: v must already touch an edge reaching p.
        bool adjacent = false;
        for (EdgeId e : h.edges_of(v))
          if (pins_in_part[e][p] > 0) {
            adjacent = true;
            break;
          }
        if (!adjacent) continue;
        const Weight delta = growth_delta(h, pins_in_part, v, p);
        if (best == kNone || delta < best_delta) {
          best = v;
          best_delta = delta;
        }
      }
      if (best != kNone) {
        place(best, p);
        progressed = true;
        break;  // re-rank parts by weight
      }
    }
    if (!progressed) break;
  }

  // First-fit leftovers: lightest part whose bound permits, else lightest.
  for (NodeId v = 0; v < n; ++v) {
    if (label[v] != kNone) continue;
    PartId target = lightest_part(part_weight, h.node_weight(v), bound, true);
    if (target == kNone) target = lightest_part(part_weight, 0, bound, false);
    place(v, target);
  }

  PartitionAssignment p;
  p.k = k;
  p.label = std::move(label);
  p.part_weight = std::move(part_weight);
  return p;
}

PartitionAssignment best_initial(const Hypergraph& h, PartId k, double alpha,
                                 Objective objective, const InitialConfig& cfg) {
  if (cfg.attempts < 1)
    throw std::invalid_argument("initial partitioning needs attempts >= 1");
  if (!cfg.use_random && !cfg.use_greedy_growth)
    throw std::invalid_argument("initial partitioning needs some strategy");

  bool have_feasible = false;
  PartitionAssignment best;
  Weight best_objective = 0;
  PartitionAssignment closest;
  double closest_imbalance = std::numeric_limits<double>::infinity();

  std::uint64_t stream = 0;
  for (int attempt = 0; attempt < cfg.attempts; ++attempt) {
    for (int strategy = 0; strategy < 2; ++strategy) {
      if (strategy == 0 && !cfg.use_random) continue;
      if (strategy == 1 && !cfg.use_greedy_growth) continue;
      const std::uint64_t attempt_seed = derive_seed(cfg.seed, stream++);
      PartitionAssignment candidate =
          strategy == 0 ? random_balanced(h, k, alpha, attempt_seed)
                        : greedy_growth(h, k, alpha, attempt_seed);
      if (assignment_feasible(h, candidate, alpha)) {
        const Weight value = objective_value(h, candidate, objective);
        if (!have_feasible || value < best_objective) {
          have_feasible = true;
          best = std::move(candidate);
          best_objective = value;
        }
      } else {
        const double imbalance = imbalance_of(h, candidate);
        if (imbalance < closest_imbalance) {
          closest_imbalance = imbalance;
          closest = std::move(candidate);
        }
      }
    }
  }
  if (!have_feasible)
    throw infeasible_error("no feasible initial assignment found",
                           std::move(closest));
  return best;
}

}  // namespace starpart
