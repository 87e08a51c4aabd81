#include "starpart/partitioner.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <utility>
#include <vector>

#include "starpart/jsonw.hpp"
#include "starpart/rng.hpp"

namespace starpart {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

// Seed streams for the phases hanging off one top-level seed.
constexpr std::uint64_t kSeedCoarsen = 1;
constexpr std::uint64_t kSeedInitial = 2;
constexpr std::uint64_t kSeedLeftChild = 3;
constexpr std::uint64_t kSeedRightChild = 4;

void validate_call(const Hypergraph& h, const EmbeddingTable* eps,
                   const VCycleConfig& cfg) {
  if (cfg.k < 2) throw std::invalid_argument("k must be >= 2");
  if (cfg.alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  if (cfg.k > h.num_nodes()) {
    throw std::invalid_argument("k exceeds the number of nodes");
  }
  if (cfg.coarsening.scorer == ScorerKind::embedding && eps == nullptr) {
    throw std::invalid_argument(
        "embedding scorer requires an embedding table");
  }
  if (eps != nullptr && eps->num_nodes() != h.num_nodes()) {
    throw std::invalid_argument(
        "embedding table covers " + std::to_string(eps->num_nodes()) +
        " nodes, expected " + std::to_string(h.num_nodes()));
  }
}

// The V-cycle proper, shared by direct mode and each bisection step.
PartitionReport direct_kway(const Hypergraph& h, const EmbeddingTable* eps,
                            const VCycleConfig& cfg) {
  PartitionReport report;
  report.config = cfg;
  const auto t_total = Clock::now();

  CoarseningConfig coarse_cfg = cfg.coarsening;
  if (coarse_cfg.weight_tolerance <= 0) {
    coarse_cfg.weight_tolerance = default_weight_tolerance(h, cfg.k);
  }
  if (coarse_cfg.stop_node_count <= 0) {
    coarse_cfg.stop_node_count = default_stop_node_count(cfg.k);
  }
  coarse_cfg.seed = derive_seed(cfg.seed, kSeedCoarsen);

  const EmbeddingTable no_embedding;
  const EmbeddingTable& eps_ref = eps != nullptr ? *eps : no_embedding;

  auto t_phase = Clock::now();
  const LevelHierarchy hierarchy = coarsen(h, eps_ref, coarse_cfg);
  report.timings.coarsen_ms = ms_since(t_phase);

  const Hypergraph& coarsest = hierarchy.coarsest(h);
  InitialConfig init_cfg = cfg.initial;
  init_cfg.seed = derive_seed(cfg.seed, kSeedInitial);

  t_phase = Clock::now();
  PartitionAssignment p;
  try {
    p = best_initial(coarsest, cfg.k, cfg.alpha, cfg.objective, init_cfg);
  } catch (const infeasible_error& e) {
    // Keep the least imbalanced attempt; refinement may still repair it,
    // and the report's feasible flag tells the caller either way.
    p = e.closest;
  }
  report.timings.initial_ms = ms_since(t_phase);

  t_phase = Clock::now();
  p = fm_refine(coarsest, std::move(p), cfg.alpha, cfg.objective,
                cfg.refinement_passes);
  for (std::size_t i = hierarchy.levels.size(); i-- > 0;) {
    const Hypergraph& fine = i == 0 ? h : hierarchy.levels[i - 1].coarse;
    p = project(p, hierarchy.levels[i].map, fine);
    p = fm_refine(fine, std::move(p), cfg.alpha, cfg.objective,
                  cfg.refinement_passes);
  }
  report.timings.refine_ms = ms_since(t_phase);

  report.assignment = std::move(p);
  report.objective_value =
      objective_value(h, report.assignment, cfg.objective);
  report.imbalance = imbalance_of(h, report.assignment);
  report.feasible = assignment_feasible(h, report.assignment, cfg.alpha);
  report.level_count = static_cast<int>(hierarchy.levels.size());
  report.timings.total_ms = ms_since(t_total);
  return report;
}

// One side of a bisection: nodes ascending, edges wholly inside, dense ids.
struct Side {
  Hypergraph graph{0, {}};
  EmbeddingTable eps;                // sliced rows; empty when unused
  std::vector<NodeId> to_parent;     // local id -> id in the parent graph
};

Side induced_side(const Hypergraph& h, const EmbeddingTable* eps,
                  const PartitionAssignment& p, PartId side_label) {
  Side side;
  std::vector<NodeId> local(h.num_nodes(), kNone);
  for (NodeId v = 0; v < h.num_nodes(); ++v) {
    if (p.label[v] != side_label) continue;
    local[v] = static_cast<NodeId>(side.to_parent.size());
    side.to_parent.push_back(v);
  }
  const NodeId count = static_cast<NodeId>(side.to_parent.size());

  std::vector<Weight> node_weights(count);
  for (NodeId i = 0; i < count; ++i) {
    node_weights[i] = h.node_weight(side.to_parent[i]);
  }

  std::vector<std::vector<NodeId>> pins;
  std::vector<Weight> edge_weights;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    bool inside = true;
    for (const NodeId v : h.pins(e)) {
      if (p.label[v] != side_label) {
        inside = false;
        break;
      }
    }
    if (!inside) continue;
    std::vector<NodeId> mapped;
    mapped.reserve(h.pins(e).size());
    for (const NodeId v : h.pins(e)) mapped.push_back(local[v]);
    pins.push_back(std::move(mapped));
    edge_weights.push_back(h.edge_weight(e));
  }
  side.graph = Hypergraph(count, pins, node_weights, edge_weights);

  if (eps != nullptr) {
    side.eps = EmbeddingTable(count, eps->dims);
    for (NodeId i = 0; i < count; ++i) {
      const auto row = eps->vec(side.to_parent[i]);
      std::copy(row.begin(), row.end(), side.eps.vec(i).begin());
    }
  }
  return side;
}

void accumulate(PhaseTimings& into, const PhaseTimings& from) {
  into.coarsen_ms += from.coarsen_ms;
  into.initial_ms += from.initial_ms;
  into.refine_ms += from.refine_ms;
}

// Assign parts [lo, hi) to the nodes of `sub`, writing through to_original.
void bisect_recurse(const Hypergraph& sub, const EmbeddingTable* eps,
                    const std::vector<NodeId>& to_original,
                    const VCycleConfig& cfg, std::uint64_t seed, PartId lo,
                    PartId hi, std::vector<PartId>& labels,
                    PhaseTimings& timings, int& level_total) {
  if (sub.num_nodes() == 0) return;
  const PartId span = hi - lo;
  if (span == 1) {
    for (NodeId v = 0; v < sub.num_nodes(); ++v) {
      labels[to_original[v]] = lo;
    }
    return;
  }
  if (sub.num_nodes() < span) {
    // Too few nodes for the remaining parts: spread them round-robin so as
    // many parts as possible stay occupied; the final feasibility flag
    // records the shortfall.
    for (NodeId v = 0; v < sub.num_nodes(); ++v) {
      labels[to_original[v]] = lo + static_cast<PartId>(v % span);
    }
    return;
  }

  VCycleConfig local = cfg;
  local.k = 2;
  local.seed = seed;
  local.mode = PartitionMode::direct_kway;
  const PartitionReport r = direct_kway(sub, eps, local);
  accumulate(timings, r.timings);
  level_total += r.level_count;

  const PartId mid = lo + span / 2;
  for (PartId s = 0; s < 2; ++s) {
    Side side = induced_side(sub, eps, r.assignment, s);
    std::vector<NodeId> child_to_original(side.to_parent.size());
    for (std::size_t i = 0; i < side.to_parent.size(); ++i) {
      child_to_original[i] = to_original[side.to_parent[i]];
    }
    const std::uint64_t child_seed =
        derive_seed(seed, s == 0 ? kSeedLeftChild : kSeedRightChild);
    bisect_recurse(side.graph, eps != nullptr ? &side.eps : nullptr,
                   child_to_original, cfg, child_seed,
                   s == 0 ? lo : mid, s == 0 ? mid : hi, labels, timings,
                   level_total);
  }
}

}  // namespace

const char* partition_mode_name(PartitionMode mode) {
  return mode == PartitionMode::direct_kway ? "direct-kway"
                                            : "recursive-bisection";
}

PartitionReport partition(const Hypergraph& h, const EmbeddingTable* eps,
                          const VCycleConfig& cfg) {
  validate_call(h, eps, cfg);
  if (cfg.mode == PartitionMode::recursive_bisection) {
    return recursive_bisect(h, eps, cfg);
  }
  return direct_kway(h, eps, cfg);
}

PartitionReport partition(const Hypergraph& h, const VCycleConfig& cfg) {
  return partition(h, nullptr, cfg);
}

PartitionReport recursive_bisect(const Hypergraph& h,
                                 const EmbeddingTable* eps,
                                 const VCycleConfig& cfg) {
  validate_call(h, eps, cfg);
  if ((cfg.k & (cfg.k - 1)) != 0) {
    throw std::invalid_argument("k must be a power of two");
  }

  PartitionReport report;
  report.config = cfg;
  const auto t_total = Clock::now();

  std::vector<PartId> labels(h.num_nodes(), 0);
  std::vector<NodeId> identity(h.num_nodes());
  for (NodeId v = 0; v < h.num_nodes(); ++v) identity[v] = v;

  int level_total = 0;
  bisect_recurse(h, eps, identity, cfg, cfg.seed, 0, cfg.k, labels,
                 report.timings, level_total);

  report.assignment =
      PartitionAssignment::from_labels(h, cfg.k, std::move(labels));
  report.objective_value =
      objective_value(h, report.assignment, cfg.objective);
  report.imbalance = imbalance_of(h, report.assignment);
  report.feasible = assignment_feasible(h, report.assignment, cfg.alpha);
  report.level_count = level_total;
  report.timings.total_ms = ms_since(t_total);
  return report;
}

std::string report_to_json(const PartitionReport& report) {
  const VCycleConfig& cfg = report.config;
  JsonWriter w;
  w.begin_object();
  w.key("k").value(cfg.k);
  w.key("objective").value(objective_name(cfg.objective));
  w.key("alpha").value(cfg.alpha);
  w.key("mode").value(partition_mode_name(cfg.mode));
  w.key("seed").value(cfg.seed);
  w.key("feasible").value(report.feasible);
  w.key("objective_value").value(report.objective_value);
  w.key("imbalance").value(report.imbalance);
  w.key("level_count").value(report.level_count);
  w.key("timings_ms").begin_object();
  w.key("coarsen").value(report.timings.coarsen_ms);
  w.key("initial").value(report.timings.initial_ms);
  w.key("refine").value(report.timings.refine_ms);
  w.key("total").value(report.timings.total_ms);
  w.end_object();
  w.key("coarsening").begin_object();
  w.key("mode").value(cfg.coarsening.mode == CoarseningMode::logn ? "logn"
                                                                  : "nlevel");
  w.key("scorer").value(cfg.coarsening.scorer == ScorerKind::embedding
                            ? "embedding"
                            : "heavy-edge");
  w.key("weight_tolerance").value(cfg.coarsening.weight_tolerance);
  w.key("stop_node_count").value(cfg.coarsening.stop_node_count);
  w.key("max_levels").value(cfg.coarsening.max_levels);
  w.end_object();
  w.key("initial_attempts").value(cfg.initial.attempts);
  w.key("refinement_passes").value(cfg.refinement_passes);
  w.key("partition").begin_array();
  for (const PartId part : report.assignment.label) w.value(part);
  w.end_array();
  w.end_object();
  return w.take();
}

}  // namespace starpart
