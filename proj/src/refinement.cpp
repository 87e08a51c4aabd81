#include "starpart/refinement.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

namespace starpart {
namespace {

// Pins-per-part table: counts_[e*k + p] holds how many pins of e sit in part
// p, and touched_[e] caches the number of nonzero entries in that row.
class PinCounts {
 public:
  PinCounts(const Hypergraph& h, const PartitionAssignment& p)
      : k_(p.k),
        counts_(static_cast<std::size_t>(h.num_edges()) * p.k, 0),
        touched_(h.num_edges(), 0) {
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
      int* row = row_ptr(e);
      for (const NodeId v : h.pins(e)) {
        if (row[p.label[v]]++ == 0) ++touched_[e];
      }
    }
  }

  int count(EdgeId e, PartId q) const { return row_ptr(e)[q]; }
  PartId touched(EdgeId e) const { return touched_[e]; }

  void apply_move(const Hypergraph& h, NodeId v, PartId from, PartId to) {
    for (const EdgeId e : h.edges_of(v)) {
      int* row = row_ptr(e);
      if (--row[from] == 0) --touched_[e];
      if (row[to]++ == 0) ++touched_[e];
    }
  }

 private:
  int* row_ptr(EdgeId e) { return counts_.data() + static_cast<std::size_t>(e) * k_; }
  const int* row_ptr(EdgeId e) const {
    return counts_.data() + static_cast<std::size_t>(e) * k_;
  }

  PartId k_;
  std::vector<int> counts_;
  std::vector<PartId> touched_;
};

// Objective delta for every possible target of v, written into row (size k);
// row[current part] ends up 0.
void move_deltas(const Hypergraph& h, const PinCounts& counts,
                 const PartitionAssignment& p, NodeId v, Objective objective,
                 std::span<Weight> row) {
  const PartId k = p.k;
  const PartId s = p.label[v];
  std::fill(row.begin(), row.end(), Weight{0});
  for (const EdgeId e : h.edges_of(v)) {
    const Weight w = h.edge_weight(e);
    const PartId lam = counts.touched(e);
    const int leaves = counts.count(e, s) == 1 ? 1 : 0;
    for (PartId t = 0; t < k; ++t) {
      if (t == s) continue;
      const PartId lam_after = lam - leaves + (counts.count(e, t) == 0 ? 1 : 0);
      if (objective == Objective::connectivity) {
        row[t] += w * (lam_after - lam);
      } else {
        row[t] += w * ((lam_after > 1 ? 1 : 0) - (lam > 1 ? 1 : 0));
      }
    }
  }
  row[s] = 0;
}

// Doubly linked bucket lists over move entries (entry id = v*k + target),
// indexed by integer improvement (= -objective delta). Improvements are
// bounded by the largest weighted degree, so the bucket range is
// [-offset, +offset].
struct BucketQueue {
  BucketQueue(std::size_t entries, Weight max_improvement)
      : head(2 * static_cast<std::size_t>(max_improvement) + 1, -1),
        nxt(entries, -1),
        prv(entries, -1),
        value(entries, 0),
        linked(entries, 0),
        offset(max_improvement) {}

  void insert(int entry, Weight improvement) {
    const std::ptrdiff_t b = static_cast<std::ptrdiff_t>(improvement + offset);
    const int old = head[b];
    head[b] = entry;
    nxt[entry] = old;
    prv[entry] = -1;
    if (old >= 0) prv[old] = entry;
    value[entry] = improvement;
    linked[entry] = 1;
    max_bucket = std::max(max_bucket, b);
  }

  void erase(int entry) {
    if (!linked[entry]) return;
    const std::ptrdiff_t b = static_cast<std::ptrdiff_t>(value[entry] + offset);
    if (prv[entry] >= 0) {
      nxt[prv[entry]] = nxt[entry];
    } else {
      head[b] = nxt[entry];
    }
    if (nxt[entry] >= 0) prv[nxt[entry]] = prv[entry];
    linked[entry] = 0;
  }

  std::vector<int> head;
  std::vector<int> nxt;
  std::vector<int> prv;
  std::vector<Weight> value;
  std::vector<char> linked;
  Weight offset;
  std::ptrdiff_t max_bucket = -1;
};

}  // namespace

GainTable GainTable::build(const Hypergraph& h, const PartitionAssignment& p,
                           Objective objective) {
  GainTable table;
  table.k = p.k;
  table.delta.assign(static_cast<std::size_t>(h.num_nodes()) * p.k, 0);
  const PinCounts counts(h, p);
  for (NodeId v = 0; v < h.num_nodes(); ++v) {
    move_deltas(h, counts, p, v, objective,
                std::span<Weight>(
                    table.delta.data() + static_cast<std::size_t>(v) * p.k,
                    static_cast<std::size_t>(p.k)));
  }
  return table;
}

PartitionAssignment project(const PartitionAssignment& coarse,
                            const ContractionMap& map, const Hypergraph& fine) {
  if (static_cast<NodeId>(map.size()) != fine.num_nodes()) {
    throw std::invalid_argument("contraction map size mismatch");
  }
  std::vector<PartId> labels(map.size());
  for (NodeId v = 0; v < fine.num_nodes(); ++v) {
    labels[v] = coarse.label[map[v]];
  }
  return PartitionAssignment::from_labels(fine, coarse.k, std::move(labels));
}

Weight move_gain(const Hypergraph& h, const PartitionAssignment& p, NodeId v,
                 PartId target, Objective objective) {
  const PartId s = p.label[v];
  if (target == s) return 0;
  std::vector<int> seen(p.k, 0);  // per-edge pin counts, cleared after each edge
  Weight delta = 0;
  for (const EdgeId e : h.edges_of(v)) {
    PartId lam = 0;
    for (const NodeId u : h.pins(e)) {
      if (seen[p.label[u]]++ == 0) ++lam;
    }
    const PartId lam_after =
        lam - (seen[s] == 1 ? 1 : 0) + (seen[target] == 0 ? 1 : 0);
    const Weight w = h.edge_weight(e);
    if (objective == Objective::connectivity) {
      delta += w * (lam_after - lam);
    } else {
      delta += w * ((lam_after > 1 ? 1 : 0) - (lam > 1 ? 1 : 0));
    }
    for (const NodeId u : h.pins(e)) seen[p.label[u]] = 0;
  }
  return delta;
}

Weight fm_pass(const Hypergraph& h, PartitionAssignment& p, double alpha,
               Objective objective) {
  const NodeId n = h.num_nodes();
  const PartId k = p.k;
  if (n == 0 || k < 2) return 0;

  PinCounts counts(h, p);
  Weight max_improvement = 1;
  for (NodeId v = 0; v < n; ++v) {
    Weight wd = 0;
    for (const EdgeId e : h.edges_of(v)) wd += h.edge_weight(e);
    max_improvement = std::max(max_improvement, wd);
  }

  BucketQueue queue(static_cast<std::size_t>(n) * k, max_improvement);
  std::vector<Weight> row(k);
  std::vector<char> locked(n, 0);

  const auto refresh_entries = [&](NodeId v) {
    move_deltas(h, counts, p, v, objective, row);
    for (PartId t = 0; t < k; ++t) {
      const int entry = static_cast<int>(static_cast<std::size_t>(v) * k + t);
      queue.erase(entry);
      if (t != p.label[v]) queue.insert(entry, -row[t]);
    }
  };
  for (NodeId v = 0; v < n; ++v) refresh_entries(v);

  const double bound = balance_bound(h, k, alpha);
  struct Move {
    NodeId v;
    PartId from;
    PartId to;
  };
  std::vector<Move> trail;
  Weight running = 0;  // objective delta relative to the input assignment
  Weight best = 0;
  std::size_t best_prefix = 0;
  int stall = 0;

  std::vector<NodeId> dirty;
  std::vector<char> dirty_mark(n, 0);

  while (stall < kFmStallLimit) {
    while (queue.max_bucket >= 0 && queue.head[queue.max_bucket] < 0) {
      --queue.max_bucket;
    }
    // Highest-improvement move that keeps the balance bound and leaves the
    // source part nonempty.
    int chosen = -1;
    for (std::ptrdiff_t b = queue.max_bucket; b >= 0 && chosen < 0; --b) {
      for (int entry = queue.head[b]; entry >= 0; entry = queue.nxt[entry]) {
        const NodeId v = static_cast<NodeId>(entry / k);
        const PartId t = static_cast<PartId>(entry % k);
        const Weight w = h.node_weight(v);
        if (p.part_weight[p.label[v]] - w < 1) continue;
        if (static_cast<double>(p.part_weight[t] + w) > bound) continue;
        chosen = entry;
        break;
      }
    }
    if (chosen < 0) break;

    const NodeId v = static_cast<NodeId>(chosen / k);
    const PartId t = static_cast<PartId>(chosen % k);
    const PartId s = p.label[v];
    const Weight delta = -queue.value[chosen];
    for (PartId q = 0; q < k; ++q) {
      queue.erase(static_cast<int>(static_cast<std::size_t>(v) * k + q));
    }
    locked[v] = 1;
    p.move(h, v, t);
    counts.apply_move(h, v, s, t);
    running += delta;
    trail.push_back({v, s, t});
    if (running < best) {
      best = running;
      best_prefix = trail.size();
      stall = 0;
    } else {
      ++stall;
    }

    dirty.clear();
    for (const EdgeId e : h.edges_of(v)) {
      for (const NodeId u : h.pins(e)) {
        if (u == v || locked[u] || dirty_mark[u]) continue;
        dirty_mark[u] = 1;
        dirty.push_back(u);
      }
    }
    for (const NodeId u : dirty) {
      dirty_mark[u] = 0;
      refresh_entries(u);
    }
  }

  // Undo the tail beyond the best prefix; the counters are not needed past
  // this point, so only the assignment is restored.
  while (trail.size() > best_prefix) {
    const Move m = trail.back();
    trail.pop_back();
    p.move(h, m.v, m.from);
  }
  return best;
}

PartitionAssignment fm_refine(const Hypergraph& h, PartitionAssignment p,
                              double alpha, Objective objective,
                              int max_passes) {
  if (max_passes < 1) {
    throw std::invalid_argument("max_passes must be >= 1");
  }
  for (int pass = 0; pass < max_passes; ++pass) {
    if (fm_pass(h, p, alpha, objective) == 0) break;
  }
  return p;
}

}  // namespace starpart
