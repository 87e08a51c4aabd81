#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "starpart/hypergraph.hpp"
#include "starpart/types.hpp"

namespace starpart {

// Mutable partition labels plus cached part weights. Owned by exactly one
// execution context at a time.
struct PartitionAssignment {
  PartId k = 0;
  std::vector<PartId> label;
  std::vector<Weight> part_weight;

  static PartitionAssignment from_labels(const Hypergraph& h, PartId k,
                                         std::vector<PartId> labels);

  void move(const Hypergraph& h, NodeId v, PartId to) {
    part_weight[label[v]] -= h.node_weight(v);
    part_weight[to] += h.node_weight(v);
    label[v] = to;
  }

  bool operator==(const PartitionAssignment&) const = default;
};

inline Weight ideal_part_weight(const Hypergraph& h, PartId k) {
  return (h.total_node_weight() + k - 1) / k;  // ceil
}

inline double balance_bound(const Hypergraph& h, PartId k, double alpha) {
  return (1.0 + alpha) * static_cast<double>(ideal_part_weight(h, k));
}

// True iff every part weight is within (1+alpha) * ceil(total/k).
bool check_balance(const Hypergraph& h, const PartitionAssignment& p, double alpha);

// Balanced and no part left empty.
bool assignment_feasible(const Hypergraph& h, const PartitionAssignment& p, double alpha);

// Number of distinct parts among the pins of e.
PartId lambda(const Hypergraph& h, const PartitionAssignment& p, EdgeId e);

Weight weighted_cut(const Hypergraph& h, const PartitionAssignment& p);
Weight weighted_connectivity(const Hypergraph& h, const PartitionAssignment& p);
Weight objective_value(const Hypergraph& h, const PartitionAssignment& p, Objective obj);

// max over parts of part_weight / ideal - 1; 0 for a perfectly even split.
double imbalance_of(const Hypergraph& h, const PartitionAssignment& p);

}  // namespace starpart
