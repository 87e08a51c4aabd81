#include "starpart/partition_assignment.hpp"

#include <algorithm>
#include <stdexcept>

namespace starpart {

PartitionAssignment PartitionAssignment::from_labels(const Hypergraph& h, PartId k,
                                                     std::vector<PartId> labels) {
  if (labels.size() != static_cast<std::size_t>(h.num_nodes())) {
    throw std::invalid_argument("label array size mismatch");
  }
  PartitionAssignment p;
  p.k = k;
  p.label = std::move(labels);
  p.part_weight.assign(static_cast<std::size_t>(k), 0);
  for (NodeId v = 0; v < h.num_nodes(); ++v) {
    PartId part = p.label[v];
    if (part < 0 || part >= k) throw std::invalid_argument("label out of range");
    p.part_weight[part] += h.node_weight(v);
  }
  return p;
}

bool check_balance(const Hypergraph& h, const PartitionAssignment& p, double alpha) {
  const double bound = balance_bound(h, p.k, alpha);
  for (Weight w : p.part_weight) {
    if (static_cast<double>(w) > bound) return false;
  }
  return true;
}

bool assignment_feasible(const Hypergraph& h, const PartitionAssignment& p, double alpha) {
  if (!check_balance(h, p, alpha)) return false;
  return std::all_of(p.part_weight.begin(), p.part_weight.end(),
                     [](Weight w) { return w > 0; });
}

PartId lambda(const Hypergraph& h, const PartitionAssignment& p, EdgeId e) {
  thread_local std::vector<PartId> seen;
  seen.clear();
  for (NodeId v : h.pins(e)) {
    PartId part = p.label[v];
    if (std::find(seen.begin(), seen.end(), part) == seen.end()) seen.push_back(part);
  }
  return static_cast<PartId>(seen.size());
}

Weight weighted_cut(const Hypergraph& h, const PartitionAssignment& p) {
  Weight total = 0;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    if (lambda(h, p, e) > 1) total += h.edge_weight(e);
  }
  return total;
}

Weight weighted_connectivity(const Hypergraph& h, const PartitionAssignment& p) {
  Weight total = 0;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    total += static_cast<Weight>(lambda(h, p, e) - 1) * h.edge_weight(e);
  }
  return total;
}

Weight objective_value(const Hypergraph& h, const PartitionAssignment& p, Objective obj) {
  return obj == Objective::cut ? weighted_cut(h, p) : weighted_connectivity(h, p);
}

double imbalance_of(const Hypergraph& h, const PartitionAssignment& p) {
  const Weight ideal = ideal_part_weight(h, p.k);
  Weight heaviest = *std::max_element(p.part_weight.begin(), p.part_weight.end());
  return static_cast<double>(heaviest) / static_cast<double>(ideal) - 1.0;
}

}  // namespace starpart
