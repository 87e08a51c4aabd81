#pragma once

#include <span>
#include <vector>

#include "starpart/matching.hpp"
#include "starpart/types.hpp"

namespace starpart {

// Immutable dual incidence structure. Construction normalizes the input:
// pins are sorted and deduplicated within each edge, and edges with fewer
// than two distinct pins are dropped (they cannot contribute to any
// objective). Safe to share across concurrent readers.
class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(NodeId num_nodes, const std::vector<std::vector<NodeId>>& edge_pins,
             std::vector<Weight> node_weights = {},
             std::vector<Weight> edge_weights = {});

  NodeId num_nodes() const { return static_cast<NodeId>(node_weights_.size()); }
  EdgeId num_edges() const { return static_cast<EdgeId>(edge_weights_.size()); }

  std::span<const NodeId> pins(EdgeId e) const {
    return {pins_.data() + edge_offsets_[e], pins_.data() + edge_offsets_[e + 1]};
  }
  std::span<const EdgeId> edges_of(NodeId v) const {
    return {incident_.data() + node_offsets_[v], incident_.data() + node_offsets_[v + 1]};
  }
  NodeId edge_size(EdgeId e) const {
    return static_cast<NodeId>(edge_offsets_[e + 1] - edge_offsets_[e]);
  }
  NodeId degree(NodeId v) const {
    return static_cast<NodeId>(node_offsets_[v + 1] - node_offsets_[v]);
  }

  Weight node_weight(NodeId v) const { return node_weights_[v]; }
  Weight edge_weight(EdgeId e) const { return edge_weights_[e]; }
  Weight total_node_weight() const { return total_node_weight_; }
  std::size_t num_pins() const { return pins_.size(); }

  bool has_unit_weights() const;

  bool operator==(const Hypergraph& other) const;

 private:
  std::vector<std::size_t> edge_offsets_{0};
  std::vector<NodeId> pins_;
  std::vector<std::size_t> node_offsets_{0};
  std::vector<EdgeId> incident_;
  std::vector<Weight> node_weights_;
  std::vector<Weight> edge_weights_;
  Weight total_node_weight_ = 0;
};

// Star expansion: one vertex per node, one per hyperedge, an undirected
// edge for every pin. Vertices [0, left_count) are the original nodes,
// [left_count, left_count + right_count) the hyperedge vertices.
struct BipartiteGraph {
  NodeId left_count = 0;
  NodeId right_count = 0;
  std::vector<std::vector<NodeId>> adjacency;  // sorted neighbor lists

  NodeId total_vertices() const { return left_count + right_count; }
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency[v]; }
  std::size_t num_undirected_edges() const;
};

BipartiteGraph star_expand(const Hypergraph& h);

using ContractionMap = std::vector<NodeId>;

struct ContractionResult {
  Hypergraph coarse;
  ContractionMap map;  // fine node id -> coarse node id
};

// Contracts every matched pair into one coarse node (weights added).
// Edges are rewritten onto coarse ids; pins deduplicated, edges that fall
// to a single pin dropped, and edges with identical pin sets merged with
// summed weights. Throws std::invalid_argument on an invalid matching.
ContractionResult contract(const Hypergraph& h, const Matching& m);

}  // namespace starpart
