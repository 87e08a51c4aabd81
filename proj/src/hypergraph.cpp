#include "starpart/hypergraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace starpart {

Hypergraph::Hypergraph(NodeId num_nodes,
                       const std::vector<std::vector<NodeId>>& edge_pins,
                       std::vector<Weight> node_weights,
                       std::vector<Weight> edge_weights) {
  if (num_nodes < 0) throw std::invalid_argument("negative node count");
  if (node_weights.empty()) {
    node_weights.assign(static_cast<std::size_t>(num_nodes), 1);
  }
  if (edge_weights.empty()) {
    edge_weights.assign(edge_pins.size(), 1);
  }
  if (node_weights.size() != static_cast<std::size_t>(num_nodes) ||
      edge_weights.size() != edge_pins.size()) {
    throw std::invalid_argument("weight array size mismatch");
  }
  for (Weight w : node_weights) {
    if (w < 1) throw std::invalid_argument("node weight must be >= 1");
  }

  node_weights_ = std::move(node_weights);
  total_node_weight_ = 0;
  for (Weight w : node_weights_) total_node_weight_ += w;

  std::vector<NodeId> buf;
  for (std::size_t e = 0; e < edge_pins.size(); ++e) {
    if (edge_weights[e] < 1) throw std::invalid_argument("edge weight must be >= 1");
    buf.assign(edge_pins[e].begin(), edge_pins[e].end());
    for (NodeId v : buf) {
      if (v < 0 || v >= num_nodes) {
        throw std::out_of_range("pin " + std::to_string(v) + " out of range");
      }
    }
    std::sort(buf.begin(), buf.end());
    buf.erase(std::unique(buf.begin(), buf.end()), buf.end());
    if (buf.size() < 2) continue;  // contributes nothing to any objective
    pins_.insert(pins_.end(), buf.begin(), buf.end());
    edge_offsets_.push_back(pins_.size());
    edge_weights_.push_back(edge_weights[e]);
  }

  // dual incidence by counting sort over pins
  node_offsets_.assign(static_cast<std::size_t>(num_nodes) + 1, 0);
  for (NodeId v : pins_) ++node_offsets_[static_cast<std::size_t>(v) + 1];
  for (std::size_t v = 1; v < node_offsets_.size(); ++v) {
    node_offsets_[v] += node_offsets_[v - 1];
  }
  incident_.resize(pins_.size());
  std::vector<std::size_t> cursor(node_offsets_.begin(), node_offsets_.end() - 1);
  for (EdgeId e = 0; e < num_edges(); ++e) {
    for (NodeId v : pins(e)) incident_[cursor[v]++] = e;
  }
}

bool Hypergraph::has_unit_weights() const {
  auto unit = [](Weight w) { return w == 1; };
  return std::all_of(node_weights_.begin(), node_weights_.end(), unit) &&
         std::all_of(edge_weights_.begin(), edge_weights_.end(), unit);
}

bool Hypergraph::operator==(const Hypergraph& other) const {
  return edge_offsets_ == other.edge_offsets_ && pins_ == other.pins_ &&
         node_weights_ == other.node_weights_ && edge_weights_ == other.edge_weights_;
}

std::size_t BipartiteGraph::num_undirected_edges() const {
  std::size_t deg_sum = 0;
  for (const auto& nbrs : adjacency) deg_sum += nbrs.size();
  return deg_sum / 2;
}

BipartiteGraph star_expand(const Hypergraph& h) {
  BipartiteGraph g;
  g.left_count = h.num_nodes();
  g.right_count = h.num_edges();
  g.adjacency.resize(static_cast<std::size_t>(g.total_vertices()));
  for (NodeId v = 0; v < h.num_nodes(); ++v) {
    auto edges = h.edges_of(v);
    g.adjacency[v].reserve(edges.size());
    for (EdgeId e : edges) g.adjacency[v].push_back(g.left_count + e);
  }
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    auto pins = h.pins(e);
    g.adjacency[g.left_count + e].assign(pins.begin(), pins.end());
  }
  return g;
}

namespace {

struct PinSetHash {
  std::size_t operator()(const std::vector<NodeId>& pins) const {
    std::size_t seed = pins.size();
    for (NodeId v : pins) {
      seed ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    }
    return seed;
  }
};

void validate_matching(const Hypergraph& h, const Matching& m) {
  if (m.partner.size() != static_cast<std::size_t>(h.num_nodes())) {
    throw std::invalid_argument("matching size does not match hypergraph");
  }
  for (NodeId u = 0; u < h.num_nodes(); ++u) {
    NodeId p = m.partner[u];
    if (p == kNone) continue;
    if (p < 0 || p >= h.num_nodes()) {
      throw std::invalid_argument("matching references unknown node " + std::to_string(p));
    }
    if (p == u) throw std::invalid_argument("self-match on node " + std::to_string(u));
    if (m.partner[p] != u) {
      throw std::invalid_argument("matching not symmetric at node " + std::to_string(u));
    }
  }
}

}  // namespace

ContractionResult contract(const Hypergraph& h, const Matching& m) {
  validate_matching(h, m);

  ContractionMap map(static_cast<std::size_t>(h.num_nodes()), kNone);
  std::vector<Weight> coarse_weights;
  for (NodeId u = 0; u < h.num_nodes(); ++u) {
    NodeId p = m.partner[u];
    if (p != kNone && p < u) {
      map[u] = map[p];  // representative already placed
      coarse_weights[map[u]] += h.node_weight(u);
      continue;
    }
    map[u] = static_cast<NodeId>(coarse_weights.size());
    coarse_weights.push_back(h.node_weight(u));
  }

  std::vector<std::vector<NodeId>> coarse_pins;
  std::vector<Weight> coarse_edge_weights;
  std::unordered_map<std::vector<NodeId>, std::size_t, PinSetHash> seen;
  std::vector<NodeId> buf;
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    buf.clear();
    for (NodeId v : h.pins(e)) buf.push_back(map[v]);
    std::sort(buf.begin(), buf.end());
    buf.erase(std::unique(buf.begin(), buf.end()), buf.end());
    if (buf.size() < 2) continue;
    auto [it, inserted] = seen.try_emplace(buf, coarse_pins.size());
    if (inserted) {
      coarse_pins.push_back(buf);
      coarse_edge_weights.push_back(h.edge_weight(e));
    } else {
      coarse_edge_weights[it->second] += h.edge_weight(e);
    }
  }

  const NodeId coarse_count = static_cast<NodeId>(coarse_weights.size());
  Hypergraph coarse(coarse_count, coarse_pins, std::move(coarse_weights),
                    std::move(coarse_edge_weights));
  return {std::move(coarse), std::move(map)};
}

}  // namespace starpart
