#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "starpart/hypergraph.hpp"
#include "starpart/types.hpp"

namespace starpart {

// One real vector per node, stored flat. Immutable by convention once
// produced by a trainer or loader; shareable across threads.
struct EmbeddingTable {
  int dims = 0;
  std::vector<double> values;  // node-major, num_nodes() * dims entries

  EmbeddingTable() = default;
  EmbeddingTable(NodeId num_nodes, int dims_)
      : dims(dims_),
        values(static_cast<std::size_t>(num_nodes) * static_cast<std::size_t>(dims_),
               0.0) {}

  NodeId num_nodes() const {
    return dims == 0 ? 0 : static_cast<NodeId>(values.size() / dims);
  }
  std::span<const double> vec(NodeId v) const {
    return {values.data() + static_cast<std::size_t>(v) * dims,
            static_cast<std::size_t>(dims)};
  }
  std::span<double> vec(NodeId v) {
    return {values.data() + static_cast<std::size_t>(v) * dims,
            static_cast<std::size_t>(dims)};
  }
  double dot(NodeId u, NodeId v) const;

  bool operator==(const EmbeddingTable&) const = default;
};

// Text format: header "N dims", then N lines "node_id f_1 ... f_dims".
// The loader demands exactly the ids 0..N-1 (any order) and finite values;
// errors name the offending line. Passing expected_nodes >= 0 additionally
// requires the table to cover exactly that many nodes (for matching a table
// against a hypergraph). The writer emits ids ascending with
// 17-significant-digit floats, so a written table reloads exactly.
EmbeddingTable read_embedding(std::istream& in, const std::string& name = "<stream>",
                              NodeId expected_nodes = kNone);
EmbeddingTable load_embedding(const std::string& path, NodeId expected_nodes = kNone);
void write_embedding(const EmbeddingTable& table, std::ostream& out);
void save_embedding(const EmbeddingTable& table, const std::string& path);

// Coarse vectors as flat means over the original nodes each coarse node
// aggregates, from a cumulative map original-node -> coarse-node. Averaging
// always reaches back to the original table, never to intermediate-level
// averages, so unequal group sizes cannot skew the mean.
EmbeddingTable interpolate_coarse(const EmbeddingTable& original,
                                  const ContractionMap& cumulative_map,
                                  NodeId coarse_count);

}  // namespace starpart
