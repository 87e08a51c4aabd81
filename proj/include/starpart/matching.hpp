#pragma once

#include <vector>

#include "starpart/types.hpp"

namespace starpart {

// Pairing array: partner[u] is the node matched with u, or kNone.
// Valid matchings are symmetric (partner[partner[u]] == u) and free of
// self-matches.
struct Matching {
  std::vector<NodeId> partner;

  explicit Matching(NodeId num_nodes = 0)
      : partner(static_cast<std::size_t>(num_nodes), kNone) {}

  bool matched(NodeId u) const { return partner[u] != kNone; }
  std::size_t pair_count() const {
    std::size_t c = 0;
    for (NodeId p : partner) c += p != kNone;
    return c / 2;
  }

  bool operator==(const Matching&) const = default;
};

}  // namespace starpart
