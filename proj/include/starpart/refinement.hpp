#pragma once

#include <cstddef>
#include <vector>

#include "starpart/hypergraph.hpp"
#include "starpart/partition_assignment.hpp"
#include "starpart/types.hpp"

namespace starpart {

// Local refinement applies at most this many passes unless told otherwise.
inline constexpr int kFmMaxPasses = 8;
// A pass is abandoned after this many consecutive tentative moves without a
// new best objective; the tail is rolled back as usual.
inline constexpr int kFmStallLimit = 350;

// Objective delta for every (node, target part) move, with zero recorded for
// a node's current part. Rebuilt from the assignment; never updated in place.
struct GainTable {
  PartId k = 0;
  std::vector<Weight> delta;  // node-major, k entries per node

  static GainTable build(const Hypergraph& h, const PartitionAssignment& p,
                         Objective objective);

  Weight gain(NodeId v, PartId target) const {
    return delta[static_cast<std::size_t>(v) * k + target];
  }
};

// Expand a coarse assignment onto the finer hypergraph: every fine node takes
// the label of its coarse image. Part weights and objectives carry over
// exactly because contraction preserves them.
PartitionAssignment project(const PartitionAssignment& coarse,
                            const ContractionMap& map, const Hypergraph& fine);

// Objective change caused by moving v to `target` (negative improves),
// computed from per-part pin counts on the edges of v. Zero when target is
// already v's part.
Weight move_gain(const Hypergraph& h, const PartitionAssignment& p, NodeId v,
                 PartId target, Objective objective);

// One refinement pass: tentatively apply best-gain moves that keep the
// balance bound and leave no part empty, locking each moved node, then roll
// back to the prefix with the lowest objective. Returns the achieved
// objective delta (always <= 0); p is updated in place.
Weight fm_pass(const Hypergraph& h, PartitionAssignment& p, double alpha,
               Objective objective);

// Repeat fm_pass until a pass yields no improvement or max_passes is
// reached. Never increases the objective and never breaks the balance bound
// the input satisfies.
PartitionAssignment fm_refine(const Hypergraph& h, PartitionAssignment p,
                              double alpha, Objective objective,
                              int max_passes = kFmMaxPasses);

}  // namespace starpart
