#pragma once

#include <cstdint>
#include <stdexcept>

#include "starpart/hypergraph.hpp"
#include "starpart/partition_assignment.hpp"
#include "starpart/types.hpp"

namespace starpart {

struct InitialConfig {
  int attempts = 10;
  bool use_random = true;
  bool use_greedy_growth = true;
  std::uint64_t seed = 0;
};

// Raised when every initial attempt violates balance; carries the closest
// attempt so callers can proceed with a flagged result.
struct infeasible_error : std::runtime_error {
  PartitionAssignment closest;

  infeasible_error(const std::string& what, PartitionAssignment closest_)
      : std::runtime_error(what), closest(std::move(closest_)) {}
};

// Shuffles nodes and drops each into the lightest part whose balance bound
// still permits it; a node that fits nowhere lands in the lightest part
// anyway, leaving the result detectably infeasible.
PartitionAssignment random_balanced(const Hypergraph& h, PartId k, double alpha,
                                    std::uint64_t seed);

// Region growing: k random seed nodes, then the lightest growable part
// repeatedly absorbs the frontier node whose assignment raises connectivity
// the least (ties by ascending node id). Whatever remains is placed
// first-fit into the lightest part.
PartitionAssignment greedy_growth(const Hypergraph& h, PartId k, double alpha,
                                  std::uint64_t seed);

// Runs the configured strategies for the configured attempts, each with its
// own derived seed, and returns the feasible result with the smallest
// objective (earliest attempt wins ties). Throws infeasible_error when no
// attempt is feasible.
PartitionAssignment best_initial(const Hypergraph& h, PartId k, double alpha,
                                 Objective objective, const InitialConfig& cfg);

}  // namespace starpart
