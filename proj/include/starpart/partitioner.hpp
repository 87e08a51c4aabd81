#pragma once

#include <cstdint>
#include <string>

#include "starpart/coarsening.hpp"
#include "starpart/embedding.hpp"
#include "starpart/hypergraph.hpp"
#include "starpart/initial_partition.hpp"
#include "starpart/partition_assignment.hpp"
#include "starpart/refinement.hpp"
#include "starpart/types.hpp"

namespace starpart {

enum class PartitionMode {
  direct_kway,          // one V-cycle straight to k parts
  recursive_bisection,  // repeated 2-way cycles; k must be a power of two
};

const char* partition_mode_name(PartitionMode mode);

// Everything one partitioning call depends on. The top-level seed drives
// every phase: the seed fields inside the nested configs are overwritten
// with values derived from it, so two calls with equal configs and equal
// seeds are identical run to run.
struct VCycleConfig {
  PartId k = 2;
  Objective objective = Objective::connectivity;
  double alpha = 0.03;
  CoarseningConfig coarsening;
  InitialConfig initial;
  int refinement_passes = kFmMaxPasses;
  std::uint64_t seed = 0;
  PartitionMode mode = PartitionMode::direct_kway;
};

struct PhaseTimings {
  double coarsen_ms = 0.0;
  double initial_ms = 0.0;
  double refine_ms = 0.0;
  double total_ms = 0.0;
};

struct PartitionReport {
  PartitionAssignment assignment;
  Weight objective_value = 0;  // recomputed from the final assignment
  double imbalance = 0.0;
  bool feasible = false;  // balanced for the requested alpha, no empty part
  int level_count = 0;    // coarsening levels (summed over bisections)
  PhaseTimings timings;
  VCycleConfig config;  // echo of the configuration as passed in
};

// Full multilevel cycle: coarsen, solve the coarsest level with
// best_initial, then project and refine per level back to the original
// hypergraph. eps may be null for the heavy-edge scorer; the embedding
// scorer requires it. Dispatches to recursive_bisect when cfg.mode says so.
// An initial solution that cannot meet the balance bound is still refined
// and reported with feasible = false rather than thrown.
PartitionReport partition(const Hypergraph& h, const EmbeddingTable* eps,
                          const VCycleConfig& cfg);
PartitionReport partition(const Hypergraph& h, const VCycleConfig& cfg);

// Split into two parts, carve the hypergraph into the two induced sides
// (edges kept only when wholly inside one side; cut edges are already paid
// for), renumber each side densely with the embedding rows sliced the same
// way, and recurse until k parts exist. k must be a power of two.
PartitionReport recursive_bisect(const Hypergraph& h,
                                 const EmbeddingTable* eps,
                                 const VCycleConfig& cfg);

// Report as a JSON document with stable key order and a trailing newline.
std::string report_to_json(const PartitionReport& report);

}  // namespace starpart
