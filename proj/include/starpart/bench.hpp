#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "starpart/embedding.hpp"
#include "starpart/hypergraph.hpp"
#include "starpart/partitioner.hpp"
#include "starpart/types.hpp"

namespace starpart {

// Twenty seeded repetitions is the protocol default.
inline constexpr int kDefaultTrials = 20;

// One partitioning run inside a benchmark batch.
struct TrialRecord {
  std::string graph;   // hypergraph id
  std::string config;  // configuration id
  std::uint64_t seed = 0;
  Objective objective = Objective::connectivity;
  PartId k = 0;
  Weight objective_value = 0;
  bool feasible = false;
  double runtime_ms = 0.0;

  bool operator==(const TrialRecord&) const = default;
};

// Summary statistic G applied to a trial's objective values.
enum class SummaryStat { mean, min, max, std_dev };
inline constexpr std::array<SummaryStat, 4> kSummaryStats = {
    SummaryStat::mean, SummaryStat::min, SummaryStat::max,
    SummaryStat::std_dev};
const char* summary_stat_name(SummaryStat g);

double summary_stat(const std::vector<Weight>& values, SummaryStat g);

// I = G(baseline) / G(method); > 1 means the method beats the baseline.
// Conventions: G(method) = 0 with G(baseline) > 0 reports +infinity, and
// 0/0 reports exactly 1.
double improvement(const std::vector<Weight>& method,
                   const std::vector<Weight>& baseline, SummaryStat g);

// Arithmetic mean of the finite per-graph I values; infinite sentinels are
// excluded and counted. The finite values are summed in sorted order, so
// the result is invariant under permutations of the input.
struct MacroImprovement {
  double value = 1.0;
  std::size_t used = 0;      // finite values averaged
  std::size_t excluded = 0;  // infinite sentinels left out
};
MacroImprovement macro_improvement(const std::vector<double>& per_graph);

struct PerGraphImprovement {
  std::string graph;
  std::size_t method_trials = 0;
  std::size_t baseline_trials = 0;
  std::array<double, 4> by_stat{};  // indexed by SummaryStat order
};

// One method-vs-baseline comparison over a shared set of hypergraphs.
struct ImprovementReport {
  std::string method;
  std::string baseline;
  std::vector<PerGraphImprovement> per_graph;  // sorted by graph id
  std::array<MacroImprovement, 4> macro{};
};

// Group two record lists by hypergraph and compute I per graph plus the
// macro summary for every statistic. Each list must hold exactly one
// configuration, and both must cover the same graphs with the same k and
// objective.
ImprovementReport compare_trials(const std::vector<TrialRecord>& method,
                                 const std::vector<TrialRecord>& baseline);

// tau partitioning runs with per-trial seeds derived from the master seed;
// trial i records derive_seed(master_seed, i), so any row can be reproduced
// by a direct partition call with that seed. Infeasible outcomes are
// recorded and flagged, never dropped. Trials fan out across OpenMP
// threads; the record order is by trial index either way.
std::vector<TrialRecord> run_trials(const Hypergraph& h,
                                    const EmbeddingTable* eps,
                                    const VCycleConfig& cfg, int tau,
                                    std::uint64_t master_seed,
                                    const std::string& graph_id,
                                    const std::string& config_id);

// Synthetic mixture instance: independent random components laid out on
// consecutive node ranges, plus 2-pin cross edges between distinct
// components and uniformly random noise edges, each batch sized as a
// fraction of the total component edge count (llround).
struct ComponentSpec {
  NodeId nodes = 0;
  EdgeId edges = 0;
  double mean_edge_size = 4.0;  // sizes drawn uniformly from [2, 2*mean-2]
};

struct MixtureSpec {
  std::vector<ComponentSpec> components;
  double cross_fraction = 0.005;
  double noise_fraction = 0.005;
};

Hypergraph generate_mixture(const MixtureSpec& spec, std::uint64_t seed);

// Generator parameters as a JSON document, for keeping next to the
// generated instance.
std::string mixture_to_json(const MixtureSpec& spec, std::uint64_t seed);

// CSV of the records (canonically sorted by graph, config, seed) plus a
// JSON document of the comparisons. Both end with a newline; floats carry
// 17 significant digits.
struct BenchDocuments {
  std::string csv;
  std::string json;
};
BenchDocuments emit_report(std::vector<TrialRecord> records,
                           const std::vector<ImprovementReport>& comparisons);

std::vector<TrialRecord> read_trials_csv(std::istream& in,
                                         const std::string& name = "<stream>");
std::vector<TrialRecord> load_trials_csv(const std::string& path);

}  // namespace starpart
