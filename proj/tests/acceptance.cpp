// Release gate: nine end-to-end checks over the partitioning toolkit, each
// printing one [PASS]/[FAIL] line. The process exits nonzero if any check
// fails. Run with --only N to execute a single check while debugging.
//
// Thresholds and instance counts are pinned here on purpose: loosening them
// is a decision, not a refactor.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "reference.hpp"
#include "starpart/algebraic.hpp"
#include "starpart/bench.hpp"
#include "starpart/bipartite_embedding.hpp"
#include "starpart/coarsening.hpp"
#include "starpart/embedding.hpp"
#include "starpart/hypergraph.hpp"
#include "starpart/initial_partition.hpp"
#include "starpart/io.hpp"
#include "starpart/partition_assignment.hpp"
#include "starpart/partitioner.hpp"
#include "starpart/refinement.hpp"
#include "starpart/rng.hpp"

using namespace starpart;

namespace {

// ---------------------------------------------------------------------------
// 1. Cut and connectivity agree on every two-way assignment.

bool check_objective_identity() {
  Rng rng(1001);
  for (int round = 0; round < 200; ++round) {
    const NodeId n = 4 + (NodeId)rng.below(47);
    const Hypergraph h = testref::random_hypergraph(
        rng, n, (EdgeId)(n + rng.below(n + 1)), 5, 3, 4);
    const std::vector<PartId> labels = testref::random_labels(rng, n, 2);
    const PartitionAssignment p = PartitionAssignment::from_labels(h, 2, labels);
    if (weighted_cut(h, p) != weighted_connectivity(h, p)) {
      std::printf("  instance %d: cut %lld != connectivity %lld\n", round,
                  (long long)weighted_cut(h, p),
                  (long long)weighted_connectivity(h, p));
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 2. Contraction preserves both objectives under label projection.

bool check_contraction_preserves_objectives() {
  Rng rng(2002);
  for (int round = 0; round < 200; ++round) {
    const NodeId n = 4 + (NodeId)rng.below(37);
    const Hypergraph h = testref::random_hypergraph(
        rng, n, (EdgeId)(n + rng.below(2 * n)), 5, 2, 4);
    const Matching m = testref::random_matching(rng, n);
    const ContractionResult c = contract(h, m);

    const PartId k = 2 + (PartId)rng.below(3);
    const std::vector<PartId> coarse_labels =
        testref::random_labels(rng, c.coarse.num_nodes(), k);
    std::vector<PartId> fine_labels(n);
    for (NodeId v = 0; v < n; ++v) fine_labels[v] = coarse_labels[c.map[v]];

    const PartitionAssignment coarse =
        PartitionAssignment::from_labels(c.coarse, k, coarse_labels);
    const PartitionAssignment fine =
        PartitionAssignment::from_labels(h, k, fine_labels);
    if (weighted_cut(c.coarse, coarse) != weighted_cut(h, fine) ||
        weighted_connectivity(c.coarse, coarse) !=
            weighted_connectivity(h, fine)) {
      std::printf("  instance %d: objectives drift under contraction\n", round);
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 3. The pipeline stays close to the exhaustive two-way optimum.

bool check_brute_force_oracle() {
  constexpr double kRatioLimit = 1.5;
  constexpr int kInstances = 50;
  constexpr int kNeeded = 45;  // 90 percent
  constexpr double kAlpha = 0.1;

  Rng rng(3003);
  int within_ratio = 0;
  for (int round = 0; round < kInstances; ++round) {
    const NodeId n = 6 + (NodeId)rng.below(7);  // 6..12 nodes
    const Hypergraph h = testref::random_hypergraph(
        rng, n, (EdgeId)(n + rng.below(n + 1)), 4, 1, 3);

    Weight best = -1;
    std::vector<PartId> labels(n);
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
      for (NodeId v = 0; v < n; ++v) labels[v] = (mask >> v) & 1u;
      const PartitionAssignment p =
          PartitionAssignment::from_labels(h, 2, labels);
      if (!assignment_feasible(h, p, kAlpha)) continue;
      const Weight value = weighted_connectivity(h, p);
      if (best < 0 || value < best) best = value;
    }
    if (best < 0) {
      std::printf("  instance %d: no feasible two-way split exists\n", round);
      return false;
    }

    VCycleConfig cfg;
    cfg.k = 2;
    cfg.alpha = kAlpha;
    cfg.seed = 9000 + round;
    cfg.coarsening.scorer = ScorerKind::heavy_edge;
    const PartitionReport report = partition(h, cfg);
    if (!report.feasible) {
      std::printf("  instance %d: pipeline result infeasible\n", round);
      continue;  // counts against the ratio quota
    }
    if (report.objective_value < best) {
      std::printf("  instance %d: pipeline %lld beats the optimum %lld\n",
                  round, (long long)report.objective_value, (long long)best);
      return false;
    }
    const bool ok = best == 0 ? report.objective_value == 0
                              : report.objective_value <= kRatioLimit * best;
    within_ratio += ok;
  }
  std::printf("  within %.1fx of the optimum on %d/%d (need %d)\n", kRatioLimit,
              within_ratio, kInstances, kNeeded);
  return within_ratio >= kNeeded;
}

// ---------------------------------------------------------------------------
// 4. Refinement never worsens the objective or breaks balance.

bool check_refinement_monotone() {
  constexpr double kAlpha = 0.25;
  Rng rng(4004);
  int rounds = 0;
  while (rounds < 200) {
    const NodeId n = 6 + (NodeId)rng.below(35);
    const Hypergraph h = testref::random_hypergraph(
        rng, n, (EdgeId)(n + rng.below(n + 1)), 5, 2, 3);
    const PartId k = 2 + (PartId)rng.below(3);
    const PartitionAssignment start =
        random_balanced(h, k, kAlpha, rng.next());
    if (!assignment_feasible(h, start, kAlpha)) continue;
    ++rounds;

    const Objective objective =
        rounds % 2 == 0 ? Objective::cut : Objective::connectivity;
    const PartitionAssignment refined =
        fm_refine(h, start, kAlpha, objective);
    if (objective_value(h, refined, objective) >
        objective_value(h, start, objective)) {
      std::printf("  round %d: refinement worsened the objective\n", rounds);
      return false;
    }
    if (!check_balance(h, refined, kAlpha)) {
      std::printf("  round %d: refinement broke the balance bound\n", rounds);
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 5. Embedding-guided coarsening vs heavy-edge on planted mixtures.

EmbeddingTable train_mixture_embedding(const Hypergraph& h,
                                       std::uint64_t seed) {
  const BipartiteGraph g = star_expand(h);
  const AlgebraicSimilarity sim =
      algebraic_distance(g, kAlgebraicRestarts, kAlgebraicIterations,
                         derive_seed(seed, 0));
  TrainConfig config;
  config.dims = 100;
  config.epochs = 30;
  const SampleSet samples = hobe_scores(
      g, sim, config.negatives_per_positive, derive_seed(seed, 1));
  return hobe_train(samples, g, config, derive_seed(seed, 2));
}

bool check_mixture_improvement() {
  constexpr double kMeanThreshold = 1.05;
  constexpr int kMeanNeeded = 10;
  constexpr double kStdThreshold = 1.0;
  constexpr int kStdNeeded = 8;
  constexpr int kTrials = 20;
  constexpr std::uint64_t kTrialSeed = 7;

  struct MixtureCase {
    const char* name;
    int components;
    int nodes;
    int edges;
    double mean_edge_size;
    double noise;
    std::uint64_t seed;
  };
  // Planted clusters with faint wide edges; two noise levels. Cross edges
  // are two-pin and score highest under the shared-edge rating, so they are
  // exactly the contractions a structure-blind coarsener favors.
  const MixtureCase cases[] = {
      {"m16a", 16, 125, 60, 7.0, 0.005, 101},
      {"m16b", 16, 125, 60, 7.0, 0.02, 102},
      {"m8a", 8, 250, 120, 7.0, 0.005, 103},
      {"m8b", 8, 250, 120, 7.0, 0.02, 104},
      {"m10", 10, 200, 100, 7.0, 0.005, 105},
  };
  const PartId ks[] = {2, 4, 8};

  int mean_passes = 0;
  int std_passes = 0;
  for (const MixtureCase& mc : cases) {
    MixtureSpec spec;
    for (int i = 0; i < mc.components; ++i) {
      spec.components.push_back({mc.nodes, mc.edges, mc.mean_edge_size});
    }
    spec.cross_fraction = 0.02;
    spec.noise_fraction = mc.noise;
    const Hypergraph h = generate_mixture(spec, mc.seed);
    const EmbeddingTable eps = train_mixture_embedding(h, mc.seed);

    for (const PartId k : ks) {
      VCycleConfig cfg;
      cfg.k = k;
      cfg.objective = Objective::connectivity;
      cfg.alpha = 0.03;
      cfg.coarsening.scorer = ScorerKind::heavy_edge;
      const std::vector<TrialRecord> base =
          run_trials(h, nullptr, cfg, kTrials, kTrialSeed, mc.name, "he");
      cfg.coarsening.scorer = ScorerKind::embedding;
      const std::vector<TrialRecord> emb =
          run_trials(h, &eps, cfg, kTrials, kTrialSeed, mc.name, "emb");

      std::vector<Weight> base_values, emb_values;
      for (const TrialRecord& t : base) base_values.push_back(t.objective_value);
      for (const TrialRecord& t : emb) emb_values.push_back(t.objective_value);
      const double mean_ratio =
          improvement(emb_values, base_values, SummaryStat::mean);
      const double std_ratio =
          improvement(emb_values, base_values, SummaryStat::std_dev);
      const bool mean_ok =
          std::isinf(mean_ratio) || mean_ratio >= kMeanThreshold;
      const bool std_ok = std::isinf(std_ratio) || std_ratio >= kStdThreshold;
      mean_passes += mean_ok;
      std_passes += std_ok;
      std::printf("  %-5s k=%d  I(mean)=%-8.3f I(std)=%-8.3f %s%s\n", mc.name,
                  (int)k, mean_ratio, std_ratio, mean_ok ? "M" : "-",
                  std_ok ? "S" : "-");
    }
  }
  std::printf("  mean ratio >= %.2f on %d/15 (need %d); "
              "std ratio >= %.2f on %d/15 (need %d)\n",
              kMeanThreshold, mean_passes, kMeanNeeded, kStdThreshold,
              std_passes, kStdNeeded);
  return mean_passes >= kMeanNeeded && std_passes >= kStdNeeded;
}

// ---------------------------------------------------------------------------
// 6. Analytic pair-loss gradients match central finite differences.

bool check_loss_gradients() {
  constexpr double kRelLimit = 1e-4;
  constexpr double kStep = 1e-5;
  constexpr double kHingeMargin = 0.05;
  constexpr int kDims = 8;

  Rng rng(6006);
  for (const bool higher_order : {false, true}) {
    int probes = 0;
    while (probes < 100) {
      std::vector<double> u(kDims), v(kDims);
      for (double& x : u) x = rng.uniform(-1.0, 1.0);
      for (double& x : v) x = rng.uniform(-1.0, 1.0);
      double z = 0.0;
      for (int i = 0; i < kDims; ++i) z += u[i] * v[i];
      if (higher_order && std::fabs(z) < kHingeMargin) continue;

      const double target =
          probes % 3 == 0 ? (double)rng.below(2) : rng.uniform(0.0, 1.0);
      const int coord = (int)rng.below(kDims);
      if (std::fabs(v[coord]) < 0.1) continue;
      ++probes;

      const auto loss = [&](double ui) {
        const double zz = z + (ui - u[coord]) * v[coord];
        return higher_order ? hobe_pair_loss(zz, target)
                            : fobe_pair_loss(zz, target);
      };
      const double numeric =
          (loss(u[coord] + kStep) - loss(u[coord] - kStep)) / (2.0 * kStep);
      const double dldz = higher_order ? hobe_pair_dldz(z, target)
                                       : fobe_pair_dldz(z, target);
      const double analytic = dldz * v[coord];
      const double scale =
          std::max({1e-6, std::fabs(numeric), std::fabs(analytic)});
      if (std::fabs(numeric - analytic) / scale >= kRelLimit) {
        std::printf("  %s probe %d: analytic %.8g vs numeric %.8g\n",
                    higher_order ? "higher-order" : "first-order", probes,
                    analytic, numeric);
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 7. Relaxation coordinates stay inside their initial range.

bool check_algebraic_confinement() {
  constexpr int kRestarts = 10;
  constexpr int kIterations = 20;

  Rng rng(7007);
  for (int round = 0; round < 50; ++round) {
    const NodeId n = 10 + (NodeId)rng.below(51);
    const Hypergraph h = testref::random_hypergraph(
        rng, n, (EdgeId)(2 * n), 5, 1, 1);
    const BipartiteGraph g = star_expand(h);
    const AlgebraicCoordinates init =
        algebraic_init(g.total_vertices(), kRestarts, rng.next());
    for (int r = 0; r < kRestarts; ++r) {
      std::vector<double> from = init.coords[r];
      std::vector<double> to(from.size());
      for (int iter = 0; iter < kIterations; ++iter) {
        algebraic_sweep(g, from, to);
        for (const double x : to) {
          if (x < init.init_min[r] || x > init.init_max[r]) {
            std::printf(
                "  graph %d restart %d iteration %d: %.17g leaves "
                "[%.17g, %.17g]\n",
                round, r, iter, x, init.init_min[r], init.init_max[r]);
            return false;
          }
        }
        std::swap(from, to);
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 8. Fixed seeds reproduce outputs; scaling embeddings changes nothing.

bool check_determinism_and_scaling() {
  constexpr double kScale = 7.3;

  Rng rng(8008);
  for (int round = 0; round < 3; ++round) {
    MixtureSpec spec;
    for (int i = 0; i < 6; ++i) spec.components.push_back({80, 90, 3.0});
    spec.noise_fraction = 0.01;
    const Hypergraph h = generate_mixture(spec, 500 + round);

    EmbeddingTable eps(h.num_nodes(), 12);
    for (double& x : eps.values) x = rng.uniform(-1.0, 1.0);
    EmbeddingTable scaled = eps;
    for (double& x : scaled.values) x *= kScale;

    CoarseningConfig cc;
    cc.scorer = ScorerKind::embedding;
    cc.seed = 31 + round;
    cc.weight_tolerance = default_weight_tolerance(h, 2);
    cc.stop_node_count = default_stop_node_count(2);
    if (!(match_level(h, eps, cc) == match_level(h, scaled, cc))) {
      std::printf("  graph %d: matching changed under scaling\n", round);
      return false;
    }

    VCycleConfig cfg;
    cfg.k = 4;
    cfg.seed = 77 + round;
    const PartitionReport a = partition(h, &eps, cfg);
    const PartitionReport b = partition(h, &eps, cfg);
    std::ostringstream out_a, out_b;
    write_partition_file(a.assignment.label, out_a);
    write_partition_file(b.assignment.label, out_b);
    if (out_a.str() != out_b.str() ||
        a.objective_value != b.objective_value) {
      std::printf("  graph %d: repeated run differs\n", round);
      return false;
    }
    const PartitionReport c = partition(h, &scaled, cfg);
    if (!(c.assignment == a.assignment)) {
      std::printf("  graph %d: assignment changed under scaling\n", round);
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 9. Writers and readers round-trip byte for byte.

bool check_format_round_trips() {
  Rng rng(9009);
  for (int round = 0; round < 50; ++round) {
    const NodeId n = 2 + (NodeId)rng.below(40);
    const Hypergraph h = testref::random_hypergraph(
        rng, n, (EdgeId)(1 + rng.below(2 * n)), 5, round % 2 ? 3 : 1,
        round % 3 ? 4 : 1);

    std::ostringstream hgr1;
    write_hmetis(h, hgr1);
    std::istringstream hgr_in(hgr1.str());
    std::ostringstream hgr2;
    write_hmetis(read_hmetis(hgr_in), hgr2);
    if (hgr1.str() != hgr2.str()) {
      std::printf("  instance %d: hgr bytes drift\n", round);
      return false;
    }

    std::ostringstream mtx1;
    write_matrix_market(h, mtx1);
    std::istringstream mtx_in(mtx1.str());
    std::ostringstream mtx2;
    write_matrix_market(read_matrix_market(mtx_in), mtx2);
    if (mtx1.str() != mtx2.str()) {
      std::printf("  instance %d: mtx bytes drift\n", round);
      return false;
    }

    EmbeddingTable eps(n, 1 + (int)rng.below(6));
    for (double& x : eps.values) x = rng.uniform(-2.0, 2.0);
    std::ostringstream emb1;
    write_embedding(eps, emb1);
    std::istringstream emb_in(emb1.str());
    std::ostringstream emb2;
    write_embedding(read_embedding(emb_in), emb2);
    if (emb1.str() != emb2.str()) {
      std::printf("  instance %d: embedding bytes drift\n", round);
      return false;
    }

    const std::vector<PartId> labels =
        testref::random_labels(rng, n, 1 + (PartId)rng.below(5));
    std::ostringstream part1;
    write_partition_file(labels, part1);
    std::istringstream part_in(part1.str());
    std::ostringstream part2;
    write_partition_file(read_partition_file(part_in), part2);
    if (part1.str() != part2.str()) {
      std::printf("  instance %d: partition bytes drift\n", round);
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

struct Check {
  int id;
  const char* name;
  bool (*fn)();
};

const Check kChecks[] = {
    {1, "cut equals connectivity on two-way assignments",
     check_objective_identity},
    {2, "contraction preserves projected objectives",
     check_contraction_preserves_objectives},
    {3, "pipeline tracks the exhaustive two-way optimum",
     check_brute_force_oracle},
    {4, "refinement is monotone and balance-safe", check_refinement_monotone},
    {5, "embedding coarsening improves planted mixtures",
     check_mixture_improvement},
    {6, "pair-loss gradients match finite differences", check_loss_gradients},
    {7, "relaxation coordinates stay confined", check_algebraic_confinement},
    {8, "fixed seeds and embedding scale leave results unchanged",
     check_determinism_and_scaling},
    {9, "file formats round-trip byte for byte", check_format_round_trips},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc == 3 && std::strcmp(argv[1], "--only") == 0) {
    only = std::atoi(argv[2]);
  } else if (argc != 1) {
    std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
    return 2;
  }

  int failures = 0;
  for (const Check& check : kChecks) {
    if (only != 0 && check.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    const bool ok = check.fn();
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    std::printf("[%s] %d/9 %s (%.1fs)\n", ok ? "PASS" : "FAIL", check.id,
                check.name, elapsed.count());
    std::fflush(stdout);
    failures += !ok;
  }
  if (failures > 0) std::printf("%d check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
