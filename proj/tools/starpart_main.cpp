// starpart command-line tool: format conversion, embedding training,
// partitioning, and benchmark runs over one binary.
//
// Exit codes: 0 success, 1 domain errors (unreadable or malformed files,
// infeasible results), 2 usage errors (bad flags or flag combinations).
// Diagnostics go to stderr; machine output goes to stdout or --out files.
#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "starpart/algebraic.hpp"
#include "starpart/bench.hpp"
#include "starpart/bipartite_embedding.hpp"
#include "starpart/coarsening.hpp"
#include "starpart/embedding.hpp"
#include "starpart/hypergraph.hpp"
#include "starpart/io.hpp"
#include "starpart/partitioner.hpp"
#include "starpart/rng.hpp"
#include "starpart/types.hpp"

namespace {

using namespace starpart;

// Raised for flag combinations the parser alone cannot reject.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Objective parse_objective(const std::string& name) {
  return name == "cut" ? Objective::cut : Objective::connectivity;
}

CoarseningMode parse_coarsening_mode(const std::string& name) {
  return name == "nlevel" ? CoarseningMode::nlevel : CoarseningMode::logn;
}

struct ConvertOptions {
  std::string from;
  std::string to;
  std::string in_path;
  std::string out_path;
  bool transpose = false;
};

int run_convert(const ConvertOptions& opt) {
  if (opt.transpose && opt.from != "mtx") {
    throw usage_error("--transpose applies to MatrixMarket input only");
  }
  const Hypergraph h = opt.from == "mtx"
                           ? load_matrix_market(opt.in_path, opt.transpose)
                           : load_hmetis(opt.in_path);
  if (opt.out_path.empty()) {
    if (opt.to == "mtx") {
      write_matrix_market(h, std::cout);
    } else {
      write_hmetis(h, std::cout);
    }
  } else if (opt.to == "mtx") {
    save_matrix_market(h, opt.out_path);
  } else {
    save_hmetis(h, opt.out_path);
  }
  return 0;
}

struct EmbedOptions {
  std::string hypergraph_path;
  std::string out_path;
  std::string method = "hobe";
  TrainConfig train;
  int restarts = kAlgebraicRestarts;
  int iterations = kAlgebraicIterations;
  std::uint64_t seed = 0;
};

int run_embed(const EmbedOptions& opt) {
  const Hypergraph h = load_hmetis(opt.hypergraph_path);
  const BipartiteGraph g = star_expand(h);
  EmbeddingTable table;
  if (opt.method == "hobe") {
    const AlgebraicSimilarity sim = algebraic_distance(
        g, opt.restarts, opt.iterations, derive_seed(opt.seed, 0));
    const SampleSet samples =
        hobe_scores(g, sim, opt.train.negatives_per_positive,
                    derive_seed(opt.seed, 1));
    table = hobe_train(samples, g, opt.train, derive_seed(opt.seed, 2));
  } else {
    const SampleSet samples = fobe_samples(
        g, opt.train.negatives_per_positive, derive_seed(opt.seed, 1));
    table = fobe_train(samples, g, opt.train, derive_seed(opt.seed, 2));
  }
  if (opt.out_path.empty()) {
    write_embedding(table, std::cout);
  } else {
    save_embedding(table, opt.out_path);
  }
  return 0;
}

struct PartitionOptions {
  std::string hypergraph_path;
  std::string embedding_path;
  std::string coarsener = "auto";  // embedding when --embedding given
  std::string objective = "km1";
  std::string mode = "logn";
  int k = 2;
  double imbalance = 0.03;
  int passes = kFmMaxPasses;
  std::uint64_t seed = 0;
  bool recursive = false;
  std::string out_path;
  std::string report_path;
};

int run_partition(const PartitionOptions& opt) {
  const bool use_embedding = opt.coarsener == "embedding" ||
                             (opt.coarsener == "auto" &&
                              !opt.embedding_path.empty());
  if (use_embedding && opt.embedding_path.empty()) {
    throw usage_error("--coarsener embedding requires --embedding FILE");
  }
  if (opt.recursive && (opt.k & (opt.k - 1)) != 0) {
    throw usage_error("--rb requires --k to be a power of two");
  }

  const Hypergraph h = load_hmetis(opt.hypergraph_path);
  EmbeddingTable eps;
  if (use_embedding) {
    eps = load_embedding(opt.embedding_path, h.num_nodes());
  }

  VCycleConfig cfg;
  cfg.k = opt.k;
  cfg.objective = parse_objective(opt.objective);
  cfg.alpha = opt.imbalance;
  cfg.seed = opt.seed;
  cfg.mode = opt.recursive ? PartitionMode::recursive_bisection
                           : PartitionMode::direct_kway;
  cfg.coarsening.mode = parse_coarsening_mode(opt.mode);
  cfg.coarsening.scorer =
      use_embedding ? ScorerKind::embedding : ScorerKind::heavy_edge;
  cfg.refinement_passes = opt.passes;

  const PartitionReport report =
      partition(h, use_embedding ? &eps : nullptr, cfg);

  if (opt.out_path.empty()) {
    write_partition_file(report.assignment.label, std::cout);
  } else {
    save_partition_file(report.assignment.label, opt.out_path);
  }
  if (!opt.report_path.empty()) {
    write_text_file(opt.report_path, report_to_json(report));
  }
  if (!report.feasible) {
    std::cerr << "partition is infeasible: imbalance " << report.imbalance
              << " exceeds the tolerance or a part is empty\n";
    return 1;
  }
  return 0;
}

struct BenchOptions {
  std::string hypergraph_path;
  std::string embedding_path;
  std::string graph_id;
  std::string objective = "km1";
  std::string mode = "logn";
  int k = 2;
  double imbalance = 0.03;
  int trials = kDefaultTrials;
  int jobs = 0;
  std::uint64_t seed = 0;
  std::string csv_path;
  std::string json_path;
};

// File stem, for default graph identifiers in the trial CSV.
std::string path_stem(const std::string& path) {
  const std::size_t slash = path.find_last_of('/');
  const std::size_t start = slash == std::string::npos ? 0 : slash + 1;
  const std::size_t dot = path.find_last_of('.');
  const std::size_t end =
      dot == std::string::npos || dot <= start ? path.size() : dot;
  return path.substr(start, end - start);
}

int run_bench(const BenchOptions& opt) {
#ifdef _OPENMP
  if (opt.jobs > 0) omp_set_num_threads(opt.jobs);
#endif
  const Hypergraph h = load_hmetis(opt.hypergraph_path);
  const std::string graph =
      opt.graph_id.empty() ? path_stem(opt.hypergraph_path) : opt.graph_id;

  VCycleConfig cfg;
  cfg.k = opt.k;
  cfg.objective = parse_objective(opt.objective);
  cfg.alpha = opt.imbalance;
  cfg.coarsening.mode = parse_coarsening_mode(opt.mode);

  cfg.coarsening.scorer = ScorerKind::heavy_edge;
  std::vector<TrialRecord> records =
      run_trials(h, nullptr, cfg, opt.trials, opt.seed, graph, "heavy-edge");

  std::vector<ImprovementReport> comparisons;
  if (!opt.embedding_path.empty()) {
    const EmbeddingTable eps =
        load_embedding(opt.embedding_path, h.num_nodes());
    cfg.coarsening.scorer = ScorerKind::embedding;
    const std::vector<TrialRecord> with_embedding =
        run_trials(h, &eps, cfg, opt.trials, opt.seed, graph, "embedding");
    comparisons.push_back(
        compare_trials(with_embedding, records));
    records.insert(records.end(), with_embedding.begin(),
                   with_embedding.end());
  }

  const BenchDocuments docs = emit_report(records, comparisons);
  if (opt.csv_path.empty()) {
    std::cout << docs.csv;
  } else {
    write_text_file(opt.csv_path, docs.csv);
  }
  if (!opt.json_path.empty()) {
    write_text_file(opt.json_path, docs.json);
  }
  return 0;
}

struct GenMixtureOptions {
  std::vector<std::string> components;
  double cross = 0.005;
  double noise = 0.005;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string params_path;
};

// Component syntax: NODESxEDGES or NODESxEDGESxMEAN, e.g. 1000x1500x4.0.
ComponentSpec parse_component(const std::string& text) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t x = text.find('x', start);
    fields.push_back(text.substr(start, x - start));
    if (x == std::string::npos) break;
    start = x + 1;
  }
  if (fields.size() != 2 && fields.size() != 3) {
    throw usage_error("component '" + text +
                      "' is not NODESxEDGES or NODESxEDGESxMEAN");
  }
  ComponentSpec spec;
  try {
    std::size_t used = 0;
    spec.nodes = std::stoi(fields[0], &used);
    if (used != fields[0].size()) throw std::invalid_argument(fields[0]);
    spec.edges = std::stoi(fields[1], &used);
    if (used != fields[1].size()) throw std::invalid_argument(fields[1]);
    if (fields.size() == 3) {
      spec.mean_edge_size = std::stod(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument(fields[2]);
    }
  } catch (const std::exception&) {
    throw usage_error("component '" + text +
                      "' is not NODESxEDGES or NODESxEDGESxMEAN");
  }
  return spec;
}

int run_gen_mixture(const GenMixtureOptions& opt) {
  MixtureSpec spec;
  for (const std::string& text : opt.components) {
    spec.components.push_back(parse_component(text));
  }
  spec.cross_fraction = opt.cross;
  spec.noise_fraction = opt.noise;

  const Hypergraph h = generate_mixture(spec, opt.seed);
  std::string params_path = opt.params_path;
  if (opt.out_path.empty()) {
    write_hmetis(h, std::cout);
  } else {
    save_hmetis(h, opt.out_path);
    if (params_path.empty()) params_path = opt.out_path + ".json";
  }
  if (!params_path.empty()) {
    write_text_file(params_path, mixture_to_json(spec, opt.seed));
  }
  return 0;
}

void add_partition_flags(CLI::App* cmd, PartitionOptions& opt, bool with_k) {
  cmd->add_option("--hypergraph", opt.hypergraph_path,
                  "input hypergraph (.hgr)")
      ->required();
  if (with_k) {
    cmd->add_option("--k", opt.k, "number of parts")
        ->check(CLI::Range(2, 1 << 20))
        ->capture_default_str();
  }
  cmd->add_option("--objective", opt.objective, "objective to minimize")
      ->check(CLI::IsMember({"cut", "km1"}))
      ->capture_default_str();
  cmd->add_option("--coarsener", opt.coarsener, "pair scorer for coarsening")
      ->check(CLI::IsMember({"heavy-edge", "embedding"}));
  cmd->add_option("--embedding", opt.embedding_path,
                  "node embedding file for the embedding coarsener");
  cmd->add_option("--imbalance", opt.imbalance, "balance tolerance")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--mode", opt.mode, "coarsening schedule")
      ->check(CLI::IsMember({"logn", "nlevel"}))
      ->capture_default_str();
  cmd->add_option("--passes", opt.passes, "refinement pass cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", opt.seed, "random seed")->capture_default_str();
  cmd->add_option("--out", opt.out_path,
                  "partition file (one part id per line); stdout if omitted");
  cmd->add_option("--report", opt.report_path, "JSON run report file");
  if (with_k) {
    CLI::Option* kway =
        cmd->add_flag("--kway", "direct k-way partitioning (default)");
    cmd->add_flag("--rb", opt.recursive, "recursive bisection")
        ->excludes(kway);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multilevel hypergraph partitioner with embedding-based "
               "coarsening"};
  app.require_subcommand(1);

  ConvertOptions convert_opt;
  CLI::App* convert_cmd =
      app.add_subcommand("convert", "convert between hypergraph formats");
  convert_cmd->add_option("--from", convert_opt.from, "input format")
      ->check(CLI::IsMember({"hgr", "mtx"}))
      ->required();
  convert_cmd->add_option("--to", convert_opt.to, "output format")
      ->check(CLI::IsMember({"hgr", "mtx"}))
      ->required();
  convert_cmd->add_option("--in", convert_opt.in_path, "input file")
      ->required();
  convert_cmd->add_option("--out", convert_opt.out_path,
                          "output file; stdout if omitted");
  convert_cmd->add_flag("--transpose", convert_opt.transpose,
                        "swap rows and columns of MatrixMarket input");

  EmbedOptions embed_opt;
  CLI::App* embed_cmd =
      app.add_subcommand("embed", "train node embeddings for coarsening");
  embed_cmd->add_option("--hypergraph", embed_opt.hypergraph_path,
                        "input hypergraph (.hgr)")
      ->required();
  embed_cmd->add_option("--method", embed_opt.method, "embedding trainer")
      ->check(CLI::IsMember({"fobe", "hobe"}))
      ->capture_default_str();
  embed_cmd->add_option("--dims", embed_opt.train.dims, "embedding dimensions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  embed_cmd->add_option("--epochs", embed_opt.train.epochs, "training epochs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  embed_cmd
      ->add_option("--learning-rate", embed_opt.train.learning_rate,
                   "SGD step size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  embed_cmd
      ->add_option("--negatives", embed_opt.train.negatives_per_positive,
                   "negative samples per positive")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  embed_cmd
      ->add_option("--restarts", embed_opt.restarts,
                   "algebraic-distance restarts (hobe)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  embed_cmd
      ->add_option("--iterations", embed_opt.iterations,
                   "algebraic-distance sweeps (hobe)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  embed_cmd->add_option("--seed", embed_opt.seed, "random seed")
      ->capture_default_str();
  embed_cmd->add_option("--out", embed_opt.out_path,
                        "embedding file; stdout if omitted");

  PartitionOptions partition_opt;
  CLI::App* partition_cmd =
      app.add_subcommand("partition", "partition a hypergraph into k parts");
  add_partition_flags(partition_cmd, partition_opt, /*with_k=*/true);

  PartitionOptions bisect_opt;
  CLI::App* bisect_cmd =
      app.add_subcommand("bisect", "split a hypergraph into two parts");
  add_partition_flags(bisect_cmd, bisect_opt, /*with_k=*/false);

  BenchOptions bench_opt;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "run repeated partition trials and compare coarseners");
  bench_cmd->add_option("--hypergraph", bench_opt.hypergraph_path,
                        "input hypergraph (.hgr)")
      ->required();
  bench_cmd->add_option("--embedding", bench_opt.embedding_path,
                        "embedding file; adds an embedding-coarsener config");
  bench_cmd->add_option("--graph", bench_opt.graph_id,
                        "graph id in the CSV; file stem if omitted");
  bench_cmd->add_option("--k", bench_opt.k, "number of parts")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  bench_cmd->add_option("--objective", bench_opt.objective,
                        "objective to minimize")
      ->check(CLI::IsMember({"cut", "km1"}))
      ->capture_default_str();
  bench_cmd->add_option("--imbalance", bench_opt.imbalance,
                        "balance tolerance")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  bench_cmd->add_option("--mode", bench_opt.mode, "coarsening schedule")
      ->check(CLI::IsMember({"logn", "nlevel"}))
      ->capture_default_str();
  bench_cmd->add_option("--trials", bench_opt.trials, "trials per config")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--jobs", bench_opt.jobs,
                        "worker threads for the trial pool")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_opt.seed, "master seed")
      ->capture_default_str();
  bench_cmd->add_option("--csv", bench_opt.csv_path,
                        "trial CSV file; stdout if omitted");
  bench_cmd->add_option("--json", bench_opt.json_path,
                        "comparison JSON file");

  GenMixtureOptions mixture_opt;
  CLI::App* mixture_cmd = app.add_subcommand(
      "gen-mixture", "generate a planted-component benchmark hypergraph");
  mixture_cmd
      ->add_option("--component", mixture_opt.components,
                   "component as NODESxEDGES or NODESxEDGESxMEAN; repeatable")
      ->required();
  mixture_cmd
      ->add_option("--cross", mixture_opt.cross,
                   "cross-edge fraction of the component edge total")
      ->capture_default_str();
  mixture_cmd
      ->add_option("--noise", mixture_opt.noise,
                   "noise-edge fraction of the component edge total")
      ->capture_default_str();
  mixture_cmd->add_option("--seed", mixture_opt.seed, "random seed")
      ->capture_default_str();
  mixture_cmd->add_option("--out", mixture_opt.out_path,
                          "hypergraph file; stdout if omitted");
  mixture_cmd->add_option(
      "--params-out", mixture_opt.params_path,
      "generator-parameter JSON; <out>.json when --out is given");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the error message
    return code == 0 ? 0 : 2;
  }

  try {
    if (*convert_cmd) return run_convert(convert_opt);
    if (*embed_cmd) return run_embed(embed_opt);
    if (*partition_cmd) return run_partition(partition_opt);
    if (*bisect_cmd) return run_partition(bisect_opt);
    if (*bench_cmd) return run_bench(bench_opt);
    if (*mixture_cmd) return run_gen_mixture(mixture_opt);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n"
              << "run '" << app.get_name() << " --help' for usage\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
