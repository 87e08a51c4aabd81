#include "starpart/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <stdexcept>

#include "starpart/io.hpp"
#include "starpart/jsonw.hpp"
#include "starpart/rng.hpp"

namespace starpart {
namespace {

constexpr char kCsvHeader[] =
    "graph,config,seed,objective,k,objective_value,feasible,runtime_ms";

double stat_mean(const std::vector<Weight>& values) {
  double sum = 0.0;
  for (const Weight v : values) sum += static_cast<double>(v);
  return sum / static_cast<double>(values.size());
}

}  // namespace

const char* summary_stat_name(SummaryStat g) {
  switch (g) {
    case SummaryStat::mean: return "mean";
    case SummaryStat::min: return "min";
    case SummaryStat::max: return "max";
    case SummaryStat::std_dev: return "std";
  }
  return "?";
}

double summary_stat(const std::vector<Weight>& values, SummaryStat g) {
  if (values.empty()) {
    throw std::invalid_argument("trial list must not be empty");
  }
  switch (g) {
    case SummaryStat::mean:
      return stat_mean(values);
    case SummaryStat::min:
      return static_cast<double>(
          *std::min_element(values.begin(), values.end()));
    case SummaryStat::max:
      return static_cast<double>(
          *std::max_element(values.begin(), values.end()));
    case SummaryStat::std_dev: {
      const double mu = stat_mean(values);
      double acc = 0.0;
      for (const Weight v : values) {
        const double d = static_cast<double>(v) - mu;
        acc += d * d;
      }
      return std::sqrt(acc / static_cast<double>(values.size()));
    }
  }
  return 0.0;
}

double improvement(const std::vector<Weight>& method,
                   const std::vector<Weight>& baseline, SummaryStat g) {
  if (method.empty() || baseline.empty()) {
    throw std::invalid_argument("trial list must not be empty");
  }
  const double numerator = summary_stat(baseline, g);
  const double denominator = summary_stat(method, g);
  if (denominator == 0.0) {
    return numerator == 0.0 ? 1.0
                            : std::numeric_limits<double>::infinity();
  }
  return numerator / denominator;
}

MacroImprovement macro_improvement(const std::vector<double>& per_graph) {
  if (per_graph.empty()) {
    throw std::invalid_argument("macro improvement needs at least one value");
  }
  std::vector<double> finite;
  finite.reserve(per_graph.size());
  for (const double v : per_graph) {
    if (std::isfinite(v)) finite.push_back(v);
  }
  std::sort(finite.begin(), finite.end());
  MacroImprovement out;
  out.used = finite.size();
  out.excluded = per_graph.size() - finite.size();
  if (finite.empty()) {
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  double sum = 0.0;
  for (const double v : finite) sum += v;
  out.value = sum / static_cast<double>(finite.size());
  return out;
}

namespace {

// One trial list collapsed to per-graph objective vectors; rejects lists
// that mix configurations.
struct GroupedTrials {
  std::string config;
  PartId k = 0;
  Objective objective = Objective::connectivity;
  std::map<std::string, std::vector<Weight>> values;
};

GroupedTrials group_trials(const std::vector<TrialRecord>& records) {
  if (records.empty()) {
    throw std::invalid_argument("trial list must not be empty");
  }
  GroupedTrials g;
  g.config = records.front().config;
  g.k = records.front().k;
  g.objective = records.front().objective;
  for (const TrialRecord& r : records) {
    if (r.config != g.config || r.k != g.k || r.objective != g.objective) {
      throw std::invalid_argument("mixed configurations in one trial list");
    }
    g.values[r.graph].push_back(r.objective_value);
  }
  return g;
}

}  // namespace

ImprovementReport compare_trials(const std::vector<TrialRecord>& method,
                                 const std::vector<TrialRecord>& baseline) {
  const GroupedTrials m = group_trials(method);
  const GroupedTrials b = group_trials(baseline);
  if (m.k != b.k || m.objective != b.objective) {
    throw std::invalid_argument(
        "method and baseline disagree on k or objective");
  }
  if (m.values.size() != b.values.size()) {
    throw std::invalid_argument("trial lists cover different graphs");
  }

  ImprovementReport report;
  report.method = m.config;
  report.baseline = b.config;
  std::array<std::vector<double>, 4> columns;
  for (const auto& [graph, method_values] : m.values) {
    const auto found = b.values.find(graph);
    if (found == b.values.end()) {
      throw std::invalid_argument("trial lists cover different graphs");
    }
    PerGraphImprovement entry;
    entry.graph = graph;
    entry.method_trials = method_values.size();
    entry.baseline_trials = found->second.size();
    for (std::size_t i = 0; i < kSummaryStats.size(); ++i) {
      entry.by_stat[i] =
          improvement(method_values, found->second, kSummaryStats[i]);
      columns[i].push_back(entry.by_stat[i]);
    }
    report.per_graph.push_back(std::move(entry));
  }
  for (std::size_t i = 0; i < kSummaryStats.size(); ++i) {
    report.macro[i] = macro_improvement(columns[i]);
  }
  return report;
}

std::vector<TrialRecord> run_trials(const Hypergraph& h,
                                    const EmbeddingTable* eps,
                                    const VCycleConfig& cfg, int tau,
                                    std::uint64_t master_seed,
                                    const std::string& graph_id,
                                    const std::string& config_id) {
  if (tau < 1) throw std::invalid_argument("trial count must be >= 1");

  const auto one_trial = [&](int index) {
    VCycleConfig trial_cfg = cfg;
    trial_cfg.seed = derive_seed(master_seed, static_cast<std::uint64_t>(index));
    const PartitionReport r = partition(h, eps, trial_cfg);
    return TrialRecord{graph_id,         config_id,
                       trial_cfg.seed,   cfg.objective,
                       cfg.k,            r.objective_value,
                       r.feasible,       r.timings.total_ms};
  };

  std::vector<TrialRecord> records(static_cast<std::size_t>(tau));
  // The first trial runs serially so configuration errors surface as
  // exceptions instead of aborting inside the parallel region.
  records[0] = one_trial(0);
#pragma omp parallel for schedule(dynamic)
  for (int i = 1; i < tau; ++i) {
    records[static_cast<std::size_t>(i)] = one_trial(i);
  }
  return records;
}

namespace {

int max_component_edge_size(const ComponentSpec& c) {
  return static_cast<int>(std::llround(2.0 * c.mean_edge_size - 2.0));
}

// s distinct nodes drawn uniformly from [base, base + count).
std::vector<NodeId> draw_distinct(Rng& rng, NodeId base, NodeId count, int s) {
  std::vector<NodeId> picked;
  picked.reserve(static_cast<std::size_t>(s));
  while (static_cast<int>(picked.size()) < s) {
    const NodeId v = base + static_cast<NodeId>(rng.below(count));
    if (std::find(picked.begin(), picked.end(), v) == picked.end()) {
      picked.push_back(v);
    }
  }
  return picked;
}

}  // namespace

Hypergraph generate_mixture(const MixtureSpec& spec, std::uint64_t seed) {
  if (spec.components.empty()) {
    throw std::invalid_argument("mixture needs at least one component");
  }
  if (spec.cross_fraction < 0.0 || spec.cross_fraction > 1.0) {
    throw std::invalid_argument("cross fraction must be in [0, 1]");
  }
  if (spec.noise_fraction < 0.0 || spec.noise_fraction > 1.0) {
    throw std::invalid_argument("noise fraction must be in [0, 1]");
  }

  NodeId total_nodes = 0;
  EdgeId component_edges = 0;
  int global_max_size = 2;
  for (const ComponentSpec& c : spec.components) {
    if (c.nodes < 2) {
      throw std::invalid_argument("component needs at least 2 nodes");
    }
    if (c.edges < 0) {
      throw std::invalid_argument("component edge count must be >= 0");
    }
    if (c.mean_edge_size < 2.0) {
      throw std::invalid_argument("mean edge size must be >= 2");
    }
    const int max_size = max_component_edge_size(c);
    if (max_size > c.nodes) {
      throw std::invalid_argument("edge size exceeds component node count");
    }
    global_max_size = std::max(global_max_size, max_size);
    total_nodes += c.nodes;
    component_edges += c.edges;
  }

  const EdgeId cross_count = static_cast<EdgeId>(
      std::llround(spec.cross_fraction * static_cast<double>(component_edges)));
  const EdgeId noise_count = static_cast<EdgeId>(
      std::llround(spec.noise_fraction * static_cast<double>(component_edges)));
  if (cross_count > 0 && spec.components.size() < 2) {
    throw std::invalid_argument("cross edges require at least two components");
  }

  Rng rng(seed);
  std::vector<std::vector<NodeId>> pins;
  pins.reserve(static_cast<std::size_t>(component_edges + cross_count + noise_count));

  std::vector<NodeId> base(spec.components.size());
  NodeId next_base = 0;
  for (std::size_t c = 0; c < spec.components.size(); ++c) {
    base[c] = next_base;
    const ComponentSpec& comp = spec.components[c];
    const int max_size = max_component_edge_size(comp);
    for (EdgeId e = 0; e < comp.edges; ++e) {
      const int s =
          2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_size - 1)));
      pins.push_back(draw_distinct(rng, base[c], comp.nodes, s));
    }
    next_base += comp.nodes;
  }

  for (EdgeId e = 0; e < cross_count; ++e) {
    const std::size_t c1 = rng.below(spec.components.size());
    std::size_t c2 = rng.below(spec.components.size() - 1);
    if (c2 >= c1) ++c2;
    const NodeId u =
        base[c1] + static_cast<NodeId>(rng.below(spec.components[c1].nodes));
    const NodeId v =
        base[c2] + static_cast<NodeId>(rng.below(spec.components[c2].nodes));
    pins.push_back({u, v});
  }

  for (EdgeId e = 0; e < noise_count; ++e) {
    const int s = 2 + static_cast<int>(
                          rng.below(static_cast<std::uint64_t>(global_max_size - 1)));
    pins.push_back(draw_distinct(rng, 0, total_nodes, s));
  }

  return Hypergraph(total_nodes, pins);
}

std::string mixture_to_json(const MixtureSpec& spec, std::uint64_t seed) {
  JsonWriter w;
  w.begin_object();
  w.key("components").begin_array();
  for (const ComponentSpec& c : spec.components) {
    w.begin_object();
    w.key("nodes").value(c.nodes);
    w.key("edges").value(c.edges);
    w.key("mean_edge_size").value(c.mean_edge_size);
    w.end_object();
  }
  w.end_array();
  w.key("cross_fraction").value(spec.cross_fraction);
  w.key("noise_fraction").value(spec.noise_fraction);
  w.key("seed").value(seed);
  w.end_object();
  return w.take();
}

namespace {

void check_csv_id(const std::string& id) {
  if (id.find(',') != std::string::npos ||
      id.find('\n') != std::string::npos) {
    throw std::invalid_argument("record id must not contain ',' or newline");
  }
}

void append_comparison(JsonWriter& w, const ImprovementReport& rep) {
  w.begin_object();
  w.key("method").value(rep.method);
  w.key("baseline").value(rep.baseline);
  w.key("per_graph").begin_array();
  for (const PerGraphImprovement& e : rep.per_graph) {
    w.begin_object();
    w.key("graph").value(e.graph);
    w.key("method_trials").value(static_cast<std::uint64_t>(e.method_trials));
    w.key("baseline_trials")
        .value(static_cast<std::uint64_t>(e.baseline_trials));
    w.key("improvement").begin_object();
    for (std::size_t i = 0; i < kSummaryStats.size(); ++i) {
      w.key(summary_stat_name(kSummaryStats[i])).value(e.by_stat[i]);
    }
    w.end_object();
    w.end_object();
  }
  w.end_array();
  w.key("macro").begin_object();
  for (std::size_t i = 0; i < kSummaryStats.size(); ++i) {
    w.key(summary_stat_name(kSummaryStats[i])).begin_object();
    w.key("value").value(rep.macro[i].value);
    w.key("used").value(static_cast<std::uint64_t>(rep.macro[i].used));
    w.key("excluded").value(static_cast<std::uint64_t>(rep.macro[i].excluded));
    w.end_object();
  }
  w.end_object();
  w.end_object();
}

}  // namespace

BenchDocuments emit_report(std::vector<TrialRecord> records,
                           const std::vector<ImprovementReport>& comparisons) {
  std::sort(records.begin(), records.end(),
            [](const TrialRecord& a, const TrialRecord& b) {
              if (a.graph != b.graph) return a.graph < b.graph;
              if (a.config != b.config) return a.config < b.config;
              return a.seed < b.seed;
            });

  std::string csv = kCsvHeader;
  csv += '\n';
  char buf[64];
  for (const TrialRecord& r : records) {
    check_csv_id(r.graph);
    check_csv_id(r.config);
    csv += r.graph;
    csv += ',';
    csv += r.config;
    csv += ',';
    csv += std::to_string(r.seed);
    csv += ',';
    csv += objective_name(r.objective);
    csv += ',';
    csv += std::to_string(r.k);
    csv += ',';
    csv += std::to_string(r.objective_value);
    csv += ',';
    csv += r.feasible ? '1' : '0';
    csv += ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.runtime_ms);
    csv += buf;
    csv += '\n';
  }

  JsonWriter w;
  w.begin_object();
  w.key("comparisons").begin_array();
  for (const ImprovementReport& rep : comparisons) append_comparison(w, rep);
  w.end_array();
  w.end_object();

  return BenchDocuments{std::move(csv), w.take()};
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

[[noreturn]] void fail_csv(const std::string& name, int line,
                           const std::string& message) {
  throw parse_error(name + ":" + std::to_string(line) + ": " + message);
}

std::int64_t parse_int(const std::string& token, const std::string& name,
                       int line) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(token, &used);
    if (used != token.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail_csv(name, line, "bad integer '" + token + "'");
  }
}

std::uint64_t parse_uint(const std::string& token, const std::string& name,
                         int line) {
  try {
    std::size_t used = 0;
    if (!token.empty() && token[0] == '-') throw std::invalid_argument("");
    const unsigned long long v = std::stoull(token, &used);
    if (used != token.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail_csv(name, line, "bad integer '" + token + "'");
  }
}

double parse_double(const std::string& token, const std::string& name,
                    int line) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + token.size() || token.empty()) {
    fail_csv(name, line, "bad value '" + token + "'");
  }
  return v;
}

}  // namespace

std::vector<TrialRecord> read_trials_csv(std::istream& in,
                                         const std::string& name) {
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) {
    throw parse_error(name + ": missing CSV header");
  }
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    fail_csv(name, line_no, "unexpected CSV header");
  }

  std::vector<TrialRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> f = split_fields(line);
    if (f.size() != 8) {
      fail_csv(name, line_no,
               "expected 8 fields, got " + std::to_string(f.size()));
    }
    TrialRecord r;
    r.graph = f[0];
    r.config = f[1];
    r.seed = parse_uint(f[2], name, line_no);
    if (f[3] == "cut") {
      r.objective = Objective::cut;
    } else if (f[3] == "km1") {
      r.objective = Objective::connectivity;
    } else {
      fail_csv(name, line_no, "unknown objective '" + f[3] + "'");
    }
    r.k = static_cast<PartId>(parse_int(f[4], name, line_no));
    r.objective_value = parse_int(f[5], name, line_no);
    if (r.objective_value < 0) {
      fail_csv(name, line_no, "negative objective value");
    }
    if (f[6] == "0") {
      r.feasible = false;
    } else if (f[6] == "1") {
      r.feasible = true;
    } else {
      fail_csv(name, line_no, "bad feasibility flag '" + f[6] + "'");
    }
    r.runtime_ms = parse_double(f[7], name, line_no);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<TrialRecord> load_trials_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error(path + ": cannot open file");
  return read_trials_csv(in, path);
}

}  // namespace starpart
