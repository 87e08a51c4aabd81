#include "starpart/algebraic.hpp"

#include <cmath>
#include <stdexcept>

#include "starpart/rng.hpp"

namespace starpart {

AlgebraicCoordinates algebraic_init(NodeId num_vertices, int restarts,
                                    std::uint64_t seed) {
  AlgebraicCoordinates out;
  out.coords.resize(static_cast<std::size_t>(restarts));
  out.init_min.resize(static_cast<std::size_t>(restarts));
  out.init_max.resize(static_cast<std::size_t>(restarts));
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    auto& c = out.coords[r];
    c.resize(static_cast<std::size_t>(num_vertices));
    double lo = 1.0;
    double hi = 0.0;
    for (auto& value : c) {
      value = rng.uniform01();
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
    out.init_min[r] = num_vertices == 0 ? 0.0 : lo;
    out.init_max[r] = num_vertices == 0 ? 0.0 : hi;
  }
  return out;
}

namespace {

inline double relaxed_value(const BipartiteGraph& g, const std::vector<double>& from,
                            NodeId u) {
  const auto neighbors = g.neighbors(u);
  if (neighbors.empty()) return from[u];
  double numerator = 0.0;
  double denominator = 0.0;
  for (NodeId v : neighbors) {
    const double inv_degree = 1.0 / static_cast<double>(g.neighbors(v).size());
    numerator += from[v] * inv_degree;
    denominator += inv_degree;
  }
  return 0.5 * (from[u] + numerator / denominator);
}

}  // namespace

void algebraic_sweep_serial(const BipartiteGraph& g, const std::vector<double>& from,
                            std::vector<double>& to) {
  const NodeId n = g.total_vertices();
  for (NodeId u = 0; u < n; ++u) to[u] = relaxed_value(g, from, u);
}

void algebraic_sweep(const BipartiteGraph& g, const std::vector<double>& from,
                     std::vector<double>& to) {
  const NodeId n = g.total_vertices();
#pragma omp parallel for schedule(static)
  for (NodeId u = 0; u < n; ++u) to[u] = relaxed_value(g, from, u);
}

double AlgebraicSimilarity::distance(NodeId u, NodeId v) const {
  double sum = 0.0;
  for (const auto& c : coords) {
    const double diff = c[u] - c[v];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double AlgebraicSimilarity::score(NodeId u, NodeId v) const {
  const double root = std::sqrt(static_cast<double>(restarts()));
  return (root - distance(u, v)) / root;
}

AlgebraicSimilarity algebraic_distance(const BipartiteGraph& g, int restarts,
                                       int iterations, std::uint64_t seed) {
  if (restarts < 1 || iterations < 1)
    throw std::invalid_argument("algebraic_distance needs restarts, iterations >= 1");
  AlgebraicCoordinates state =
      algebraic_init(g.total_vertices(), restarts, seed);
  AlgebraicSimilarity out;
  out.coords.resize(static_cast<std::size_t>(restarts));
  std::vector<double> next(static_cast<std::size_t>(g.total_vertices()));
  for (int r = 0; r < restarts; ++r) {
    std::vector<double>& current = state.coords[r];
    for (int step = 0; step < iterations; ++step) {
      algebraic_sweep(g, current, next);
      current.swap(next);
    }
    out.coords[r] = std::move(current);
  }
  return out;
}

}  // namespace starpart
