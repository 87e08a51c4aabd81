#include <doctest.h>

#include <cmath>
#include <sstream>

#include "reference.hpp"
#include "starpart/algebraic.hpp"
#include "starpart/bipartite_embedding.hpp"
#include "starpart/embedding.hpp"
#include "starpart/io.hpp"

using namespace starpart;

namespace {

BipartiteGraph two_linked_vertices() {
  BipartiteGraph g;
  g.left_count = 1;
  g.right_count = 1;
  g.adjacency = {{1}, {0}};
  return g;
}

BipartiteGraph random_bipartite(Rng& rng, NodeId nodes, EdgeId edges,
                                NodeId max_size) {
  return star_expand(testref::random_hypergraph(rng, nodes, edges, max_size));
}

// Naive alpha oracle: scan every candidate shared neighbor.
double naive_alpha(const BipartiteGraph& g, const AlgebraicSimilarity& sim,
                   NodeId u, NodeId v) {
  double best = -1.0;
  for (NodeId x = 0; x < g.total_vertices(); ++x) {
    bool in_u = false;
    bool in_v = false;
    for (NodeId y : g.neighbors(u)) in_u |= (y == x);
    for (NodeId y : g.neighbors(v)) in_v |= (y == x);
    if (in_u && in_v)
      best = std::max(best, std::min(sim.score(u, x), sim.score(v, x)));
  }
  return best;
}

double naive_edge_target(const BipartiteGraph& g, const AlgebraicSimilarity& sim,
                         NodeId u, NodeId v) {
  double best = -1.0;
  for (NodeId x : g.neighbors(v)) best = std::max(best, naive_alpha(g, sim, u, x));
  for (NodeId x : g.neighbors(u)) best = std::max(best, naive_alpha(g, sim, x, v));
  return std::clamp(best, 0.0, 1.0);
}

bool related(const BipartiteGraph& g, NodeId a, NodeId b) {
  for (NodeId y : g.neighbors(a))
    if (y == b) return true;
  for (NodeId x = 0; x < g.total_vertices(); ++x) {
    bool in_a = false;
    bool in_b = false;
    for (NodeId y : g.neighbors(a)) in_a |= (y == x);
    for (NodeId y : g.neighbors(b)) in_b |= (y == x);
    if (in_a && in_b) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("algebraic coordinates of mutually linked vertices converge") {
  const BipartiteGraph g = two_linked_vertices();
  const AlgebraicSimilarity sim = algebraic_distance(g, 10, 40, 123);
  CHECK(sim.score(0, 1) > 0.999);
  CHECK(sim.score(0, 0) == 1.0);
}

TEST_CASE("similarity score formula on fixed coordinates") {
  AlgebraicSimilarity sim;
  sim.coords = {{0.0, 1.0}};
  CHECK(sim.distance(0, 1) == 1.0);
  CHECK(sim.score(0, 1) == 0.0);
  CHECK(sim.score(1, 1) == 1.0);
}

TEST_CASE("coordinates stay inside their restart's initial range") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const BipartiteGraph g = random_bipartite(rng, 20, 25, 5);
    AlgebraicCoordinates state = algebraic_init(g.total_vertices(), 4, 99 + trial);
    std::vector<double> next(static_cast<std::size_t>(g.total_vertices()));
    for (int r = 0; r < state.restarts(); ++r) {
      auto& current = state.coords[r];
      for (int step = 0; step < 15; ++step) {
        algebraic_sweep(g, current, next);
        current.swap(next);
        for (double value : current) {
          CHECK(value >= state.init_min[r]);
          CHECK(value <= state.init_max[r]);
        }
      }
    }
  }
}

TEST_CASE("serial and parallel sweeps agree bitwise") {
  Rng rng(29);
  const BipartiteGraph g = random_bipartite(rng, 40, 50, 6);
  AlgebraicCoordinates state = algebraic_init(g.total_vertices(), 3, 5);
  for (int r = 0; r < state.restarts(); ++r) {
    std::vector<double> serial(state.coords[r].size());
    std::vector<double> parallel(state.coords[r].size());
    algebraic_sweep_serial(g, state.coords[r], serial);
    algebraic_sweep(g, state.coords[r], parallel);
    CHECK(serial == parallel);
  }
}

TEST_CASE("isolated vertices keep their coordinate") {
  // One isolated left vertex (node 2 sits in no edge).
  const Hypergraph h(3, {{0, 1}});
  const BipartiteGraph g = star_expand(h);
  AlgebraicCoordinates state = algebraic_init(g.total_vertices(), 1, 7);
  const double frozen = state.coords[0][2];
  std::vector<double> next(state.coords[0].size());
  for (int step = 0; step < 5; ++step) {
    algebraic_sweep(g, state.coords[0], next);
    state.coords[0].swap(next);
  }
  CHECK(state.coords[0][2] == frozen);
}

TEST_CASE("algebraic distance is deterministic per seed") {
  Rng rng(31);
  const BipartiteGraph g = random_bipartite(rng, 15, 20, 4);
  const AlgebraicSimilarity a = algebraic_distance(g, 5, 10, 42);
  const AlgebraicSimilarity b = algebraic_distance(g, 5, 10, 42);
  const AlgebraicSimilarity c = algebraic_distance(g, 5, 10, 43);
  CHECK(a.coords == b.coords);
  CHECK(a.coords != c.coords);
}

TEST_CASE("embedding file round-trips exactly") {
  EmbeddingTable table(3, 2);
  table.values = {0.25, -1.0 / 3.0, 1e-17, 42.0, -0.0, 7.125};
  std::ostringstream out;
  write_embedding(table, out);
  std::istringstream in(out.str());
  const EmbeddingTable back = read_embedding(in, "emb");
  CHECK(back == table);
  std::ostringstream again;
  write_embedding(back, again);
  CHECK(again.str() == out.str());
}

TEST_CASE("embedding reader reports errors") {
  auto message_of = [](const std::string& text, NodeId expected = kNone) {
    std::istringstream in(text);
    try {
      read_embedding(in, "emb", expected);
    } catch (const parse_error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message_of("2 3\n0 1 2 3\n1 4 5\n") == "emb:3: expected 3 values");
  CHECK(message_of("2 2\n0 1 2\n0 3 4\n") == "emb:3: duplicate node id 0");
  CHECK(message_of("2 2\n0 1 2\n5 3 4\n") == "emb:3: node id 5 out of range");
  CHECK(message_of("1 2\n0 1 inf\n") == "emb:2: non-finite value");
  CHECK(message_of("2 2\n0 1 2\n1 3 4\n", 3) ==
        "emb: missing node 2 (table covers 2 of 3 nodes)");
  CHECK(message_of("abc\n") == "emb:1: header must be 'node_count dims'");
  // A valid table against the right node count loads fine.
  std::istringstream ok("2 3\n1 4 5 6\n0 1 2 3\n");
  const EmbeddingTable t = read_embedding(ok, "emb", 2);
  CHECK(t.vec(0)[0] == 1.0);
  CHECK(t.vec(1)[2] == 6.0);
}

TEST_CASE("coarse interpolation takes flat means over originals") {
  EmbeddingTable original(4, 2);
  original.values = {1.0, 0.0,   // node 0
                     0.0, 1.0,   // node 1
                     4.0, 2.0,   // node 2
                     8.0, 6.0};  // node 3
  SUBCASE("singleton groups copy vectors") {
    const EmbeddingTable coarse = interpolate_coarse(original, {0, 1, 2, 3}, 4);
    CHECK(coarse == original);
  }
  SUBCASE("pair group averages") {
    const EmbeddingTable coarse = interpolate_coarse(original, {0, 0, 1, 2}, 3);
    CHECK(coarse.vec(0)[0] == 0.5);
    CHECK(coarse.vec(0)[1] == 0.5);
  }
  SUBCASE("uneven merge equals the flat mean over all originals") {
    // Group of three originals merged with one more: the result must be the
    // mean of all four original vectors, not the mean of two group means.
    const EmbeddingTable coarse = interpolate_coarse(original, {0, 0, 0, 0}, 1);
    CHECK(coarse.vec(0)[0] == doctest::Approx((1.0 + 0.0 + 4.0 + 8.0) / 4).epsilon(1e-12));
    CHECK(coarse.vec(0)[1] == doctest::Approx((0.0 + 1.0 + 2.0 + 6.0) / 4).epsilon(1e-12));
  }
}

TEST_CASE("interpolation is independent of contraction order") {
  Rng rng(59);
  EmbeddingTable original(6, 3);
  for (auto& v : original.values) v = rng.uniform(-1.0, 1.0);
  // Groups {0,1,2}, {3,4}, {5} reached along two different merge orders.
  const EmbeddingTable direct = interpolate_coarse(original, {0, 0, 0, 1, 1, 2}, 3);
  const EmbeddingTable relabeled = interpolate_coarse(original, {2, 2, 2, 0, 0, 1}, 3);
  for (int d = 0; d < 3; ++d) {
    CHECK(direct.vec(0)[d] == doctest::Approx(relabeled.vec(2)[d]).epsilon(1e-9));
    CHECK(direct.vec(1)[d] == doctest::Approx(relabeled.vec(0)[d]).epsilon(1e-9));
    CHECK(direct.vec(2)[d] == doctest::Approx(relabeled.vec(1)[d]).epsilon(1e-9));
  }
}

TEST_CASE("sample sets contain the advertised pair kinds") {
  Rng rng(61);
  const BipartiteGraph g = random_bipartite(rng, 12, 14, 4);
  const SampleSet set = fobe_samples(g, 5, 77);
  REQUIRE(set.positive_count > 0);
  REQUIRE(set.positive_count <= set.pairs.size());

  std::size_t edge_pair_count = 0;
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    const SamplePair& p = set.pairs[i];
    CHECK(p.u != p.v);
    CHECK(p.target >= 0.0);
    CHECK(p.target <= 1.0);
    if (i < set.positive_count) {
      CHECK(p.target == 1.0);
      CHECK(related(g, p.u, p.v));
    } else {
      CHECK(p.target == 0.0);
      CHECK_FALSE(related(g, p.u, p.v));
    }
  }
  // Every bipartite edge appears as a positive.
  for (NodeId u = 0; u < g.left_count; ++u)
    for (NodeId v : g.neighbors(u)) {
      bool found = false;
      for (std::size_t i = 0; i < set.positive_count; ++i)
        found |= (set.pairs[i].u == u && set.pairs[i].v == v);
      CHECK(found);
      edge_pair_count += 1;
    }
  CHECK(edge_pair_count <= set.positive_count);
}

TEST_CASE("hobe targets match the naive oracle") {
  Rng rng(67);
  const BipartiteGraph g = random_bipartite(rng, 10, 12, 4);
  const AlgebraicSimilarity sim = algebraic_distance(g, 4, 8, 5);
  const SampleSet set = hobe_scores(g, sim, 3, 11);
  for (std::size_t i = 0; i < set.positive_count; ++i) {
    const SamplePair& p = set.pairs[i];
    const bool is_edge = [&] {
      for (NodeId v : g.neighbors(p.u))
        if (v == p.v) return true;
      return false;
    }();
    const double expected = is_edge
                                ? naive_edge_target(g, sim, p.u, p.v)
                                : std::clamp(naive_alpha(g, sim, p.u, p.v), 0.0, 1.0);
    CHECK(p.target == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("converged similarity gives unit hobe targets") {
  Rng rng(71);
  const BipartiteGraph g = random_bipartite(rng, 8, 10, 3);
  AlgebraicSimilarity ones;
  ones.coords = {std::vector<double>(static_cast<std::size_t>(g.total_vertices()), 0.5)};
  std::vector<SamplePair> edges;
  for (NodeId u = 0; u < g.left_count; ++u)
    for (NodeId v : g.neighbors(u)) edges.push_back({u, v, -1.0});
  hobe_edge_targets(g, ones, edges);
  for (const SamplePair& p : edges) CHECK(p.target == 1.0);
}

TEST_CASE("hobe edge target kernels agree bitwise") {
  Rng rng(73);
  const BipartiteGraph g = random_bipartite(rng, 25, 30, 5);
  const AlgebraicSimilarity sim = algebraic_distance(g, 5, 10, 3);
  std::vector<SamplePair> a;
  for (NodeId u = 0; u < g.left_count; ++u)
    for (NodeId v : g.neighbors(u)) a.push_back({u, v, 0.0});
  std::vector<SamplePair> b = a;
  hobe_edge_targets_serial(g, sim, a);
  hobe_edge_targets(g, sim, b);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].target == b[i].target);
}

TEST_CASE("loss gradients match central finite differences") {
  auto relative_gap = [](double analytic, double numeric) {
    const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
    return std::abs(analytic - numeric) / denom;
  };
  const double h = 1e-6;
  SUBCASE("fobe") {
    for (double target : {1.0, 0.5, 0.0})
      for (double z : {-3.0, -0.7, 0.2, 1.9, 4.0}) {
        const double numeric =
            (fobe_pair_loss(z + h, target) - fobe_pair_loss(z - h, target)) / (2 * h);
        CHECK(relative_gap(fobe_pair_dldz(z, target), numeric) < 1e-4);
      }
  }
  SUBCASE("hobe away from the hinge") {
    for (double target : {1.0, 0.3, 0.0})
      for (double z : {-2.0, -0.4, 0.3, 1.2, 3.5}) {
        const double numeric =
            (hobe_pair_loss(z + h, target) - hobe_pair_loss(z - h, target)) / (2 * h);
        CHECK(relative_gap(hobe_pair_dldz(z, target), numeric) < 1e-4);
      }
  }
  SUBCASE("hobe hinge region is flat") {
    CHECK(hobe_pair_loss(-0.5, 0.0) == 0.0);
    CHECK(hobe_pair_dldz(-0.5, 0.0) == 0.0);
    CHECK(hobe_pair_dldz(-0.5, 0.8) == 0.0);
  }
}

TEST_CASE("fobe loss stays finite in the clamp region") {
  for (double z : {-40.0, 40.0})
    for (double target : {0.0, 1.0}) {
      CHECK(std::isfinite(fobe_pair_loss(z, target)));
      CHECK(std::isfinite(fobe_pair_dldz(z, target)));
    }
}

TEST_CASE("trainers are deterministic and reject empty input") {
  Rng rng(83);
  const BipartiteGraph g = random_bipartite(rng, 10, 12, 4);
  const SampleSet set = fobe_samples(g, 5, 3);
  TrainConfig config;
  config.dims = 8;
  config.epochs = 3;
  const EmbeddingTable a = fobe_train(set, g, config, 21);
  const EmbeddingTable b = fobe_train(set, g, config, 21);
  const EmbeddingTable c = fobe_train(set, g, config, 22);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(a.num_nodes() == g.left_count);
  for (double v : a.values) CHECK(std::isfinite(v));

  const AlgebraicSimilarity sim = algebraic_distance(g, 4, 8, 5);
  const SampleSet hs = hobe_scores(g, sim, 5, 3);
  const EmbeddingTable ha = hobe_train(hs, g, config, 21);
  const EmbeddingTable hb = hobe_train(hs, g, config, 21);
  CHECK(ha == hb);

  SampleSet empty;
  CHECK_THROWS_AS(fobe_train(empty, g, config, 1), std::invalid_argument);
  CHECK_THROWS_AS(hobe_train(empty, g, config, 1), std::invalid_argument);
}

TEST_CASE("training a single positive pair raises the pair's sigmoid") {
  // Two nodes in one edge; the positive pair links the two left vertices.
  const Hypergraph h(2, {{0, 1}});
  const BipartiteGraph g = star_expand(h);
  SampleSet set;
  set.pairs = {{0, 1, 1.0}};
  set.positive_count = 1;
  TrainConfig config;
  config.dims = 4;
  config.negatives_per_positive = 0;
  auto sigma = [](double z) { return 1.0 / (1.0 + std::exp(-z)); };

  config.epochs = 0;  // untouched initialization
  const EmbeddingTable before = fobe_train(set, g, config, 7);
  config.epochs = 40;
  const EmbeddingTable after = fobe_train(set, g, config, 7);
  CHECK(sigma(after.dot(0, 1)) > sigma(before.dot(0, 1)));
}
