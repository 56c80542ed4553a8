#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "trussmerge/error.hpp"
#include "trussmerge/metrics.hpp"

using namespace trussmerge;
using doctest::Approx;

namespace {

Graph clique(std::size_t n) {
  std::vector<NodePair> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

Graph star(std::size_t leaves) {
  std::vector<NodePair> e;
  for (NodeId v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, e);
}

}  // namespace

TEST_CASE("metric names") {
  for (MetricId m : kAllMetrics) CHECK(parse_metric(metric_name(m)) == m);
  CHECK(parse_metric("nc") == MetricId::kNc);
  CHECK_FALSE(parse_metric("XY").has_value());
  CHECK_FALSE(higher_is_better(MetricId::kVb));
  CHECK_FALSE(higher_is_better(MetricId::kEr));
  CHECK(higher_is_better(MetricId::kSg));
  CHECK(higher_is_better(MetricId::kNc));
}

TEST_CASE("closed forms on a triangle and a single edge") {
  Graph tri = clique(3);
  CHECK(avg_vertex_betweenness(tri) == Approx(0.0));
  CHECK(avg_edge_betweenness(tri) == Approx(1.0));
  CHECK(effective_resistance_total(tri) == Approx(2.0));
  CHECK(spectral_gap(tri) == Approx(3.0));
  CHECK(natural_connectivity(tri) == Approx(std::log((std::exp(2.0) + 2 * std::exp(-1.0)) / 3)));
  CHECK(average_distance(tri) == Approx(1.0));
  CHECK(transitivity(tri) == Approx(1.0));
  CHECK(avg_local_clustering(tri) == Approx(1.0));

  Graph k2 = clique(2);
  CHECK(avg_vertex_betweenness(k2) == Approx(0.0));
  CHECK(avg_edge_betweenness(k2) == Approx(1.0));
  CHECK(effective_resistance_total(k2) == Approx(1.0));
  CHECK(spectral_gap(k2) == Approx(2.0));
  CHECK(transitivity(k2) == Approx(0.0));
  CHECK(avg_local_clustering(k2) == Approx(0.0));
}

TEST_CASE("closed forms on cliques and stars") {
  for (std::size_t n : {4, 7, 12}) {
    Graph kn = clique(n);
    CHECK(effective_resistance_total(kn) == Approx(static_cast<double>(n - 1)));
    CHECK(spectral_gap(kn) == Approx(static_cast<double>(n)));
    CHECK(avg_edge_betweenness(kn) == Approx(1.0));
    CHECK(avg_vertex_betweenness(kn) == Approx(0.0));

    Graph s = star(n);
    const double leaves = static_cast<double>(n);
    CHECK(avg_vertex_betweenness(s) == Approx(leaves * (leaves - 1) / 2 / (leaves + 1)));
    CHECK(avg_edge_betweenness(s) == Approx(leaves));
    CHECK(effective_resistance_total(s) == Approx(leaves * leaves));
    CHECK(spectral_gap(s) == Approx(std::sqrt(leaves)));
    CHECK(transitivity(s) == Approx(0.0));
    CHECK(average_distance(s) == Approx((leaves * 1 + leaves * (leaves - 1) / 2 * 2) /
                                        (leaves * (leaves + 1) / 2)));
  }
}

TEST_CASE("betweenness matches pair dependencies") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 15; ++trial) {
    // Sparse enough to be disconnected sometimes.
    Graph g = oracle::random_graph(30, trial % 2 ? 0.08 : 0.2, rng);
    auto a = oracle::matrix_of(g);
    auto vb = oracle::vertex_betweenness(a);
    auto eb = oracle::edge_betweenness(a);
    for (unsigned threads : {1u, 4u}) {
      Betweenness b = betweenness(g, threads);
      for (NodeId v : g.nodes()) CHECK(b.vertex[v] == Approx(vb[v]));
      auto edges = g.edges();
      for (std::size_t i = 0; i < edges.size(); ++i) CHECK(b.edge[i] == Approx(eb.at({edges[i].u, edges[i].v})));
    }
  }
}

TEST_CASE("betweenness sums do not depend on the thread count") {
  std::mt19937_64 rng(6);
  Graph g = oracle::random_graph(200, 0.05, rng);
  const double one = avg_vertex_betweenness(g, 1);
  CHECK(avg_vertex_betweenness(g, 3) == one);
  CHECK(avg_vertex_betweenness(g, 8) == one);
  CHECK(avg_edge_betweenness(g, 8) == avg_edge_betweenness(g, 1));
}

TEST_CASE("effective resistance matches the Laplacian pseudoinverse") {
  std::mt19937_64 rng(10);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = oracle::random_graph(25, 0.25, rng);
    if (!is_connected(g)) {
      CHECK_THROWS_AS(effective_resistance_total(g), DomainError);
      CHECK(std::isnan(metric_value(g, MetricId::kEr)));
      continue;
    }
    const double expected = oracle::kirchhoff_pairwise(g);
    CHECK(std::abs(effective_resistance_total(g) - expected) <= 1e-9 * expected);
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("natural connectivity grows when an edge is added") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = oracle::random_graph(20, 0.2, rng);
    std::uniform_int_distribution<NodeId> pick(0, 19);
    NodeId u = pick(rng), v = pick(rng);
    if (u == v || g.has_edge(u, v)) continue;
    Graph h = g;
    h.add_edge(u, v);
    CHECK(natural_connectivity(h) > natural_connectivity(g));
  }
}

TEST_CASE("distance and clustering against brute force") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = oracle::random_graph(25, 0.12, rng);
    auto a = oracle::matrix_of(g);
    auto ap = oracle::all_pairs(a);
    double total = 0;
    std::size_t pairs = 0;
    for (NodeId s = 0; s < a.size(); ++s)
      for (NodeId t = s + 1; t < a.size(); ++t)
        if (ap.dist[s][t] > 0) {
          total += ap.dist[s][t];
          ++pairs;
        }
    CHECK(average_distance(g) == Approx(pairs ? total / static_cast<double>(pairs) : 0.0));

    std::vector<char> all(a.size(), 1);
    double triads = 0, lc = 0;
    for (NodeId v = 0; v < a.size(); ++v) {
      double deg = static_cast<double>(g.degree(v));
      triads += deg * (deg - 1) / 2;
      if (deg >= 2) {
        double links = 0;
        for (NodeId x : g.neighbors(v))
          for (NodeId y : g.neighbors(v)) links += x < y && a[x][y];
        lc += links / (deg * (deg - 1) / 2);
      }
    }
    const double closed = 3.0 * static_cast<double>(oracle::triangles_within(a, all));
    CHECK(transitivity(g) == Approx(triads > 0 ? closed / triads : 0.0));
    CHECK(avg_local_clustering(g) == Approx(lc / static_cast<double>(a.size())));
  }
}

TEST_CASE("pearson correlation") {
  std::vector<double> x{1, 2, 3, 4};
  std::vector<double> up{2, 4, 6, 8};
  std::vector<double> down{8, 6, 4, 2};
  std::vector<double> flat{5, 5, 5, 5};
  CHECK(*pearson_r(x, up) == Approx(1.0));
  CHECK(*pearson_r(x, down) == Approx(-1.0));
  CHECK_FALSE(pearson_r(x, flat).has_value());
  CHECK_FALSE(pearson_r(x, std::vector<double>{1, 2}).has_value());
  CHECK_FALSE(pearson_r(std::vector<double>{1}, std::vector<double>{2}).has_value());
  std::vector<double> y{1, 3, 2, 5};
  // Reference value from the textbook formula.
  CHECK(*pearson_r(x, y) == Approx(0.8315218));
}

TEST_CASE("Erdos-Renyi generator") {
  Graph a = gen_er(50, 0.1, 3);
  Graph b = gen_er(50, 0.1, 3);
  CHECK(a.node_count() == 50);
  CHECK(a.edges() == b.edges());
  CHECK(gen_er(30, 0.0, 1).edge_count() == 0);
  CHECK(gen_er(30, 1.0, 1).edge_count() == 435);
  // Mean edge count over seeds near p * C(n, 2).
  double total = 0;
  for (std::uint64_t s = 0; s < 40; ++s) total += static_cast<double>(gen_er(60, 0.1, s).edge_count());
  CHECK(total / 40 == Approx(177.0).epsilon(0.05));
}

TEST_CASE("Watts-Strogatz generator") {
  Graph ring = gen_ws(20, 4, 0.0, 1);
  CHECK(ring.edge_count() == 40);
  for (NodeId v : ring.nodes()) CHECK(ring.degree(v) == 4);
  CHECK(ring.has_edge(0, 19));
  CHECK(ring.has_edge(0, 18));
  Graph rewired = gen_ws(50, 6, 0.3, 9);
  CHECK(rewired.node_count() == 50);
  CHECK(rewired.edge_count() == 150);
  CHECK(rewired.edges() == gen_ws(50, 6, 0.3, 9).edges());
  CHECK(rewired.edges() != ring.edges());
}

TEST_CASE("Holme-Kim generator") {
  Graph g = gen_hk(100, 3, 0.5, 4);
  CHECK(g.node_count() == 100);
  // A triad step can land on a planned target, so a node may end with fewer
  // than m edges, as in the reference generator; without triads it cannot.
  CHECK(g.edge_count() <= 3 * (100 - 3));
  CHECK(g.edge_count() >= 3 * (100 - 3) - 10);
  CHECK(gen_hk(100, 3, 0.0, 4).edge_count() == 3 * (100 - 3));
  CHECK(g.edges() == gen_hk(100, 3, 0.5, 4).edges());
  // Triad closure raises clustering over plain preferential attachment.
  double closed = 0, plain = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    closed += transitivity(gen_hk(200, 3, 0.9, s));
    plain += transitivity(gen_hk(200, 3, 0.0, s));
  }
  CHECK(closed > plain);
}

TEST_CASE("largest component") {
  Graph g = Graph::from_edge_list_text("a b\nb c\nx y\ny z\nz w\np q\n");
  CHECK_FALSE(is_connected(g));
  Graph lcc = largest_component(g);
  CHECK(lcc.node_count() == 4);
  CHECK(lcc.edge_count() == 3);
  CHECK(lcc.has_label("w"));
  CHECK_FALSE(lcc.has_label("a"));
  CHECK(is_connected(lcc));
  // Equal sizes: the component holding the smallest id wins.
  Graph tie = Graph::from_edge_list_text("a b\nc d\n");
  CHECK(largest_component(tie).has_label("a"));
}

TEST_CASE("greedy improvement rounds") {
  Graph path = Graph::from_edge_list_text("a b\nb c\nc d\nd e\n");
  std::vector<MetricId> rec{MetricId::kVb, MetricId::kNc};

  StudyTrace none = greedy_improve(path, MetricId::kVb, StudyOp::kAddEdge, 0, rec, 1);
  REQUIRE(none.rows.size() == 1);
  CHECK(none.rows[0].operation == "baseline");
  CHECK(none.rows[0].values[0] == Approx(avg_vertex_betweenness(path)));

  // One added edge: the best choice for VB on a 5-path closes it into a cycle.
  StudyTrace add = greedy_improve(path, MetricId::kVb, StudyOp::kAddEdge, 1, rec, 2);
  REQUIRE(add.rows.size() == 2);
  CHECK(add.rows[1].operation == "add");
  REQUIRE(add.rows[1].pair.has_value());
  CHECK(*add.rows[1].pair == std::pair<std::string, std::string>{"a", "e"});
  double best = std::numeric_limits<double>::infinity();
  for (NodeId u = 0; u < 5; ++u)
    for (NodeId v = u + 1; v < 5; ++v) {
      if (path.has_edge(u, v)) continue;
      Graph h = path;
      h.add_edge(u, v);
      best = std::min(best, avg_vertex_betweenness(h));
    }
  CHECK(add.rows[1].values[0] == Approx(best));

  StudyTrace merge = greedy_improve(path, MetricId::kNc, StudyOp::kMerge, 2, rec, 2);
  REQUIRE(merge.rows.size() == 3);
  CHECK(merge.rows[2].values[1] >= merge.rows[1].values[1] - 1e-12);
  CHECK(merge.pearson_truss.empty());
}

TEST_CASE("correlation study records truss sizes of the executed plan") {
  std::mt19937_64 rng(20);
  Graph g = largest_component(oracle::clustered_graph(40, rng));
  RunConfig cfg;
  cfg.k = 4;
  cfg.n_i = 10;
  cfg.n_o = 6;
  cfg.n_c = 6;
  cfg.threads = 2;
  std::vector<MetricId> rec{MetricId::kEb, MetricId::kSg};
  StudyTrace trace = correlation_study(g, cfg, 3, rec);
  REQUIRE(trace.rows.size() == 4);
  RunConfig run = cfg;
  run.budget = 3;
  MergerPlan plan = batman(g, run);
  CHECK(*trace.rows[0].truss_size == plan.initial_size);
  for (std::size_t i = 0; i < plan.steps.size(); ++i) CHECK(*trace.rows[i + 1].truss_size == plan.steps[i].size_after);
  CHECK(trace.pearson_truss.size() == rec.size());
  CHECK(trace.pearson_core.size() == rec.size());
  for (const auto& row : trace.rows) CHECK(row.core_size.has_value());
}
