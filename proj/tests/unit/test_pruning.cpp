#include "doctest.h"
#include "oracles.hpp"
#include "trussmerge/decomposition.hpp"
#include "trussmerge/pruning.hpp"

using namespace trussmerge;

namespace {

// Maximal distinct non-empty families by pairwise containment.
std::vector<std::vector<NodeId>> maximal_sets(const std::vector<std::vector<NodeId>>& family) {
  std::vector<std::vector<NodeId>> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].empty()) continue;
    bool dominated = false;
    for (std::size_t j = 0; j < family.size() && !dominated; ++j) {
      if (i == j) continue;
      const auto& a = family[i];
      const auto& b = family[j];
      bool subset = std::includes(b.begin(), b.end(), a.begin(), a.end());
      if (subset && (b.size() > a.size() || j < i)) dominated = true;  // equal sets: keep the first
    }
    if (!dominated) out.push_back(family[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("partition of K5 plus a pendant node") {
  Graph g = Graph::from_edge_list_text("a b\na c\na d\na e\nb c\nb d\nb e\nc d\nc e\nd e\ne p\n");
  TrussDecomposition d = truss_decompose(g);
  NodePartition p = partition_nodes(g, d, 5);
  CHECK(p.inside.size() == 5);
  CHECK(p.outside == std::vector<NodeId>{g.id_of("p")});
  auto nb = p.inside_nbrs(g.id_of("p"));
  CHECK(std::vector<NodeId>(nb.begin(), nb.end()) == std::vector<NodeId>{g.id_of("e")});
}

TEST_CASE("partition matches the definition on random graphs") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = oracle::clustered_graph(40, rng);
    auto t = oracle::trussness(g);
    for (int k = 3; k <= 6; ++k) {
      NodePartition p = partition_nodes(g, truss_decompose(g), k);
      CHECK(p.inside.size() + p.outside.size() == g.node_count());
      for (NodeId v : g.nodes()) {
        int tv = 0;
        for (NodeId u : g.neighbors(v)) tv = std::max(tv, t.at({std::min(u, v), std::max(u, v)}));
        CHECK(p.is_inside(v) == (tv >= k - 1));
        for (NodeId u : p.inside_nbrs(v)) CHECK(p.is_inside(u));
        std::size_t expected = 0;
        for (NodeId u : g.neighbors(v)) expected += p.is_inside(u);
        CHECK(p.inside_nbrs(v).size() == expected);
      }
    }
  }
}

TEST_CASE("growable bits") {
  GrowableBits a, b;
  a.set(3);
  a.set(130);
  b.set(3);
  CHECK(a.count() == 2);
  CHECK(a.test(130));
  CHECK_FALSE(b.test(130));
  a.intersect(b);
  CHECK(a.count() == 1);
  CHECK(a.test(3));
  CHECK_FALSE(a.test(130));
}

TEST_CASE("maximal-set pruning examples") {
  std::vector<std::vector<NodeId>> nbrs(10);
  nbrs[5] = {0};
  nbrs[6] = {0, 1};
  std::vector<NodeId> outside{5, 6};
  CHECK(prune_outside_maximal(outside, nbrs) == std::vector<NodeId>{6});

  nbrs[5] = {0, 1};
  CHECK(prune_outside_maximal(outside, nbrs) == std::vector<NodeId>{5});

  nbrs[5] = {};
  nbrs[6] = {};
  CHECK(prune_outside_maximal(outside, nbrs).empty());
  CHECK(prune_outside_maximal({}, nbrs).empty());
}

TEST_CASE("maximal-set pruning equals the containment oracle") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> sets_dist(1, 60), elems_dist(1, 40);
    const std::size_t sets = sets_dist(rng), elems = elems_dist(rng);
    std::uniform_real_distribution<double> density(0.02, 0.5);
    std::bernoulli_distribution coin(density(rng));
    std::vector<std::vector<NodeId>> nbrs(elems + sets);
    std::vector<NodeId> outside;
    std::vector<std::vector<NodeId>> family;
    for (std::size_t s = 0; s < sets; ++s) {
      NodeId v = static_cast<NodeId>(elems + s);
      for (NodeId e = 0; e < elems; ++e)
        if (coin(rng)) nbrs[v].push_back(e);
      // Occasionally repeat an earlier set exactly.
      if (s > 0 && trial % 3 == 0 && coin(rng)) nbrs[v] = nbrs[v - 1];
      outside.push_back(v);
      family.push_back(nbrs[v]);
    }
    auto kept = prune_outside_maximal(outside, nbrs);
    CHECK(std::is_sorted(kept.begin(), kept.end()));
    std::vector<std::vector<NodeId>> got;
    for (NodeId v : kept) got.push_back(nbrs[v]);
    std::sort(got.begin(), got.end());
    CHECK(got == maximal_sets(family));
    // Lowest id represents each duplicate group.
    for (NodeId v : kept) {
      for (NodeId u : outside) {
        if (u < v) CHECK(nbrs[u] != nbrs[v]);
      }
    }
    // Losslessness: every dropped non-empty set is covered by a kept one.
    for (NodeId u : outside) {
      if (nbrs[u].empty()) continue;
      bool covered = false;
      for (NodeId v : kept) covered |= std::includes(nbrs[v].begin(), nbrs[v].end(), nbrs[u].begin(), nbrs[u].end());
      CHECK(covered);
    }
  }
}
