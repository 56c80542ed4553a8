#include <filesystem>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "trussmerge/candidates.hpp"
#include "trussmerge/error.hpp"

using namespace trussmerge;

namespace {

// Everything the scoring routines look at, recomputed from the dense oracles.
struct Reference {
  oracle::Matrix a;
  int k = 3;
  std::map<std::pair<NodeId, NodeId>, int> t;
  std::vector<char> inside;

  Reference(const Graph& g, int k_) : a(oracle::matrix_of(g)), k(k_), t(oracle::trussness(g)), inside(a.size(), 0) {
    for (const auto& [e, te] : t) {
      if (te >= k - 1) inside[e.first] = inside[e.second] = 1;
    }
  }
  int truss(NodeId u, NodeId v) const {
    auto it = t.find({std::min(u, v), std::max(u, v)});
    return it == t.end() ? 0 : it->second;
  }
  std::vector<NodeId> inside_nbrs(NodeId v) const {
    std::vector<NodeId> out;
    for (NodeId u = 0; u < a.size(); ++u)
      if (a[v][u] && inside[u]) out.push_back(u);
    return out;
  }
  std::vector<NodeId> nbrs_at_least(NodeId v, int level) const {
    std::vector<NodeId> out;
    for (NodeId u = 0; u < a.size(); ++u)
      if (a[v][u] && truss(u, v) >= level) out.push_back(u);
    return out;
  }
  bool is_shell(NodeId u, NodeId v) const { return a[u][v] && truss(u, v) == k - 1; }
};

std::vector<NodeId> minus(std::vector<NodeId> a, const std::vector<NodeId>& b) {
  std::erase_if(a, [&](NodeId x) { return std::find(b.begin(), b.end(), x) != b.end(); });
  return a;
}

std::vector<NodeId> join(std::vector<NodeId> a, const std::vector<NodeId>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<NodeId> oracle_z(const Reference& r, NodeId vi, NodeId vo) {
  auto z = minus(join(r.inside_nbrs(vo), r.inside_nbrs(vi)), r.nbrs_at_least(vi, r.k - 1));
  std::erase(z, vi);
  return z;
}

// Shell edges whose triangle count rises once v_i is joined to all of Z.
std::vector<Edge> oracle_phse(const Reference& r, NodeId vi, NodeId vo) {
  oracle::Matrix after = r.a;
  for (NodeId z : oracle_z(r, vi, vo)) after[vi][z] = after[z][vi] = 1;
  std::vector<Edge> out;
  for (NodeId x = 0; x < r.a.size(); ++x)
    for (NodeId y = x + 1; y < r.a.size(); ++y)
      if (r.is_shell(x, y) && oracle::common(after, x, y) > oracle::common(r.a, x, y)) out.push_back({x, y});
  return out;
}

// -collisions inside T_k, then +1/-1 per shell edge not at v1, v2 whose
// triangle count rises/falls when v2 is merged into v1.
long oracle_iim(const Graph& g, const Reference& r, NodeId v1, NodeId v2) {
  auto n1 = r.nbrs_at_least(v1, r.k), n2 = r.nbrs_at_least(v2, r.k);
  std::vector<NodeId> shared;
  std::set_intersection(n1.begin(), n1.end(), n2.begin(), n2.end(), std::back_inserter(shared));
  long h = -static_cast<long>(shared.size());
  oracle::Matrix after = oracle::merged_matrix(g, v1, v2);
  for (NodeId x = 0; x < r.a.size(); ++x)
    for (NodeId y = x + 1; y < r.a.size(); ++y) {
      if (x == v1 || x == v2 || y == v1 || y == v2 || !r.is_shell(x, y)) continue;
      int before = oracle::common(r.a, x, y), now = oracle::common(after, x, y);
      h += (now > before) - (now < before);
    }
  return h;
}

struct Snapshot {
  Graph g;
  TrussDecomposition d;
  NodePartition p;
  CandidateContext ctx;
  std::vector<NodeId> pruned;

  Snapshot(Graph graph, int k)
      : g(std::move(graph)), d(truss_decompose(g)), p(partition_nodes(g, d, k)), ctx(g, d, p),
        pruned(prune_outside_maximal(p.outside, p.inside_neighbors)) {}
};

std::vector<NodeId> ranked(std::vector<std::pair<std::size_t, NodeId>> keyed, std::size_t n) {
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < std::min(n, keyed.size()); ++i) out.push_back(keyed[i].second);
  return out;
}

}  // namespace

TEST_CASE("neighborhood views match the oracle") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 25; ++trial) {
    const int k = 3 + trial % 4;
    Snapshot s(oracle::clustered_graph(40, rng), k);
    Reference r(s.g, k);
    for (NodeId v : s.g.nodes()) {
      auto tn = s.ctx.truss_nbrs(v);
      auto pn = s.ctx.prev_truss_nbrs(v);
      CHECK(std::vector<NodeId>(tn.begin(), tn.end()) == r.nbrs_at_least(v, k));
      CHECK(std::vector<NodeId>(pn.begin(), pn.end()) == r.nbrs_at_least(v, k - 1));
      CHECK(s.p.is_inside(v) == static_cast<bool>(r.inside[v]));
      if (s.p.is_inside(v)) CHECK(incident_prospects(s.ctx, v) == minus(r.inside_nbrs(v), r.nbrs_at_least(v, k)));
    }
    std::size_t shell = 0;
    for (const auto& [e, te] : r.t) shell += te == k - 1;
    CHECK(s.ctx.shell_edges().size() == shell);

    std::vector<std::pair<std::size_t, NodeId>> in_keys, out_keys;
    for (NodeId v : s.p.inside) in_keys.emplace_back(minus(r.inside_nbrs(v), r.nbrs_at_least(v, k)).size(), v);
    for (NodeId v : s.pruned) out_keys.emplace_back(r.inside_nbrs(v).size(), v);
    for (std::size_t n : {std::size_t{1}, std::size_t{5}, std::size_t{1000}}) {
      CHECK(top_inside_nodes(s.ctx, n) == ranked(in_keys, n));
      CHECK(top_outside_nodes(s.pruned, s.p.inside_neighbors, n) == ranked(out_keys, n));
    }
  }
}

TEST_CASE("incident prospects reject outside nodes") {
  Snapshot s(Graph::from_edge_list_text("a b\na c\nb c\nc d\n"), 4);
  CHECK_THROWS_AS(incident_prospects(s.ctx, s.g.id_of("d")), DomainError);
}

TEST_CASE("new inside neighbors and helped shell edges match the recount oracle") {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 3 + trial % 4;
    Snapshot s(oracle::clustered_graph(36, rng), k);
    if (s.p.inside.empty() || s.p.outside.empty()) continue;
    Reference r(s.g, k);
    for (NodeId vi : s.p.inside) {
      for (NodeId vo : s.p.outside) {
        CHECK(new_inside_neighbors(s.ctx, vi, vo) == oracle_z(r, vi, vo));
        CHECK(phse(s.ctx, vi, vo) == oracle_phse(r, vi, vo));
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("literal helpers are a superset of the semantic ones on Z") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 3 + trial % 3;
    Snapshot s(oracle::clustered_graph(30, rng), k);
    for (NodeId vi : s.p.inside) {
      for (NodeId vo : s.p.outside) {
        auto sem = new_inside_neighbors(s.ctx, vi, vo, HeuristicMode::kSemantic);
        auto lit = new_inside_neighbors(s.ctx, vi, vo, HeuristicMode::kLiteral);
        CHECK(std::includes(lit.begin(), lit.end(), sem.begin(), sem.end()));
      }
    }
  }
}

TEST_CASE("IIM score matches the merge recount") {
  std::mt19937_64 rng(53);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 3 + trial % 4;
    Snapshot s(oracle::clustered_graph(32, rng), k);
    Reference r(s.g, k);
    for (std::size_t i = 0; i < s.p.inside.size(); ++i)
      for (std::size_t j = i + 1; j < s.p.inside.size(); ++j) {
        NodeId v1 = s.p.inside[i], v2 = s.p.inside[j];
        CHECK(iim_score(s.ctx, v1, v2) == oracle_iim(s.g, r, v1, v2));
        CHECK(iim_score(s.ctx, v1, v2) == iim_score(s.ctx, v2, v1));
        ++checked;
      }
  }
  CHECK(checked > 1000);
}

TEST_CASE("IIM score on a hand instance") {
  // Two 4-cliques joined by the triangles a-b-e and a-e-f. At k = 4 the
  // cliques form T_4 and the bridge edges are shell edges.
  Graph g = Graph::from_edge_list_text(
      "a b\na c\na d\nb c\nb d\nc d\n"
      "e f\ne g\ne h\nf g\nf h\ng h\n"
      "a e\nb e\na f\n");
  Snapshot s(std::move(g), 4);
  const Graph& gr = s.g;
  Reference r(gr, 4);
  NodeId a = gr.id_of("a"), e = gr.id_of("e"), c = gr.id_of("c"), h = gr.id_of("h");
  // c and h see opposite ends of all three bridge edges and share no T_4
  // neighbor; a and e touch every bridge edge themselves.
  CHECK(iim_score(s.ctx, c, h) == 3);
  CHECK(iim_score(s.ctx, a, e) == 0);
  CHECK(oracle_iim(gr, r, c, h) == 3);
  CHECK(oracle_iim(gr, r, a, e) == 0);
  CHECK_THROWS_AS(iim_score(s.ctx, a, a), DomainError);
}

TEST_CASE("candidate finders equal exhaustive ranking over their pools") {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 3 + trial % 4;
    Snapshot s(oracle::clustered_graph(40, rng), k);
    Reference r(s.g, k);
    const std::size_t n_i = 6, n_o = 5, n_c = 7;
    auto inside = top_inside_nodes(s.ctx, n_i);
    auto outside = top_outside_nodes(s.pruned, s.p.inside_neighbors, n_o);

    std::vector<CandidateMerger> ioms;
    for (NodeId vi : inside)
      for (NodeId vo : outside)
        ioms.push_back({vi, vo, MergerKind::kIom, static_cast<long>(oracle_phse(r, vi, vo).size()),
                        static_cast<long>(oracle_z(r, vi, vo).size())});
    std::sort(ioms.begin(), ioms.end(), [](const CandidateMerger& x, const CandidateMerger& y) {
      return std::tie(y.score, y.tiebreak, x.v1, x.v2) < std::tie(x.score, x.tiebreak, y.v1, y.v2);
    });
    if (ioms.size() > n_c) ioms.resize(n_c);
    CHECK(find_iom_candidates(s.ctx, s.pruned, n_i, n_o, n_c, ConstraintFilter{}) == ioms);

    std::vector<CandidateMerger> iims;
    for (NodeId x : inside)
      for (NodeId y : inside)
        if (x < y) iims.push_back({x, y, MergerKind::kIim, oracle_iim(s.g, r, x, y), 0});
    std::sort(iims.begin(), iims.end(), [](const CandidateMerger& x, const CandidateMerger& y) {
      return std::tie(y.score, x.v1, x.v2) < std::tie(x.score, y.v1, y.v2);
    });
    if (iims.size() > n_c) iims.resize(n_c);
    CHECK(find_iim_candidates(s.ctx, n_i, n_c, ConstraintFilter{}) == iims);

    CHECK(find_iom_candidates(s.ctx, s.pruned, n_i, n_o, 0, ConstraintFilter{}).empty());
    CHECK(find_iim_candidates(s.ctx, n_i, 0, ConstraintFilter{}).empty());
  }
}

TEST_CASE("a single new edge at an outside node leaves T_k unchanged") {
  std::mt19937_64 rng(6);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const int k = 3 + trial % 4;
    Graph g = oracle::clustered_graph(30, rng);
    Snapshot s(g, k);
    if (s.p.outside.size() < 2) continue;
    std::uniform_int_distribution<std::size_t> pick(0, s.p.outside.size() - 1);
    NodeId v1 = s.p.outside[pick(rng)], v2 = s.p.outside[pick(rng)];
    if (v1 == v2) continue;
    auto before = oracle::k_truss(g, k);
    for (NodeId x : set_union(g.neighbors(v1), g.neighbors(v2))) {
      if (x == v1 || x == v2) continue;
      oracle::Matrix a = oracle::matrix_of(g);
      a[v1][x] = a[x][v1] = 1;
      CHECK(oracle::k_truss(a, k) == before);
      ++checked;
    }
  }
  CHECK(checked > 50);
}

TEST_CASE("ranking and truncation") {
  std::vector<CandidateMerger> c{{1, 2, MergerKind::kIim, 3, 0},
                                 {0, 5, MergerKind::kIom, 3, 2},
                                 {0, 4, MergerKind::kIom, 3, 2},
                                 {7, 8, MergerKind::kIim, 9, 0}};
  keep_top(c, 3);
  REQUIRE(c.size() == 3);
  CHECK(c[0].v1 == 7);
  CHECK(c[1].v2 == 4);
  CHECK(c[2].v2 == 5);
  keep_top(c, 10);
  CHECK(c.size() == 3);
}

TEST_CASE("haversine distances") {
  CHECK(haversine_km({10, 20}, {10, 20}) == doctest::Approx(0.0));
  CHECK(haversine_km({0, 0}, {0, 180}) == doctest::Approx(std::numbers::pi * 6371.0));
  // Paris to London.
  CHECK(haversine_km({48.8566, 2.3522}, {51.5074, -0.1278}) == doctest::Approx(343.556).epsilon(1e-4));
}

TEST_CASE("distance filter") {
  Graph g = Graph::from_edge_list_text("p l\nl n\n");
  auto path = std::filesystem::temp_directory_path() / "trussmerge_coords_test.txt";
  {
    std::ofstream out(path);
    out << "# label lat lon\np 48.8566 2.3522\nl 51.5074 -0.1278\nunknown 0 0\n";
  }
  ConstraintFilter none;
  CHECK_FALSE(none.active());
  CHECK(none.admits(0, 1));

  auto near = ConstraintFilter::from_file(path.string(), g, 400.0);
  auto far = ConstraintFilter::from_file(path.string(), g, 300.0);
  NodeId p = g.id_of("p"), l = g.id_of("l"), n = g.id_of("n");
  CHECK(near.admits(p, l));
  CHECK_FALSE(far.admits(p, l));
  CHECK_FALSE(near.admits(p, n));  // no coordinate for n

  {
    std::ofstream out(path);
    out << "p 1 2\nl oops\n";
  }
  try {
    ConstraintFilter::from_file(path.string(), g, 1.0);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::filesystem::remove(path);
  CHECK_THROWS_AS(ConstraintFilter::from_file(path.string(), g, 1.0), IoError);
  CHECK_THROWS_AS(ConstraintFilter({}, -1.0), DomainError);
}

TEST_CASE("finders respect the distance filter") {
  std::mt19937_64 rng(90);
  Snapshot s(oracle::clustered_graph(40, rng), 4);
  std::vector<std::optional<GeoPoint>> coords(s.g.id_bound());
  std::uniform_real_distribution<double> deg(0.0, 3.0);
  for (NodeId v : s.g.nodes()) coords[v] = GeoPoint{deg(rng), deg(rng)};
  ConstraintFilter filter(coords, 150.0);
  auto ioms = find_iom_candidates(s.ctx, s.pruned, 20, 20, 50, filter);
  auto iims = find_iim_candidates(s.ctx, 20, 50, filter);
  for (const auto& c : ioms) CHECK(haversine_km(*coords[c.v1], *coords[c.v2]) <= 150.0);
  for (const auto& c : iims) CHECK(haversine_km(*coords[c.v1], *coords[c.v2]) <= 150.0);
}
