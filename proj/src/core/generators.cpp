#include <algorithm>
#include <random>

#include "trussmerge/error.hpp"
#include "trussmerge/metrics.hpp"

namespace trussmerge {
namespace {

double uniform01(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability must lie in [0, 1]");
}

}  // namespace

Graph gen_er(std::size_t n, double p, std::uint64_t seed) {
  check_probability(p);
  std::mt19937_64 rng(seed);
  Graph g(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (uniform01(rng) < p) g.add_edge(u, v);
    }
  }
  return g;
}

Graph gen_ws(std::size_t n, std::size_t k_nbrs, double p, std::uint64_t seed) {
  check_probability(p);
  if (k_nbrs >= n) throw DomainError("Watts-Strogatz needs k < n");
  std::mt19937_64 rng(seed);
  Graph g(n);
  const std::size_t half = k_nbrs / 2;
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t u = 0; u < n; ++u) g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>((u + j) % n));
  }
  // Rewire lattice edges (u, u+j) one ring distance at a time.
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t u = 0; u < n; ++u) {
      const auto a = static_cast<NodeId>(u);
      const auto b = static_cast<NodeId>((u + j) % n);
      if (uniform01(rng) >= p) continue;
      if (g.degree(a) >= n - 1) continue;
      NodeId w;
      do {
        w = static_cast<NodeId>(pick(rng, n));
      } while (w == a || g.has_edge(a, w));
      if (g.remove_edge(a, b)) g.add_edge(a, w);
    }
  }
  return g;
}

Graph gen_hk(std::size_t n, std::size_t m_attach, double p, std::uint64_t seed) {
  check_probability(p);
  if (m_attach < 1 || m_attach >= n) throw DomainError("Holme-Kim needs 1 <= m < n");
  std::mt19937_64 rng(seed);
  Graph g(n);
  std::vector<NodeId> repeated;
  for (std::size_t v = 0; v < m_attach; ++v) repeated.push_back(static_cast<NodeId>(v));

  for (std::size_t s = m_attach; s < n; ++s) {
    const auto source = static_cast<NodeId>(s);
    // m distinct targets, degree-proportional through the repeated list.
    std::vector<NodeId> targets;
    while (targets.size() < m_attach) {
      NodeId t = repeated[pick(rng, repeated.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    NodeId target = targets.back();
    targets.pop_back();
    g.add_edge(source, target);
    repeated.push_back(target);
    std::size_t count = 1;
    while (count < m_attach) {
      if (uniform01(rng) < p) {
        std::vector<NodeId> closing;
        for (NodeId w : g.neighbors(target)) {
          if (w != source && !g.has_edge(source, w)) closing.push_back(w);
        }
        if (!closing.empty()) {
          NodeId w = closing[pick(rng, closing.size())];
          g.add_edge(source, w);
          repeated.push_back(w);
          ++count;
          continue;
        }
      }
      if (targets.empty()) break;
      target = targets.back();
      targets.pop_back();
      if (g.add_edge(source, target)) repeated.push_back(target);
      ++count;
    }
    for (std::size_t i = 0; i < m_attach; ++i) repeated.push_back(source);
  }
  return g;
}

bool is_connected(const Graph& g) {
  std::vector<NodeId> nodes = g.nodes();
  if (nodes.size() <= 1) return true;
  std::vector<char> seen(g.id_bound(), 0);
  std::vector<NodeId> stack{nodes.front()};
  seen[nodes.front()] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId w : g.neighbors(u)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == nodes.size();
}

Graph largest_component(const Graph& g) {
  std::vector<int> comp(g.id_bound(), -1);
  std::vector<std::size_t> sizes;
  for (NodeId s : g.nodes()) {
    if (comp[s] >= 0) continue;
    const int c = static_cast<int>(sizes.size());
    std::size_t size = 0;
    std::vector<NodeId> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      ++size;
      for (NodeId w : g.neighbors(u)) {
        if (comp[w] < 0) {
          comp[w] = c;
          stack.push_back(w);
        }
      }
    }
    sizes.push_back(size);
  }
  Graph out;
  if (sizes.empty()) return out;
  // max_element returns the first maximum, i.e. the component found first.
  const int keep = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<NodeId> remap(g.id_bound(), 0);
  for (NodeId v : g.nodes()) {
    if (comp[v] == keep) remap[v] = out.add_node(g.label(v));
  }
  for (const Edge& e : g.edges()) {
    if (comp[e.u] == keep) out.add_edge(remap[e.u], remap[e.v]);
  }
  return out;
}

}  // namespace trussmerge
