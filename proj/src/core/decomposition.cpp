#include "trussmerge/decomposition.hpp"

#include <algorithm>
#include <numeric>

#include "csr.hpp"
#include "trussmerge/error.hpp"

namespace trussmerge {
namespace detail {

std::uint32_t Csr::find(std::uint32_t u, std::uint32_t w) const {
  auto first = nbr.begin() + offset[u];
  auto last = nbr.begin() + offset[u + 1];
  auto it = std::lower_bound(first, last, w);
  if (it == last || *it != w) return kNone;
  return eid[static_cast<std::size_t>(it - nbr.begin())];
}

Csr build_csr(std::size_t n, std::vector<LocalEdge> edges) {
  Csr g;
  g.offset.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    ++g.offset[u + 1];
    ++g.offset[v + 1];
  }
  std::partial_sum(g.offset.begin(), g.offset.end(), g.offset.begin());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> slots(g.offset.back());
  std::vector<std::uint32_t> fill(g.offset.begin(), g.offset.end() - 1);
  for (std::uint32_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    slots[fill[u]++] = {v, e};
    slots[fill[v]++] = {u, e};
  }
  for (std::size_t u = 0; u < n; ++u) {
    std::sort(slots.begin() + g.offset[u], slots.begin() + g.offset[u + 1]);
  }
  g.nbr.resize(slots.size());
  g.eid.resize(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    g.nbr[i] = slots[i].first;
    g.eid[i] = slots[i].second;
  }
  g.edges = std::move(edges);
  return g;
}

std::vector<std::uint32_t> edge_supports(const Csr& g) {
  std::vector<std::uint32_t> sup(g.edge_count(), 0);
  for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    std::uint32_t i = g.offset[u], ie = g.offset[u + 1];
    std::uint32_t j = g.offset[v], je = g.offset[v + 1];
    std::uint32_t count = 0;
    while (i < ie && j < je) {
      if (g.nbr[i] < g.nbr[j]) {
        ++i;
      } else if (g.nbr[j] < g.nbr[i]) {
        ++j;
      } else {
        ++count;
        ++i;
        ++j;
      }
    }
    sup[e] = count;
  }
  return sup;
}

// Calls fn(e1, e2) for every triangle (u, v, w) through edge `e` whose other
// two edges are still alive.
template <typename Fn>
void for_each_live_triangle(const Csr& g, std::uint32_t e, const std::vector<char>& removed, Fn&& fn) {
  auto [u, v] = g.edges[e];
  if (g.degree(u) > g.degree(v)) std::swap(u, v);
  for (std::uint32_t i = g.offset[u]; i < g.offset[u + 1]; ++i) {
    std::uint32_t w = g.nbr[i];
    std::uint32_t e1 = g.eid[i];
    if (w == v || removed[e1]) continue;
    std::uint32_t e2 = g.find(v, w);
    if (e2 == Csr::kNone || removed[e2]) continue;
    fn(e1, e2);
  }
}

std::vector<int> peel_trussness(const Csr& g) {
  const std::size_t m = g.edge_count();
  std::vector<std::uint32_t> sup = edge_supports(g);
  std::vector<int> truss(m, 2);
  if (m == 0) return truss;

  std::uint32_t max_sup = *std::max_element(sup.begin(), sup.end());
  std::vector<std::uint32_t> bin(max_sup + 2, 0);
  for (auto s : sup) ++bin[s + 1];
  std::partial_sum(bin.begin(), bin.end(), bin.begin());
  std::vector<std::uint32_t> order(m);
  std::vector<std::uint32_t> pos(m);
  {
    std::vector<std::uint32_t> next(bin.begin(), bin.end() - 1);
    for (std::uint32_t e = 0; e < m; ++e) {
      pos[e] = next[sup[e]]++;
      order[pos[e]] = e;
    }
  }
  std::vector<char> removed(m, 0);

  auto decrement = [&](std::uint32_t f, std::uint32_t floor) {
    if (sup[f] <= floor) return;
    std::uint32_t s = sup[f];
    std::uint32_t head = bin[s];
    std::uint32_t other = order[head];
    if (other != f) {
      std::swap(order[head], order[pos[f]]);
      pos[other] = pos[f];
      pos[f] = head;
    }
    ++bin[s];
    --sup[f];
  };

  for (std::size_t i = 0; i < m; ++i) {
    std::uint32_t e = order[i];
    std::uint32_t level = sup[e];
    truss[e] = static_cast<int>(level) + 2;
    for_each_live_triangle(g, e, removed, [&](std::uint32_t e1, std::uint32_t e2) {
      decrement(e1, level);
      decrement(e2, level);
    });
    removed[e] = 1;
  }
  return truss;
}

std::size_t peel_k_truss(const Csr& g, int k) {
  const std::size_t m = g.edge_count();
  if (m == 0) return 0;
  const auto need = static_cast<std::uint32_t>(k - 2);
  std::vector<std::uint32_t> sup = edge_supports(g);
  std::vector<char> removed(m, 0);
  std::vector<char> queued(m, 0);
  std::vector<std::uint32_t> queue;
  for (std::uint32_t e = 0; e < m; ++e) {
    if (sup[e] < need) {
      queue.push_back(e);
      queued[e] = 1;
    }
  }
  std::size_t alive = m;
  while (!queue.empty()) {
    std::uint32_t e = queue.back();
    queue.pop_back();
    for_each_live_triangle(g, e, removed, [&](std::uint32_t e1, std::uint32_t e2) {
      for (std::uint32_t f : {e1, e2}) {
        --sup[f];
        if (!queued[f] && sup[f] < need) {
          queued[f] = 1;
          queue.push_back(f);
        }
      }
    });
    removed[e] = 1;
    --alive;
  }
  return alive;
}

}  // namespace detail

namespace {

detail::Csr csr_of(const Graph& g, const std::vector<Edge>& edges) {
  std::vector<detail::LocalEdge> local;
  local.reserve(edges.size());
  for (const Edge& e : edges) local.emplace_back(e.u, e.v);
  return detail::build_csr(g.id_bound(), std::move(local));
}

constexpr std::uint32_t kNotInside = UINT32_MAX;

}  // namespace

TrussDecomposition::TrussDecomposition(std::vector<Edge> edges, std::vector<int> trussness,
                                       std::size_t id_bound)
    : edges_(std::move(edges)), trussness_(std::move(trussness)) {
  first_edge_.assign(id_bound + 1, 0);
  node_trussness_.assign(id_bound, 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    ++first_edge_[e.u + 1];
    node_trussness_[e.u] = std::max(node_trussness_[e.u], trussness_[i]);
    node_trussness_[e.v] = std::max(node_trussness_[e.v], trussness_[i]);
    kmax_ = std::max(kmax_, trussness_[i]);
  }
  std::partial_sum(first_edge_.begin(), first_edge_.end(), first_edge_.begin());
}

int TrussDecomposition::trussness_or_zero(NodeId u, NodeId v) const noexcept {
  if (u > v) std::swap(u, v);
  if (static_cast<std::size_t>(u) + 1 >= first_edge_.size()) return 0;
  auto first = edges_.begin() + static_cast<std::ptrdiff_t>(first_edge_[u]);
  auto last = edges_.begin() + static_cast<std::ptrdiff_t>(first_edge_[u + 1]);
  auto it = std::lower_bound(first, last, Edge(u, v));
  if (it == last || it->v != v) return 0;
  return trussness_[static_cast<std::size_t>(it - edges_.begin())];
}

int TrussDecomposition::trussness(NodeId u, NodeId v) const {
  int t = trussness_or_zero(u, v);
  if (t == 0) throw DomainError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") is absent");
  return t;
}

std::vector<Edge> TrussDecomposition::k_truss_edges(int k) const {
  require_k(k);
  std::vector<Edge> out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (trussness_[i] >= k) out.push_back(edges_[i]);
  }
  return out;
}

std::size_t TrussDecomposition::truss_size(int k) const {
  require_k(k);
  return static_cast<std::size_t>(
      std::count_if(trussness_.begin(), trussness_.end(), [k](int t) { return t >= k; }));
}

std::size_t TrussDecomposition::truss_node_count(int k) const {
  require_k(k);
  return static_cast<std::size_t>(
      std::count_if(node_trussness_.begin(), node_trussness_.end(), [k](int t) { return t >= k; }));
}

std::vector<Edge> TrussDecomposition::shell_edges(int k) const {
  require_k(k);
  std::vector<Edge> out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (trussness_[i] == k - 1) out.push_back(edges_[i]);
  }
  return out;
}

TrussDecomposition truss_decompose(const Graph& g) {
  std::vector<Edge> edges = g.edges();
  detail::Csr csr = csr_of(g, edges);
  std::vector<int> truss = detail::peel_trussness(csr);
  return TrussDecomposition(std::move(edges), std::move(truss), g.id_bound());
}

std::size_t k_truss_size(const Graph& g, int k) {
  require_k(k);
  return detail::peel_k_truss(csr_of(g, g.edges()), k);
}

int CoreDecomposition::max_core() const noexcept {
  return coreness.empty() ? 0 : *std::max_element(coreness.begin(), coreness.end());
}

std::vector<NodeId> CoreDecomposition::k_core_nodes(int k) const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < coreness.size(); ++v) {
    if (coreness[v] >= k) out.push_back(v);
  }
  return out;
}

CoreDecomposition core_decompose(const Graph& g) {
  const std::size_t n = g.id_bound();
  CoreDecomposition result;
  result.coreness.assign(n, 0);
  std::vector<NodeId> live = g.nodes();
  if (live.empty()) return result;

  std::vector<std::size_t> deg(n, 0);
  std::size_t max_deg = 0;
  for (NodeId v : live) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  std::vector<std::size_t> bin(max_deg + 2, 0);
  for (NodeId v : live) ++bin[deg[v] + 1];
  std::partial_sum(bin.begin(), bin.end(), bin.begin());
  std::vector<NodeId> order(live.size());
  std::vector<std::size_t> pos(n, 0);
  {
    std::vector<std::size_t> next(bin.begin(), bin.end() - 1);
    for (NodeId v : live) {
      pos[v] = next[deg[v]]++;
      order[pos[v]] = v;
    }
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    NodeId v = order[i];
    result.coreness[v] = static_cast<int>(deg[v]);
    for (NodeId u : g.neighbors(v)) {
      if (deg[u] > deg[v]) {
        std::size_t du = deg[u];
        std::size_t head = bin[du];
        NodeId w = order[head];
        if (w != u) {
          std::swap(order[head], order[pos[u]]);
          pos[w] = pos[u];
          pos[u] = head;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  return result;
}

PostMergerEvaluator::PostMergerEvaluator(const Graph& g, const TrussDecomposition& d, int k)
    : graph_(&g), k_(k) {
  require_k(k);
  current_size_ = d.truss_size(k);
  local_id_.assign(g.id_bound(), kNotInside);
  for (NodeId v = 0; v < g.id_bound(); ++v) {
    if (g.contains(v) && d.node_trussness(v) >= k - 1) {
      local_id_[v] = static_cast<std::uint32_t>(inside_nodes_.size());
      inside_nodes_.push_back(v);
    }
  }
  auto edges = d.edges();
  auto truss = d.edge_trussness();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (truss[i] >= k - 1) base_edges_.emplace_back(local_id_[edges[i].u], local_id_[edges[i].v]);
  }
}

std::size_t PostMergerEvaluator::size_after(NodeId v1, NodeId v2) const {
  const Graph& g = *graph_;
  if (v1 == v2) throw DomainError("cannot merge a node with itself");
  if (!g.contains(v1) || !g.contains(v2)) throw DomainError("merge pair references unknown node");

  const auto inside_count = static_cast<std::uint32_t>(inside_nodes_.size());
  const std::uint32_t l1 = local_id_[v1] != kNotInside ? local_id_[v1] : inside_count;
  const std::uint32_t l2 = local_id_[v2];

  std::vector<detail::LocalEdge> edges;
  edges.reserve(base_edges_.size() + g.degree(v1) + g.degree(v2));
  for (const auto& [a, b] : base_edges_) {
    if (a == l1 || b == l1 || a == l2 || b == l2) continue;
    edges.emplace_back(a, b);
  }
  std::vector<NodeId> star = set_union(g.neighbors(v1), g.neighbors(v2));
  for (NodeId x : star) {
    if (x == v1 || x == v2 || local_id_[x] == kNotInside) continue;
    edges.emplace_back(l1, local_id_[x]);
  }
  detail::Csr csr = detail::build_csr(inside_count + 1, std::move(edges));
  return detail::peel_k_truss(csr, k_);
}

std::size_t post_merger_truss_size(const Graph& g, const TrussDecomposition& d, int k, NodeId v1,
                                   NodeId v2) {
  return PostMergerEvaluator(g, d, k).size_after(v1, v2);
}

}  // namespace trussmerge
