#include "trussmerge/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "trussmerge/error.hpp"

namespace trussmerge {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kIo: return "io_error";
    case ErrorCode::kDomain: return "domain_error";
    case ErrorCode::kGuard: return "guard";
    case ErrorCode::kInternal: return "internal";
  }
  return "unknown";
}

Graph::Graph(std::size_t n) {
  adjacency_.resize(n);
  alive_.assign(n, true);
  labels_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels_.push_back(std::to_string(i));
    label_index_.emplace(labels_.back(), static_cast<NodeId>(i));
  }
  live_count_ = n;
}

Graph Graph::from_edge_list(std::istream& in) {
  Graph g;
  std::string line;
  std::size_t line_no = 0;
  auto node_for = [&g](const std::string& label) {
    auto it = g.label_index_.find(label);
    if (it != g.label_index_.end()) return it->second;
    return g.add_node(label);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::istringstream tokens(line);
    std::string a, b;
    if (!(tokens >> a >> b)) {
      throw ParseError(line_no, "expected two endpoint labels, got '" + line + "'");
    }
    if (a == b) continue;
    NodeId u = node_for(a);
    NodeId v = node_for(b);
    g.add_edge(u, v);
  }
  return g;
}

Graph Graph::from_edge_list_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return from_edge_list(in);
}

Graph Graph::from_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return from_edge_list(in);
}

Graph Graph::from_edges(std::size_t n, std::span<const NodePair> edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw DomainError("edge endpoint out of range");
    g.add_edge(u, v);
  }
  return g;
}

void Graph::write_edge_list(std::ostream& out) const {
  for (const Edge& e : edges()) out << e.u << ' ' << e.v << '\n';
}

void Graph::write_labelled_edge_list(std::ostream& out) const {
  for (const Edge& e : edges()) out << labels_[e.u] << ' ' << labels_[e.v] << '\n';
}

NodeId Graph::add_node(std::string label) {
  if (label_index_.count(label)) throw DomainError("duplicate node label '" + label + "'");
  auto id = static_cast<NodeId>(adjacency_.size());
  adjacency_.emplace_back();
  alive_.push_back(true);
  label_index_.emplace(label, id);
  labels_.push_back(std::move(label));
  ++live_count_;
  return id;
}

bool Graph::add_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  if (u == v) return false;
  auto& nu = adjacency_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) return false;
  nu.insert(it, v);
  auto& nv = adjacency_[v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++edge_count_;
  return true;
}

bool Graph::remove_edge(NodeId u, NodeId v) {
  check_node(u);
  check_node(v);
  auto& nu = adjacency_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it == nu.end() || *it != v) return false;
  nu.erase(it);
  auto& nv = adjacency_[v];
  nv.erase(std::lower_bound(nv.begin(), nv.end(), u));
  --edge_count_;
  return true;
}

std::span<const NodeId> Graph::neighbors(NodeId v) const {
  check_node(v);
  return adjacency_[v];
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (!contains(u) || !contains(v)) return false;
  if (adjacency_[u].size() > adjacency_[v].size()) std::swap(u, v);
  return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

std::size_t Graph::support(NodeId u, NodeId v) const {
  if (!has_edge(u, v)) {
    throw DomainError("support of absent edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  return intersection_size(adjacency_[u], adjacency_[v]);
}

std::vector<NodeId> Graph::nodes() const {
  std::vector<NodeId> out;
  out.reserve(live_count_);
  for (NodeId v = 0; v < alive_.size(); ++v) {
    if (alive_[v]) out.push_back(v);
  }
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

void Graph::merge_into(NodeId v1, NodeId v2) {
  check_node(v1);
  check_node(v2);
  if (v1 == v2) throw DomainError("cannot merge a node with itself");
  std::vector<NodeId> moved = std::move(adjacency_[v2]);
  adjacency_[v2].clear();
  edge_count_ -= moved.size();
  for (NodeId u : moved) {
    auto& nu = adjacency_[u];
    nu.erase(std::lower_bound(nu.begin(), nu.end(), v2));
  }
  for (NodeId u : moved) {
    if (u != v1) add_edge(v1, u);
  }
  alive_[v2] = false;
  --live_count_;
}

Graph Graph::merged(NodeId v1, NodeId v2) const {
  Graph copy = *this;
  copy.merge_into(v1, v2);
  return copy;
}

const std::string& Graph::label(NodeId v) const {
  if (v >= labels_.size()) throw DomainError("unknown node id " + std::to_string(v));
  return labels_[v];
}

NodeId Graph::id_of(std::string_view label) const {
  auto it = label_index_.find(std::string(label));
  if (it == label_index_.end() || !alive_[it->second]) {
    throw DomainError("unknown node label '" + std::string(label) + "'");
  }
  return it->second;
}

bool Graph::has_label(std::string_view label) const {
  auto it = label_index_.find(std::string(label));
  return it != label_index_.end() && alive_[it->second];
}

bool Graph::is_consistent() const {
  std::size_t degree_sum = 0;
  std::size_t live = 0;
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    const auto& nu = adjacency_[u];
    if (!alive_[u]) {
      if (!nu.empty()) return false;
      continue;
    }
    ++live;
    degree_sum += nu.size();
    if (!std::is_sorted(nu.begin(), nu.end())) return false;
    if (std::adjacent_find(nu.begin(), nu.end()) != nu.end()) return false;
    for (NodeId v : nu) {
      if (v == u || v >= adjacency_.size() || !alive_[v]) return false;
      if (!std::binary_search(adjacency_[v].begin(), adjacency_[v].end(), u)) return false;
    }
  }
  return live == live_count_ && degree_sum == 2 * edge_count_;
}

void Graph::check_node(NodeId v) const {
  if (!contains(v)) throw DomainError("node " + std::to_string(v) + " is not in the graph");
}

MergeAllResult merge_all(const Graph& g, std::span<const NodePair> pairs) {
  MergeAllResult result{g, {}};
  std::vector<NodeId> parent(g.id_bound());
  std::iota(parent.begin(), parent.end(), NodeId{0});
  auto find = [&parent](NodeId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [a, b] = pairs[i];
    if (!g.contains(a) || !g.contains(b)) {
      throw DomainError("merge pair references unknown node");
    }
    NodeId ra = find(a);
    NodeId rb = find(b);
    if (ra == rb) {
      result.skipped.push_back(i);
      continue;
    }
    result.graph.merge_into(ra, rb);
    parent[rb] = ra;
  }
  return result;
}

std::size_t intersection_size(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

std::vector<NodeId> set_intersection(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<NodeId> set_union(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::vector<NodeId> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<NodeId> set_difference(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::vector<NodeId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool sorted_contains(std::span<const NodeId> a, NodeId x) {
  return std::binary_search(a.begin(), a.end(), x);
}

}  // namespace trussmerge
