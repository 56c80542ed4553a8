#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace trussmerge {

using NodeId = std::uint32_t;

/// Undirected edge in canonical order (u < v).
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using NodePair = std::pair<NodeId, NodeId>;

/// Simple undirected graph over dense node ids.
///
/// Node ids stay stable for the lifetime of the graph: merging v2 into v1
/// retires v2 (it is no longer contained in the graph) but never renumbers
/// anything else. Neighbor lists are kept sorted so that intersections are
/// linear merges.
class Graph {
 public:
  Graph() = default;
  /// Graph with `n` live nodes labelled "0".."n-1" and no edges.
  explicit Graph(std::size_t n);

  /// Parses whitespace-separated edge lists; `#` lines are comments.
  /// Duplicate edges and self-loops are dropped.
  static Graph from_edge_list(std::istream& in);
  static Graph from_edge_list_text(std::string_view text);
  static Graph from_edge_list_file(const std::string& path);
  /// Builds a graph from integer pairs; ids must be < n.
  static Graph from_edges(std::size_t n, std::span<const NodePair> edges);

  /// Writes one canonical `u v` integer pair per line, sorted.
  void write_edge_list(std::ostream& out) const;
  /// Same as write_edge_list but with external labels.
  void write_labelled_edge_list(std::ostream& out) const;

  /// Adds node with the given label, returns its id. Labels must be unique.
  NodeId add_node(std::string label);
  /// Inserts (u, v); returns false for self-loops and existing edges.
  bool add_edge(NodeId u, NodeId v);
  bool remove_edge(NodeId u, NodeId v);

  std::size_t id_bound() const noexcept { return adjacency_.size(); }
  std::size_t node_count() const noexcept { return live_count_; }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool contains(NodeId v) const noexcept { return v < alive_.size() && alive_[v]; }

  std::span<const NodeId> neighbors(NodeId v) const;
  std::size_t degree(NodeId v) const { return neighbors(v).size(); }
  bool has_edge(NodeId u, NodeId v) const;
  /// Number of triangles through (u, v); the edge must exist.
  std::size_t support(NodeId u, NodeId v) const;

  /// Live node ids in ascending order.
  std::vector<NodeId> nodes() const;
  /// All edges in canonical ascending order.
  std::vector<Edge> edges() const;

  /// Vertex identification: v2 disappears, its neighbors (other than v1)
  /// become neighbors of v1, no parallel edges or self-loops are created.
  void merge_into(NodeId v1, NodeId v2);
  Graph merged(NodeId v1, NodeId v2) const;

  const std::string& label(NodeId v) const;
  /// Returns the id for `label` or throws DomainError.
  NodeId id_of(std::string_view label) const;
  bool has_label(std::string_view label) const;

  /// Full consistency scan: symmetry, sortedness, no loops, edge count.
  bool is_consistent() const;

 private:
  void check_node(NodeId v) const;

  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<bool> alive_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> label_index_;
  std::size_t live_count_ = 0;
  std::size_t edge_count_ = 0;
};

/// Result of applying a batch of merges with representative redirection.
struct MergeAllResult {
  Graph graph;
  /// Indices into the input batch of pairs whose endpoints had already
  /// collapsed into one node.
  std::vector<std::size_t> skipped;
};

/// Applies the pairs in order; each endpoint is first resolved to the node it
/// has been merged into, then the second representative is merged into the
/// first.
MergeAllResult merge_all(const Graph& g, std::span<const NodePair> pairs);

/// Sorted intersection size of two sorted ranges.
std::size_t intersection_size(std::span<const NodeId> a, std::span<const NodeId> b);
std::vector<NodeId> set_intersection(std::span<const NodeId> a, std::span<const NodeId> b);
std::vector<NodeId> set_union(std::span<const NodeId> a, std::span<const NodeId> b);
std::vector<NodeId> set_difference(std::span<const NodeId> a, std::span<const NodeId> b);
bool sorted_contains(std::span<const NodeId> a, NodeId x);

}  // namespace trussmerge
