#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trussmerge/graph.hpp"

namespace trussmerge {

/// Per-edge trussness of a graph snapshot.
class TrussDecomposition {
 public:
  TrussDecomposition() = default;
  TrussDecomposition(std::vector<Edge> edges, std::vector<int> trussness, std::size_t id_bound);

  /// Edges in canonical ascending order; parallel to edge_trussness().
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const int> edge_trussness() const noexcept { return trussness_; }

  /// Trussness of (u, v); throws DomainError if the edge is absent.
  int trussness(NodeId u, NodeId v) const;
  /// Same, but returns 0 for absent edges.
  int trussness_or_zero(NodeId u, NodeId v) const noexcept;

  /// Largest k with a non-empty k-truss; 0 for an edgeless graph.
  int kmax() const noexcept { return kmax_; }

  std::vector<Edge> k_truss_edges(int k) const;
  std::size_t truss_size(int k) const;
  std::size_t truss_node_count(int k) const;
  /// Edges whose trussness is exactly k-1.
  std::vector<Edge> shell_edges(int k) const;

  /// Max trussness over incident edges, indexed by NodeId. Nodes without
  /// edges (or retired by a merge) get 0.
  std::span<const int> node_trussness() const noexcept { return node_trussness_; }
  int node_trussness(NodeId v) const noexcept {
    return v < node_trussness_.size() ? node_trussness_[v] : 0;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<int> trussness_;
  std::vector<std::size_t> first_edge_;  // CSR over the canonical edge list by u
  std::vector<int> node_trussness_;
  int kmax_ = 0;
};

/// Exact truss decomposition by support peeling with a bucket queue.
TrussDecomposition truss_decompose(const Graph& g);

/// Number of edges of the k-truss, computed by peeling only at level k.
std::size_t k_truss_size(const Graph& g, int k);

struct CoreDecomposition {
  /// Indexed by NodeId; retired ids get 0.
  std::vector<int> coreness;

  int max_core() const noexcept;
  std::vector<NodeId> k_core_nodes(int k) const;
};

/// Degree-peeling coreness (Batagelj-Zaversnik).
CoreDecomposition core_decompose(const Graph& g);

/// Size of T_k after merging v2 into v1, computed on the restricted graph made
/// of the current (k-1)-truss without v1/v2 edges plus (v1, x) for every inside
/// neighbor x of either node. Equal to a full recomputation.
///
/// Holds precomputed per-snapshot state so that many candidate pairs can be
/// evaluated; size_after() is safe to call concurrently.
class PostMergerEvaluator {
 public:
  PostMergerEvaluator(const Graph& g, const TrussDecomposition& d, int k);

  std::size_t size_after(NodeId v1, NodeId v2) const;
  std::size_t current_size() const noexcept { return current_size_; }
  int k() const noexcept { return k_; }

 private:
  const Graph* graph_;
  int k_;
  std::size_t current_size_ = 0;
  std::vector<std::uint32_t> local_id_;  // NodeId -> local id, or kNotInside
  std::vector<NodeId> inside_nodes_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> base_edges_;  // local ids, T_{k-1}
};

std::size_t post_merger_truss_size(const Graph& g, const TrussDecomposition& d, int k, NodeId v1,
                                   NodeId v2);

}  // namespace trussmerge
