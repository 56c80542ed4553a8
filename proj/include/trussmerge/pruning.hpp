#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "trussmerge/decomposition.hpp"
#include "trussmerge/graph.hpp"

namespace trussmerge {

/// Inside nodes are those of the current (k-1)-truss; everything else live is
/// outside. Inside neighbors of v are N(v) restricted to inside nodes.
struct NodePartition {
  int k = 3;
  std::vector<char> inside_mask;                     // by NodeId
  std::vector<NodeId> inside;                        // ascending
  std::vector<NodeId> outside;                       // ascending, live only
  std::vector<std::vector<NodeId>> inside_neighbors;  // by NodeId, sorted

  bool is_inside(NodeId v) const noexcept { return v < inside_mask.size() && inside_mask[v]; }
  std::span<const NodeId> inside_nbrs(NodeId v) const { return inside_neighbors.at(v); }
};

NodePartition partition_nodes(const Graph& g, const TrussDecomposition& d, int k);

/// Bit vector that grows on demand; bits past the end read as zero.
class GrowableBits {
 public:
  void set(std::size_t i);
  bool test(std::size_t i) const noexcept;
  /// In-place intersection; the result is truncated to the shorter operand.
  void intersect(const GrowableBits& other);
  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }

 private:
  std::vector<std::uint64_t> words_;
};

/// Keeps one outside node per distinct maximal inside neighborhood.
///
/// Duplicate neighborhoods keep the lowest id. Membership sets m(u) record
/// which retained candidates contain inside node u; a candidate v is maximal
/// iff the intersection of m(u) over u in its neighborhood is exactly {v}.
/// Nodes with an empty neighborhood are dropped up front: merging them adds
/// no edge inside the (k-1)-truss.
///
/// `inside_nbrs` is indexed by NodeId. Output is ascending.
std::vector<NodeId> prune_outside_maximal(std::span<const NodeId> outside,
                                          std::span<const std::vector<NodeId>> inside_nbrs);

}  // namespace trussmerge
