#pragma once

// Compact adjacency with edge ids, shared by the peeling routines.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace trussmerge::detail {

using LocalEdge = std::pair<std::uint32_t, std::uint32_t>;

struct Csr {
  static constexpr std::uint32_t kNone = UINT32_MAX;

  std::vector<std::uint32_t> offset;  // n + 1
  std::vector<std::uint32_t> nbr;
  std::vector<std::uint32_t> eid;
  std::vector<LocalEdge> edges;

  std::size_t node_count() const { return offset.empty() ? 0 : offset.size() - 1; }
  std::size_t edge_count() const { return edges.size(); }
  std::uint32_t degree(std::uint32_t u) const { return offset[u + 1] - offset[u]; }

  /// Edge id of (u, w) or kNone.
  std::uint32_t find(std::uint32_t u, std::uint32_t w) const;
};

/// `edges` must be free of loops and duplicates.
Csr build_csr(std::size_t n, std::vector<LocalEdge> edges);

std::vector<std::uint32_t> edge_supports(const Csr& g);

/// Trussness per edge id.
std::vector<int> peel_trussness(const Csr& g);

/// Number of edges surviving in the k-truss.
std::size_t peel_k_truss(const Csr& g, int k);

}  // namespace trussmerge::detail
