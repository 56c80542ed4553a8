#include "trussmerge/pruning.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "trussmerge/error.hpp"

namespace trussmerge {

NodePartition partition_nodes(const Graph& g, const TrussDecomposition& d, int k) {
  require_k(k);
  NodePartition p;
  p.k = k;
  p.inside_mask.assign(g.id_bound(), 0);
  p.inside_neighbors.assign(g.id_bound(), {});
  for (NodeId v : g.nodes()) {
    if (d.node_trussness(v) >= k - 1) {
      p.inside_mask[v] = 1;
      p.inside.push_back(v);
    } else {
      p.outside.push_back(v);
    }
  }
  for (NodeId v : g.nodes()) {
    auto& out = p.inside_neighbors[v];
    for (NodeId u : g.neighbors(v)) {
      if (p.inside_mask[u]) out.push_back(u);
    }
  }
  return p;
}

void GrowableBits::set(std::size_t i) {
  std::size_t w = i / 64;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] |= std::uint64_t{1} << (i % 64);
}

bool GrowableBits::test(std::size_t i) const noexcept {
  std::size_t w = i / 64;
  return w < words_.size() && ((words_[w] >> (i % 64)) & 1U);
}

void GrowableBits::intersect(const GrowableBits& other) {
  if (words_.size() > other.words_.size()) words_.resize(other.words_.size());
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
}

std::size_t GrowableBits::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<NodeId> prune_outside_maximal(std::span<const NodeId> outside,
                                          std::span<const std::vector<NodeId>> inside_nbrs) {
  std::vector<NodeId> sorted(outside.begin(), outside.end());
  std::sort(sorted.begin(), sorted.end());

  // Unique neighborhoods, lowest id first.
  std::map<std::vector<NodeId>, NodeId> seen;
  std::vector<NodeId> retained;
  for (NodeId v : sorted) {
    if (v >= inside_nbrs.size()) throw DomainError("missing inside neighbors for node " + std::to_string(v));
    const auto& nbrs = inside_nbrs[v];
    if (nbrs.empty()) continue;
    if (seen.emplace(nbrs, v).second) retained.push_back(v);
  }
  if (retained.empty()) return {};

  std::size_t bound = 0;
  for (NodeId v : retained) bound = std::max<std::size_t>(bound, inside_nbrs[v].back() + 1);
  std::vector<GrowableBits> membership(bound);
  for (std::size_t i = 0; i < retained.size(); ++i) {
    for (NodeId u : inside_nbrs[retained[i]]) membership[u].set(i);
  }

  std::vector<NodeId> maximal;
  for (std::size_t i = 0; i < retained.size(); ++i) {
    const auto& nbrs = inside_nbrs[retained[i]];
    GrowableBits r = membership[nbrs.front()];
    for (std::size_t j = 1; j < nbrs.size() && r.count() > 1; ++j) r.intersect(membership[nbrs[j]]);
    if (r.count() == 1) maximal.push_back(retained[i]);
  }
  return maximal;
}

}  // namespace trussmerge
